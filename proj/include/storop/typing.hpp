#ifndef STOROP_TYPING_HPP
#define STOROP_TYPING_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storop/formula.hpp"
#include "storop/term.hpp"

namespace storop {

struct ContextEntry {
  std::string name;
  Formula type;
};

/// Ordered, lookup by name; duplicate names are rejected by the checker.
using Context = std::vector<ContextEntry>;

const Formula* lookup(const Context& ctx, const std::string& name);

enum class Rule { Ax, Abs, App, GenFo, InstFo, GenPred, InstPred, GenBot, InstBot, Eq };

const char* to_string(Rule r);
std::optional<Rule> rule_from_string(std::string_view s);

/// One node of an explicit typing derivation. The conclusion is ctx ⊢ term : type.
/// inst-fo carries a first-order witness, inst-pred / inst-bot a PredAbstraction,
/// eq a chain of rewrite steps.
struct Derivation {
  Context ctx;
  Term term;
  Formula type;
  Rule rule;
  std::optional<Witness> witness;
  std::vector<EqStep> chain;
  std::vector<Derivation> premises;
};

using NodePath = std::vector<std::size_t>;

struct CheckReport {
  bool ok = true;
  NodePath path;  // premise indices from the root to the offending node
  std::string reason;
};

std::string format_path(const NodePath& p);

CheckReport check_derivation(const Derivation& d, const EquationSet& eqs = {});

/// check_derivation plus the propositional restriction: no first-order
/// variables, function symbols or arguments, no rules gen-fo/inst-fo/eq.
CheckReport check_fperp(const Derivation& d);

/// The ◇ projection of every node. gen-fo, inst-fo and eq nodes collapse into
/// their premise.
Derivation forget_derivation(const Derivation& d);

/// Turns a derivation of ⊢ T : ∀x(N*[x] → ¬¬N[x]) into one of
/// ⊢ T : ∀x(N⊥[x] → ¬¬N[x]). Throws std::invalid_argument when T is not a
/// closed head normal form λν.T′ or the derivation does not end with gen-fo
/// over abs. T₁ itself has the redex (s̄)z under its binders, so full
/// β-normality is not required.
Derivation lift_star_to_bot(const Derivation& d);

/// Node at the given path; throws std::out_of_range.
const Derivation& node_at(const Derivation& d, const NodePath& p);
Derivation& node_at(Derivation& d, const NodePath& p);
/// Every node path in pre-order.
std::vector<NodePath> all_paths(const Derivation& d);

// ---------------------------------------------------------------------------
// Derivation files

std::string print_derivation(const Derivation& d);
/// Throws ParseError on malformed input.
Derivation parse_derivation(std::string_view text);

// ---------------------------------------------------------------------------
// Forward construction: each helper computes its conclusion from the premises.

namespace build {

Derivation ax(const Context& ctx, const std::string& name);
/// Discharges the last context entry of the premise.
Derivation abs(Derivation premise);
Derivation app(Derivation fn, Derivation arg);
Derivation gen_fo(Derivation premise, const std::string& x);
Derivation inst_fo(Derivation premise, const FoTerm& u);
/// gen-pred or gen-bot, by the kind of v.
Derivation gen_so(Derivation premise, const SoVar& v);
/// inst-pred or inst-bot, by the outer quantifier of the premise.
Derivation inst_so(Derivation premise, const PredAbstraction& g);
Derivation eq(Derivation premise, const EquationSet& eqs, std::vector<EqStep> chain);

}  // namespace build

}  // namespace storop

#endif  // STOROP_TYPING_HPP
