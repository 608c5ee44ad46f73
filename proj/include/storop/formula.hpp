#ifndef STOROP_FORMULA_HPP
#define STOROP_FORMULA_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace storop {

class FormulaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// First-order terms

struct FoTerm {
  enum class Kind { Var, Fn };
  Kind kind = Kind::Var;
  std::string name;
  std::vector<FoTerm> args;

  static FoTerm var(std::string name) { return {Kind::Var, std::move(name), {}}; }
  static FoTerm fn(std::string name, std::vector<FoTerm> args = {}) { return {Kind::Fn, std::move(name), std::move(args)}; }
  static FoTerm zero() { return fn("0"); }
  static FoTerm succ(FoTerm t) { return fn("s", {std::move(t)}); }
  /// s^n(t)
  static FoTerm succ_n(unsigned n, FoTerm t = zero());

  bool is_var() const { return kind == Kind::Var; }
  friend bool operator==(const FoTerm&, const FoTerm&) = default;
};

using FoBindings = std::map<std::string, FoTerm>;

std::string print_fo(const FoTerm& t);
std::set<std::string> fo_vars(const FoTerm& t);
FoTerm subst_fo_term(const FoTerm& t, const FoBindings& sigma);

// ---------------------------------------------------------------------------
// Formulas

/// Second-order variables come in two disjoint namespaces: ordinary predicate
/// variables and ⊥-variables.
enum class SoKind { Pred, Bot };

struct SoVar {
  std::string name;
  SoKind kind = SoKind::Pred;
  friend auto operator<=>(const SoVar&, const SoVar&) = default;
};

class Formula {
 public:
  enum class Kind { Bot, PredVar, BotVar, PredSym, Arrow, ForallFo, ForallPred, ForallBot };

  static Formula bot();
  static Formula pred_var(std::string name, std::vector<FoTerm> args = {});
  static Formula bot_var(std::string name, std::vector<FoTerm> args = {});
  static Formula pred_sym(std::string name, std::vector<FoTerm> args = {});
  static Formula so_atom(const SoVar& v, std::vector<FoTerm> args);
  static Formula arrow(Formula a, Formula b);
  /// a1, ..., an -> c
  static Formula arrows(const std::vector<Formula>& hyps, Formula concl);
  static Formula neg(Formula a) { return arrow(std::move(a), bot()); }
  static Formula forall_fo(std::string x, Formula body);
  static Formula forall_pred(std::string x, Formula body);
  static Formula forall_bot(std::string x, Formula body);
  static Formula forall_so(const SoVar& v, Formula body);

  Kind kind() const;
  bool is_atom() const;  // PredVar, BotVar or PredSym application
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_forall() const;
  bool is_bot() const { return kind() == Kind::Bot; }

  const std::string& name() const;  // atom head or bound variable
  const std::vector<FoTerm>& args() const;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const;
  /// Bound or applied second-order variable of a ForallPred/ForallBot or
  /// PredVar/BotVar node.
  SoVar so_var() const;

 private:
  struct Node;
  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<FoTerm> args;
  Formula a;
  Formula b;
};

/// The witness G of A[G/X]: λparams.body.
struct PredAbstraction {
  std::vector<std::string> params;
  Formula body;
};

bool alpha_equal(const Formula& a, const Formula& b);

std::set<std::string> free_fo_vars(const Formula& f);
std::set<SoVar> free_so_vars(const Formula& f);
bool has_bot_vars(const Formula& f);
/// Arity of the free second-order variable v at its occurrences in f.
std::optional<std::size_t> so_arity(const Formula& f, const SoVar& v);

Formula subst_fo(const Formula& f, const FoBindings& sigma);
Formula subst_fo(const Formula& f, const std::string& x, const FoTerm& u);
Formula subst_pred(const Formula& f, const SoVar& x, const PredAbstraction& g);

// ---------------------------------------------------------------------------
// Parsing and printing

/// Arities seen so far. Function and predicate symbols keep their arity for
/// the lifetime of the signature; free predicate variables declared here are
/// checked too.
struct Signature {
  std::map<std::string, std::size_t> functions;
  std::map<std::string, std::size_t> predicates;
  std::map<SoVar, std::size_t> variables;
  std::set<std::string> constants;
};

Formula parse_formula(std::string_view text);
Formula parse_formula(std::string_view text, Signature& sig);
FoTerm parse_fo_term(std::string_view text);

struct FormulaStyle {
  bool unicode = false;
  /// Print N[t], N*[t], N⊥[t] and the propositional N for matching subformulas.
  bool fold_macros = false;
};

std::string print_formula(const Formula& f, const FormulaStyle& style = {});

// ---------------------------------------------------------------------------
// Integer types

/// N[t] = ∀X{X(0), ∀y(X(y) → X(sy)) → X(t)}
Formula nat(const FoTerm& t);
/// N = ∀X{X, (X → X) → X}
Formula nat_prop();
Formula nat_star(const FoTerm& t);
Formula nat_bot(const FoTerm& t);
Formula nat_bot_prop();

// ---------------------------------------------------------------------------
// Classifications and translations

bool is_bot_type(const Formula& f);

/// Gödel translation: every predicate atom A becomes ¬A. ⊥ is left fixed.
/// Throws FormulaError if f contains ⊥-variables.
Formula godel_star(const Formula& f);

/// X(t̄) ↦ X⊥(t̄), ∀X ↦ ∀X⊥; ⊥ and predicate symbols fixed.
Formula bot_transform(const Formula& f);

/// The ◇ projection: drops first-order arguments and quantifiers.
Formula forget_first_order(const Formula& f);

enum class Polarity { Positive, Negative, Both, Neither };
const char* to_string(Polarity p);
Polarity polarity(const Formula& f);

// ---------------------------------------------------------------------------
// ⊴ chains, equations and decompositions

using Witness = std::variant<FoTerm, PredAbstraction>;

/// One ⊴ step: strips the outer quantifier of f and instantiates it.
Formula instantiate(const Formula& f, const Witness& w);
Formula instantiate_chain(const Formula& f, const std::vector<Witness>& witnesses);

struct Equation {
  FoTerm lhs;
  FoTerm rhs;
};

class EquationSet {
 public:
  void add(std::string name, Equation eq);
  const Equation* find(const std::string& name) const;
  const std::vector<std::pair<std::string, Equation>>& entries() const { return eqs_; }
  bool empty() const { return eqs_.empty(); }

 private:
  std::vector<std::pair<std::string, Equation>> eqs_;
};

/// One equation per line: "name: lhs = rhs". '#' starts a comment.
EquationSet parse_equations(std::string_view text);

/// Path from the root of a formula to a first-order subterm: Arrow children
/// are 0/1, quantifier bodies 0, atom arguments and function arguments by
/// index.
using Position = std::vector<std::size_t>;

enum class Direction { LeftToRight, RightToLeft };

struct EqStep {
  std::string equation;
  FoBindings instance;
  Position position;
  Direction direction = Direction::LeftToRight;
};

/// Rewrites the first-order subterm at position with one instance of eq.
Formula eq_step(const Formula& f, const Equation& eq, const FoBindings& instance, const Position& position,
                Direction direction);
Formula eq_step(const Formula& f, const EquationSet& eqs, const EqStep& step);
Formula eq_chain(const Formula& f, const EquationSet& eqs, const std::vector<EqStep>& steps);

/// Checks F ⊴ E1 → F1, Fi ⊴ Ei+1 → Fi+1, Fr ⊴ ⊥ using one witness chain per
/// step (arity + 1 chains) and returns E1..Er.
std::vector<Formula> decompose_applied(const Formula& f, std::size_t arity,
                                       const std::vector<std::vector<Witness>>& chains);

struct AdequacyReport {
  bool refuted = false;
  std::string witness;  // the offending equality when refuted
  std::size_t universe = 0;
};

/// Bounded check of the two adequacy conditions on ground terms up to the
/// given depth. A clean report means "not refuted", never "adequate".
AdequacyReport lint_adequacy(const EquationSet& eqs, unsigned depth = 3);

}  // namespace storop

#endif  // STOROP_FORMULA_HPP
