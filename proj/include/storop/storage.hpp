#ifndef STOROP_STORAGE_HPP
#define STOROP_STORAGE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "storop/reduce.hpp"
#include "storop/term.hpp"

namespace storop {

/// Names of the two fixed free variables of a machine run, U₁ = (T)ν f.
inline constexpr const char* kNu = "nu";
inline constexpr const char* kF = "f";

/// One indexed variable x_{l,a,b,c̄}. Symbols are never shared between
/// creation events, even when (l, a, b, c̄) coincide.
struct IndexedVar {
  std::string symbol;
  unsigned level = 0;
  Term a;
  Term b;
  std::vector<Term> args;
  bool used = false;  // has already been the head of some V
};

class IndexedVarRegistry {
 public:
  /// Registers a fresh symbol "x_<level>_<gen>" that occurs in none of a, b,
  /// args and is distinct from every symbol created so far.
  const IndexedVar& create(unsigned level, const Term& a, const Term& b, const std::vector<Term>& args);
  IndexedVar* find(const std::string& symbol);
  const IndexedVar* find(const std::string& symbol) const;
  const std::vector<IndexedVar>& entries() const { return entries_; }
  std::set<std::string> symbols() const;

 private:
  std::vector<IndexedVar> entries_;
  unsigned generation_ = 0;
};

enum class MachineRule { NuHead, IndexedHead, FHeadTerminal };
const char* to_string(MachineRule r);

struct MachineStep {
  Term u;
  Term v;  // head normal form of u
  MachineRule rule;
  std::uint64_t h = 0;
};

enum class FailureReason { BadHeadShape, ReusedIndexedVariable, FuelExhausted, TauNotNumeral, TauWrongValue };
const char* to_string(FailureReason r);

struct Failure {
  FailureReason reason;
  std::string detail;
};

/// Integer certification demands m = n; Lenient only demands that τ
/// normalizes to some numeral.
enum class CertifyMode { Exact, Lenient };

/// A machine run. On failure the steps and registry up to the failure are
/// kept; tau and m are set only once the run reached (f)τ.
struct Certificate {
  Term op;
  unsigned n = 0;
  std::vector<MachineStep> steps;
  std::optional<Term> tau;
  std::optional<unsigned> m;
  IndexedVarRegistry registry;
  std::uint64_t total_h = 0;
  std::vector<std::string> flags;  // anomalies that do not fail the run
  std::optional<Failure> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Runs the symbolic machine for one n. Each machine step is charged
/// max(1, h) against fuel; the final normalization of τ uses what remains.
/// Throws std::invalid_argument when op is not closed or fuel is 0.
Certificate certify(const Term& op, unsigned n, std::uint64_t fuel = kDefaultFuel,
                    CertifyMode mode = CertifyMode::Exact);

struct RangeSummary {
  std::vector<Certificate> runs;  // index n
  std::optional<unsigned> first_failure;
  bool ok() const { return !first_failure.has_value(); }
};

/// certify for n = 0..n_max, each with its own fuel budget.
RangeSummary certify_range(const Term& op, unsigned n_max, std::uint64_t fuel = kDefaultFuel,
                           CertifyMode mode = CertifyMode::Exact);

/// Closed terms β-equal to church(n): church(n) first, then (s̄)ⁿ0̄ when it
/// differs, then a fixed-seed shuffle of further β-expansions. Every member
/// is re-checked with beta_equiv; at most variant_count terms are returned.
std::vector<Term> theta_corpus(unsigned n, unsigned variant_count);

struct BehavioralEntry {
  Term theta;
  Tri theta_is_numeral = Tri::Unknown;  // beta_equiv(theta, church(n))
  std::optional<Term> hnf;              // of (T)θ f, when reached
  std::optional<Bindings> sigma;
  bool ok = false;
  std::string detail;
};

struct BehavioralReport {
  std::vector<BehavioralEntry> entries;
  bool ok() const;
};

/// For each θ: (T)θ f must head-reduce to (f)t with t = σ(τ), holes being the
/// registry symbols, and σ(τ) must normalize to church(cert.n). A θ that is
/// not β-equal to church(n) is still run and recorded, but marked not ok.
BehavioralReport behavioral_check(const Term& op, const Certificate& cert, const std::vector<Term>& thetas,
                                  std::uint64_t fuel = kDefaultFuel);

struct PairSample {
  Term t;
  std::vector<Term> variants;
};

struct PairEntry {
  Term t;
  std::optional<Term> pattern;      // anti-unified τ over the variants' outputs
  std::vector<std::string> holes;
  std::optional<Term> tau;          // normal form of the pattern, when closed
  Tri tau_matches_t = Tri::Unknown;
  std::vector<std::optional<Bindings>> sigmas;  // per variant
  bool ok = false;
  std::string detail;
};

struct PairReport {
  std::vector<PairEntry> entries;
  bool ok() const;
};

/// Runs (T)v f for every variant v of every sample and anti-unifies the
/// arguments of f. Throws std::invalid_argument when a sample has no variants
/// or a variant is not β-equal to its t.
PairReport pair_behavioral(const Term& op, const std::vector<PairSample>& samples,
                           std::uint64_t fuel = kDefaultFuel);

/// Anti-unification of α-normalized terms. Disagreements become hole
/// variables h0, h1, ... (one per distinct tuple of disagreeing subterms);
/// a disagreement that mentions a locally bound variable is widened to the
/// smallest enclosing subterm that does not.
struct Generalization {
  Term pattern;
  std::vector<std::string> holes;
};
Generalization anti_unify(const std::vector<Term>& terms);

/// Stable text form, one record per machine step, registry appended.
std::string serialize_certificate(const Certificate& c);

}  // namespace storop

#endif  // STOROP_STORAGE_HPP
