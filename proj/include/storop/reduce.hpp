#ifndef STOROP_REDUCE_HPP
#define STOROP_REDUCE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>

#include "storop/term.hpp"

namespace storop {

inline constexpr std::uint64_t kDefaultFuel = 100000;

enum class ReductionStatus { NormalForm, HeadNormalForm, FuelExhausted };

struct ReductionOutcome {
  Term result;
  std::uint64_t steps = 0;
  ReductionStatus status = ReductionStatus::NormalForm;
};

const char* to_string(ReductionStatus s);

/// Contracts the head redex of λx̄.(λy.u)v v̄; nullopt when t is in head
/// normal form.
std::optional<Term> head_step(const Term& t);

bool is_head_normal(const Term& t);

/// Called with every intermediate term (including the start) when tracing.
using TraceFn = std::function<void(const Term&)>;

/// Head reduction until head normal form or fuel steps have been taken.
/// steps is exactly h(t, result).
ReductionOutcome head_reduce(const Term& t, std::uint64_t fuel = kDefaultFuel, const TraceFn& trace = {});

/// Leftmost-outermost reduction to β-normal form.
ReductionOutcome normalize(const Term& t, std::uint64_t fuel = kDefaultFuel, const TraceFn& trace = {});

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

/// Compares β-normal forms when both terms normalize within fuel.
Tri beta_equiv(const Term& a, const Term& b, std::uint64_t fuel = kDefaultFuel);

enum class Solvability { Solvable, Unknown };

Solvability is_solvable(const Term& t, std::uint64_t fuel = kDefaultFuel);

/// Finds σ over the hole variables with σ(pattern) α-equal to t. Holes that
/// are shadowed by a binder of the pattern are ordinary variables there.
std::optional<Bindings> match_holes(const Term& pattern, const std::set<std::string>& holes, const Term& t);

}  // namespace storop

#endif  // STOROP_REDUCE_HPP
