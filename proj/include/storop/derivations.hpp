#ifndef STOROP_DERIVATIONS_HPP
#define STOROP_DERIVATIONS_HPP

#include <string>
#include <vector>

#include "storop/typing.hpp"

// Hand-built typing derivations for the integer operators. Every builder takes
// the context it is used in and picks binder and generalization names that
// stay clear of it, so the pieces compose.
namespace storop::bundled {

/// ctx ⊢ λxλf x : N[0]
Derivation zero(const Context& ctx = {});
/// ctx ⊢ s̄ : ∀y(N[y] → N[s(y)])
Derivation succ(const Context& ctx = {});
/// ctx ⊢ n̄ : N[sⁿ(0)]
Derivation numeral(unsigned n, const Context& ctx = {});
/// ⊢ λxλf x : N, propositional
Derivation zero_prop();
/// ⊢ θ₀ : N*[0]
Derivation theta0();
/// ctx ⊢ T₁ : ∀x(N*[x] → ¬¬N[x]), or N⊥[x] in place of N*[x] when bot is set.
Derivation t1(bool bot, const Context& ctx = {});
/// Best attempt at ⊢ T₂ : ∀x(N*[x] → ¬¬N[x]) (resp. N⊥[x]). It does not
/// check: the step F needs s̄ : X(s(y)) → X(y), asserted by an empty eq node.
Derivation t2(bool bot);
/// ⊢ T : ∀x(N⊥[x] → ¬¬N[x]), or T′ when primed is set.
Derivation storage_t(bool primed);

struct Entry {
  std::string name;
  std::string statement;
  Derivation derivation;
  bool expected_ok;
};

/// Everything above, in a fixed order. Names double as golden file stems.
std::vector<Entry> library();

}  // namespace storop::bundled

#endif  // STOROP_DERIVATIONS_HPP
