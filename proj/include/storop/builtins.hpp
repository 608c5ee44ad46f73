#ifndef STOROP_BUILTINS_HPP
#define STOROP_BUILTINS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storop/term.hpp"

namespace storop {

struct Builtin {
  std::string name;
  Term term;
};

/// Resolves a builtin reference without the leading '@': "T1", "church:4",
/// "T:2", ... Returns nullopt for unknown names.
std::optional<Term> lookup_builtin(std::string_view name);

/// Like lookup_builtin but throws std::invalid_argument on unknown names.
Term builtin_term(std::string_view name);

/// Named builtins other than the numeral family (zero, succ, delta, G, F, T1,
/// T2, T, Tp, T:1, T:2, Tp:1, Tp:2, omega, theta0).
const std::vector<Builtin>& builtin_library();

}  // namespace storop

#endif  // STOROP_BUILTINS_HPP
