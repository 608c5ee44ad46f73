// Random generators shared by the property-style tests.
#ifndef STOROP_TESTS_TERM_GEN_HPP
#define STOROP_TESTS_TERM_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "storop/term.hpp"

namespace testgen {

inline std::size_t pick(std::mt19937& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline storop::Term random_term_rec(std::mt19937& rng, int depth, std::vector<std::string>& scope) {
  static const char* kBinders[] = {"x", "y", "z", "a", "w"};
  int choice = depth <= 0 ? 0 : static_cast<int>(pick(rng, 10));
  if (choice < 3) return storop::Term::var(scope[pick(rng, scope.size())]);
  if (choice < 6) {
    std::string b = kBinders[pick(rng, 5)];
    scope.push_back(b);
    auto body = random_term_rec(rng, depth - 1, scope);
    scope.pop_back();
    return storop::Term::abs(b, body);
  }
  auto f = random_term_rec(rng, depth - 1, scope);
  auto a = random_term_rec(rng, depth - 1, scope);
  return storop::Term::app(f, a);
}

/// Term of depth at most `depth` over the given free variables.
inline storop::Term random_term(std::mt19937& rng, int depth, std::vector<std::string> free) {
  return random_term_rec(rng, depth, free);
}

}  // namespace testgen

#endif
