#include "storop/numerals.hpp"

namespace storop {

Term church(unsigned n) {
  Term body = Term::var("x");
  for (unsigned i = 0; i < n; ++i) body = Term::app(Term::var("f"), body);
  return Term::abs("x", Term::abs("f", body));
}

std::optional<unsigned> numeral_of(const Term& t) {
  if (!t.is_abs() || !t.body().is_abs()) return std::nullopt;
  const std::string& base = t.name();
  const std::string& step = t.body().name();
  if (base == step) return std::nullopt;
  unsigned count = 0;
  const Term* cur = &t.body().body();
  while (cur->is_app()) {
    if (!cur->fn().is_var() || cur->fn().name() != step) return std::nullopt;
    ++count;
    cur = &cur->arg();
  }
  if (!cur->is_var() || cur->name() != base) return std::nullopt;
  return count;
}

}  // namespace storop
