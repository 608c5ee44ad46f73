#ifndef STOROP_NUMERALS_HPP
#define STOROP_NUMERALS_HPP

#include <optional>

#include "storop/term.hpp"

namespace storop {

/// Church numeral λxλf(f)^n x (base first, step second).
Term church(unsigned n);

/// m iff t is α-equal to church(m). No reduction is performed.
std::optional<unsigned> numeral_of(const Term& t);

}  // namespace storop

#endif  // STOROP_NUMERALS_HPP
