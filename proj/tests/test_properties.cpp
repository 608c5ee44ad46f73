#include "doctest.h"
#include "properties.hpp"

using namespace storop;

TEST_CASE("substitution preserves head reduction and its length") {
  auto run = testgen::lemma21_substitution(200);
  CHECK(run.instances == 200);
  CAPTURE(run.failures.size());
  CHECK(run.ok());
}

TEST_CASE("arguments after a head reduction add its length") {
  auto run = testgen::lemma21_application(200);
  CHECK(run.instances == 200);
  CAPTURE(run.failures.size());
  CHECK(run.ok());
}

TEST_CASE("the generators produce nontrivial reductions") {
  std::mt19937 rng(21);
  unsigned nonzero = 0, total = 0;
  for (int i = 0; i < 200; ++i)
    if (auto r = testgen::random_reduct(rng, {"a", "b", "c"})) {
      ++total;
      nonzero += r->h > 0;
    }
  CHECK(nonzero * 2 > total);
}

TEST_CASE("numeral_of classifies numerals and non-numerals") {
  for (unsigned n = 0; n <= 200; ++n) {
    CHECK(numeral_of(church(n)) == n);
    CHECK(testgen::looks_like_numeral(church(n)));
  }
  auto others = testgen::random_non_numerals(50);
  REQUIRE(others.size() == 50);
  for (const auto& t : others) {
    CAPTURE(print_term(t));
    CHECK(is_closed(t));
    CHECK(normalize(t).steps == 0);
    CHECK_FALSE(numeral_of(t).has_value());
  }
}
