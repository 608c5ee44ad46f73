#include <fstream>
#include <sstream>

#include "doctest.h"
#include "goldens.hpp"
#include "storop/builtins.hpp"
#include "storop/numerals.hpp"
#include "storop/storage.hpp"

using namespace storop;

namespace {

Term P(const char* s) { return parse_term(s); }

Term succ_power(unsigned n) {
  Term t = church(0);
  for (unsigned k = 0; k < n; ++k) t = Term::app(builtin_term("succ"), t);
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kPositive[] = {"T1", "T2", "T", "Tp", "T:2", "Tp:2"};

}  // namespace

TEST_CASE("certify T1 at 3") {
  Certificate c = certify(builtin_term("T1"), 3);
  REQUIRE(c.ok());
  CHECK(alpha_equal(c.steps.front().u, P("(@T1)nu f")));
  CHECK(c.steps.back().rule == MachineRule::FHeadTerminal);
  CHECK(alpha_equal(*c.tau, succ_power(3)));
  CHECK(c.m == 3u);
  CHECK(c.registry.entries().size() == 3);
  CHECK(c.flags.empty());
}

TEST_CASE("positive operators certify for n up to 10") {
  for (const char* name : kPositive) {
    CAPTURE(name);
    auto s = certify_range(builtin_term(name), 10);
    CHECK(s.ok());
    for (const auto& c : s.runs) {
      CAPTURE(c.n);
      CHECK(c.m == c.n);
      CHECK(c.flags.empty());
    }
  }
  for (const char* name : {"T1", "T2"}) {
    auto s = certify_range(builtin_term(name), 10);
    for (const auto& c : s.runs) {
      CHECK(alpha_equal(*c.tau, succ_power(c.n)));
      for (const auto& sym : c.registry.symbols()) CHECK_FALSE(occurs_free(*c.tau, sym));
    }
  }
}

TEST_CASE("negative operators fail with the expected reason") {
  Term f0 = P("\\v \\f (f)@church:0");
  CHECK(certify(f0, 0).ok());
  Certificate c = certify(f0, 1);
  REQUIRE_FALSE(c.ok());
  CHECK(c.failure->reason == FailureReason::TauWrongValue);
  CHECK(c.m == 0u);
  auto s = certify_range(f0, 2);
  CHECK(s.first_failure == 1u);
  CHECK(s.runs[0].ok());

  Certificate bad = certify(P("\\v \\f (v)f"), 0);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.failure->reason == FailureReason::BadHeadShape);

  Certificate loop = certify(P("\\v \\f @omega"), 0, 5000);
  REQUIRE_FALSE(loop.ok());
  CHECK(loop.failure->reason == FailureReason::FuelExhausted);
  CHECK(certify_range(P("\\v \\f @omega"), 1, 5000).first_failure == 0u);

  Certificate lam = certify(P("\\v \\f \\z z"), 0);
  CHECK(lam.failure->reason == FailureReason::BadHeadShape);

  // b hands its indexed variable to a, which puts it in head position again
  Term twice_op = Term::lambdas({"v", "f"}, Term::apply(Term::var("v"), {P("\\g (g)g"), P("\\y (y)\\q y")}));
  Certificate twice = certify(twice_op, 1);
  REQUIRE_FALSE(twice.ok());
  CHECK(twice.failure->reason == FailureReason::ReusedIndexedVariable);

  Certificate open = certify(P("\\v \\f (f)\\x x"), 0);
  CHECK(open.failure->reason == FailureReason::TauNotNumeral);

  CHECK_THROWS_AS(certify(P("\\v y"), 0), std::invalid_argument);
}

TEST_CASE("lenient mode accepts any numeral") {
  Certificate c = certify(P("\\v \\f (f)@church:0"), 1, kDefaultFuel, CertifyMode::Lenient);
  CHECK(c.ok());
  CHECK(c.m == 0u);
}

TEST_CASE("certificates replay") {
  for (const char* name : kPositive) {
    CAPTURE(name);
    for (unsigned n : {0u, 3u, 7u}) {
      Certificate c = certify(builtin_term(name), n);
      std::uint64_t total = 0;
      for (const auto& s : c.steps) {
        auto r = head_reduce(s.u);
        CHECK(alpha_equal(r.result, s.v));
        CHECK(r.steps == s.h);
        total += s.h;
      }
      CHECK(total == c.total_h);
    }
  }
}

TEST_CASE("registry symbols are fresh and created once") {
  for (const char* name : kPositive) {
    CAPTURE(name);
    Certificate c = certify(builtin_term(name), 6);
    std::set<std::string> seen;
    for (const auto& e : c.registry.entries()) {
      CHECK(seen.insert(e.symbol).second);
      CHECK_FALSE(all_names(e.a).count(e.symbol));
      CHECK_FALSE(all_names(e.b).count(e.symbol));
      for (const auto& arg : e.args) CHECK_FALSE(all_names(arg).count(e.symbol));
      CHECK(e.level < 6);
    }
  }
}

TEST_CASE("theta_corpus") {
  auto c2 = theta_corpus(2, 4);
  REQUIRE(c2.size() == 4);
  CHECK(alpha_equal(c2[0], church(2)));
  CHECK(alpha_equal(c2[1], succ_power(2)));
  for (unsigned n = 0; n <= 10; ++n) {
    auto c = theta_corpus(n, 4);
    CHECK(c.size() == 4);
    auto again = theta_corpus(n, 4);
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(beta_equiv(c[i], church(n)) == Tri::Yes);
      CHECK(is_closed(c[i]));
      CHECK(alpha_equal(c[i], again[i]));
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(alpha_equal(c[i], c[j]));
    }
  }
  CHECK(theta_corpus(5, 100).size() > 8);
}

TEST_CASE("behavioral_check agrees with the machine") {
  Term t1 = builtin_term("T1");
  auto rep = behavioral_check(t1, certify(t1, 3), theta_corpus(3, 4));
  CHECK(rep.ok());
  for (const auto& e : rep.entries) CHECK(alpha_equal(*e.hnf, Term::app(Term::var("f"), succ_power(3))));

  for (const char* name : kPositive) {
    CAPTURE(name);
    Term op = builtin_term(name);
    for (unsigned n = 0; n <= 10; ++n) {
      CAPTURE(n);
      CHECK(behavioral_check(op, certify(op, n), theta_corpus(n, 4)).ok());
    }
  }
}

TEST_CASE("behavioral_check rejects the negative operators") {
  Term f0 = P("\\v \\f (f)@church:0");
  CHECK_FALSE(behavioral_check(f0, certify(f0, 1), theta_corpus(1, 4)).ok());
  Term vf = P("\\v \\f (v)f");
  CHECK_FALSE(behavioral_check(vf, certify(vf, 0), theta_corpus(0, 4)).ok());
  Term om = P("\\v \\f @omega");
  CHECK_FALSE(behavioral_check(om, certify(om, 0, 2000), theta_corpus(0, 2), 2000).ok());
}

TEST_CASE("theta0 against T2") {
  Term t2 = builtin_term("T2");
  auto rep = behavioral_check(t2, certify(t2, 0), {builtin_term("theta0")});
  REQUIRE(rep.entries.size() == 1);
  const auto& e = rep.entries[0];
  CHECK_FALSE(e.ok);
  CHECK(e.theta_is_numeral == Tri::No);
  CHECK(print_term(*e.hnf, {true}) + "\n" == read_file(STOROP_DATA_DIR "/golden/theta0_T2_hnf.txt"));
}

TEST_CASE("pair_behavioral") {
  Term t1 = builtin_term("T1");
  std::vector<PairSample> samples;
  for (unsigned n = 0; n <= 4; ++n) samples.push_back({church(n), theta_corpus(n, 3)});
  auto rep = pair_behavioral(t1, samples);
  CHECK(rep.ok());
  for (unsigned n = 0; n <= 4; ++n) {
    CHECK(rep.entries[n].holes.empty());
    CHECK(alpha_equal(*rep.entries[n].pattern, succ_power(n)));
  }

  Term pass = P("\\v \\f (f)v");
  auto bad = pair_behavioral(pass, {{church(2), {church(2), succ_power(2)}}});
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.entries[0].pattern);
  CHECK(bad.entries[0].pattern->is_var());
  CHECK(bad.entries[0].holes.size() == 1);
  CHECK(bad.entries[0].detail.find("unevaluated") != std::string::npos);

  CHECK_THROWS_AS(pair_behavioral(t1, {{church(1), {}}}), std::invalid_argument);
  CHECK_THROWS_AS(pair_behavioral(t1, {{church(1), {church(2)}}}), std::invalid_argument);
}

TEST_CASE("anti_unify") {
  auto g = anti_unify({P("(a)(b)c"), P("(a)(d)c")});
  CHECK(g.holes.size() == 1);
  CHECK(alpha_equal(g.pattern, Term::app(Term::var("a"), Term::app(Term::var(g.holes[0]), Term::var("c")))));

  // same disagreement, same hole
  auto same = anti_unify({P("(b)b"), P("(d)d")});
  CHECK(same.holes.size() == 1);

  // a disagreement on a bound variable widens to the abstraction
  auto bound = anti_unify({P("\\x (x)a"), P("\\x (a)x")});
  CHECK(bound.pattern.is_var());

  auto eq = anti_unify({P("\\x x"), P("\\y y")});
  CHECK(eq.holes.empty());
}

TEST_CASE("golden files replay byte for byte") {
  for (const auto& f : goldens::all()) {
    CAPTURE(f.path);
    CHECK(read_file(STOROP_DATA_DIR "/" + f.path) == f.content);
  }
}

TEST_CASE("serialization is stable") {
  Term t = builtin_term("T");
  CHECK(serialize_certificate(certify(t, 4)) == serialize_certificate(certify(t, 4)));
  auto text = serialize_certificate(certify(P("\\v \\f (v)f"), 0));
  CHECK(text.find("status fail bad-head-shape") != std::string::npos);
}
