#include "doctest.h"
#include "mutations.hpp"
#include "storop/builtins.hpp"
#include "storop/derivations.hpp"
#include "storop/numerals.hpp"
#include "storop/reduce.hpp"
#include "storop/typing.hpp"

using namespace storop;

namespace {

Formula F(const char* s) { return parse_formula(s); }

const bundled::Entry& entry(const std::vector<bundled::Entry>& lib, const std::string& name) {
  for (const auto& e : lib)
    if (e.name == name) return e;
  throw std::out_of_range(name);
}

void add_to_every_context(Derivation& d, const ContextEntry& e) {
  d.ctx.insert(d.ctx.begin(), e);
  for (auto& p : d.premises) add_to_every_context(p, e);
}

}  // namespace

TEST_CASE("bundled derivations check and conclude what they claim") {
  auto lib = bundled::library();
  struct Claim {
    const char* name;
    const char* term;
    const char* type;
  };
  const Claim claims[] = {
      {"zero", "@zero", "N[0]"},
      {"succ", "@succ", "!y(N[y] -> N[s(y)])"},
      {"numeral-3", "@church:3", "N[3]"},
      {"zero-prop", "@zero", "N"},
      {"theta0", "@theta0", "N*[0]"},
      {"t1-star", "@T1", "!x(N*[x] -> ~~N[x])"},
      {"t1-bot", "@T1", "!x(N_|[x] -> ~~N[x])"},
      {"t2-star", "@T2", "!x(N*[x] -> ~~N[x])"},
      {"t2-bot", "@T2", "!x(N_|[x] -> ~~N[x])"},
      {"T-bot", "@T", "!x(N_|[x] -> ~~N[x])"},
      {"Tp-bot", "@Tp", "!x(N_|[x] -> ~~N[x])"},
  };
  for (const auto& c : claims) {
    CAPTURE(c.name);
    const auto& e = entry(lib, c.name);
    CHECK(alpha_equal(e.derivation.term, parse_term(c.term)));
    CHECK(alpha_equal(e.derivation.type, F(c.type)));
  }
  for (const auto& e : lib) {
    CAPTURE(e.name);
    auto r = check_derivation(e.derivation);
    CAPTURE(r.reason);
    CHECK(r.ok == e.expected_ok);
  }
  for (unsigned n = 0; n <= 5; ++n) {
    auto d = bundled::numeral(n);
    CHECK(alpha_equal(d.term, church(n)));
    CHECK(alpha_equal(d.type, nat(FoTerm::succ_n(n))));
  }
}

TEST_CASE("T2 breaks at the step function") {
  auto d = bundled::t2(false);
  auto r = check_derivation(d);
  REQUIRE_FALSE(r.ok);
  const Derivation& at = node_at(d, r.path);
  CHECK(at.rule == Rule::Eq);
  CHECK(alpha_equal(at.term, builtin_term("succ")));
  CHECK(r.reason.find("eq:") == 0);
}

TEST_CASE("generalizing over a variable free in the context fails there") {
  Derivation d = bundled::zero();
  REQUIRE(d.rule == Rule::GenPred);
  add_to_every_context(d, {"z", F("X(0)")});
  auto r = check_derivation(d);
  CHECK_FALSE(r.ok);
  CHECK(r.path.empty());
  CHECK(r.reason.find("occurs free in the context") != std::string::npos);

  Derivation s = bundled::succ();
  add_to_every_context(s, {"z", F("X(y)")});
  auto rs = check_derivation(s);
  CHECK_FALSE(rs.ok);
  CHECK(node_at(s, rs.path).rule == Rule::GenPred);
}

TEST_CASE("single-node mutations are all caught at or below the mutation") {
  for (const auto& e : bundled::library()) {
    if (!e.expected_ok) continue;
    CAPTURE(e.name);
    auto mutants = testgen::mutants_of(e.derivation);
    CHECK(mutants.size() > all_paths(e.derivation).size());
    auto survivors = testgen::surviving_mutants(e.derivation);
    std::string list;
    for (const auto& s : survivors) list += s + "\n";
    CAPTURE(list);
    CHECK(survivors.empty());
  }
}

TEST_CASE("checker rules") {
  Context g{{"x", F("A")}};
  auto ok = build::abs(build::ax(g, "x"));
  CHECK(check_derivation(ok).ok);
  CHECK(alpha_equal(ok.type, F("A -> A")));

  // shadowing is rejected
  Derivation dup = build::ax({{"x", F("A")}, {"x", F("B")}}, "x");
  CHECK_FALSE(check_derivation(dup).ok);

  // inst-bot needs a ⊥-type
  Derivation v = build::ax({{"v", F("!X_| X_|")}}, "v");
  Derivation good = build::inst_so(v, PredAbstraction{{}, F("A -> bot")});
  CHECK(check_derivation(good).ok);
  Derivation bad = good;
  bad.witness = PredAbstraction{{}, F("A")};
  bad.type = F("A");
  auto r = check_derivation(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.reason.find("not a ⊥-type") != std::string::npos);

  // rule 8 with an explicit chain
  auto eqs = parse_equations("pz: p(0) = 0\n");
  Derivation n = build::ax({{"n", F("N[p(0)]")}}, "n");
  Derivation e = build::eq(n, eqs, {EqStep{"pz", {}, {0, 1, 1, 0}, Direction::LeftToRight}});
  CHECK(alpha_equal(e.type, F("N[0]")));
  CHECK(check_derivation(e, eqs).ok);
  CHECK_FALSE(check_derivation(e).ok);  // unknown equation without the set
}

TEST_CASE("propositional fragment") {
  CHECK(check_fperp(bundled::zero_prop()).ok);
  auto r = check_fperp(bundled::succ());
  CHECK_FALSE(r.ok);
  CHECK(r.reason.find("fperp") == 0);
  CHECK_FALSE(check_fperp(bundled::zero()).ok);  // X(0) has a first-order argument
}

TEST_CASE("forget_derivation") {
  Derivation t1 = forget_derivation(bundled::t1(true));
  CHECK(alpha_equal(t1.type, F("N_| -> ~~N")));
  CHECK(alpha_equal(t1.term, builtin_term("T1")));
  CHECK(check_fperp(t1).ok);

  Derivation z = forget_derivation(bundled::zero());
  CHECK(alpha_equal(z.type, F("N")));
  CHECK(check_fperp(z).ok);

  Derivation a = forget_derivation(build::ax({{"x", F("X(s(0))")}}, "x"));
  CHECK(alpha_equal(a.type, F("X")));
  CHECK(alpha_equal(a.ctx[0].type, F("X")));

  for (const auto& e : bundled::library()) {
    if (!e.expected_ok) continue;
    CAPTURE(e.name);
    CHECK(check_fperp(forget_derivation(e.derivation)).ok);
  }
}

TEST_CASE("lift_star_to_bot") {
  Derivation lifted = lift_star_to_bot(bundled::t1(false));
  auto r = check_derivation(lifted);
  CAPTURE(r.reason);
  CHECK(r.ok);
  CHECK(alpha_equal(lifted.type, F("!x(N_|[x] -> ~~N[x])")));
  CHECK(alpha_equal(lifted.term, builtin_term("T1")));

  CHECK_THROWS_AS(lift_star_to_bot(bundled::t2(false)), std::invalid_argument);

  Derivation redex = bundled::t1(false);
  redex.term = Term::app(parse_term("\\x x"), redex.term);
  CHECK_THROWS_AS(lift_star_to_bot(redex), std::invalid_argument);
  CHECK_THROWS_AS(lift_star_to_bot(bundled::zero()), std::invalid_argument);
}

TEST_CASE("derivation files roundtrip") {
  for (const auto& e : bundled::library()) {
    CAPTURE(e.name);
    std::string text = print_derivation(e.derivation);
    Derivation back = parse_derivation(text);
    CHECK(print_derivation(back) == text);
    CHECK(check_derivation(back).ok == e.expected_ok);
  }
  auto eqs = parse_equations("pz: p(0) = 0\n");
  Derivation e =
      build::eq(build::ax({{"n", F("N[p(0)]")}}, "n"), eqs, {EqStep{"pz", {}, {0, 1, 1, 0}, Direction::LeftToRight}});
  Derivation back = parse_derivation(print_derivation(e));
  CHECK(check_derivation(back, eqs).ok);
  Derivation fo = build::inst_fo(build::ax({{"n", F("!y X(y)")}}, "n"), parse_fo_term("s(0)"));
  CHECK(check_derivation(parse_derivation(print_derivation(fo))).ok);
}

TEST_CASE("derivation file errors") {
  CHECK_THROWS_AS(parse_derivation("(rule nope (ctx) (term \"x\") (type \"A\"))"), ParseError);
  CHECK_THROWS_AS(parse_derivation("(rule ax (ctx) (term \"x\")"), ParseError);
  CHECK_THROWS_AS(parse_derivation("(rule ax (ctx) (type \"A\"))"), ParseError);
  CHECK_THROWS_AS(parse_derivation("(rule ax (ctx (x \"A\") (x \"B\")) (term \"x\") (type \"A\"))"), ParseError);
  try {
    parse_derivation("(rule ax\n  (ctx)\n  (term \"\\\\x (\")\n  (type \"A\"))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK(check_derivation(parse_derivation("(rule ax (ctx (x \"A\")) (term \"x\") (type \"A\"))")).ok);
}

TEST_CASE("every typed term normalizes within the default fuel") {
  for (const auto& e : bundled::library()) {
    if (!e.expected_ok) continue;
    CAPTURE(e.name);
    CHECK(normalize(e.derivation.term).status == ReductionStatus::NormalForm);
  }
}
