// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "formula_gen.hpp"
#include "goldens.hpp"
#include "mutations.hpp"
#include "properties.hpp"
#include "storop/builtins.hpp"
#include "storop/derivations.hpp"
#include "storop/formula.hpp"
#include "storop/numerals.hpp"
#include "storop/storage.hpp"
#include "storop/typing.hpp"

using namespace storop;

namespace {

struct Verdict {
  bool pass = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) note.clear();
    if (!note.empty()) note += "; ";
    note += what;
    pass = false;
  }
};

const char* kOperators[] = {"T1", "T2", "T", "Tp"};

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

const bundled::Entry* find_entry(const std::vector<bundled::Entry>& lib, const std::string& name) {
  for (const auto& e : lib)
    if (e.name == name) return &e;
  return nullptr;
}

Verdict certification_positive() {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  for (const char* name : kOperators) {
    auto s = certify_range(builtin_term(name), 10);
    v.require(s.ok(), std::string(name) + " fails at n=" + (s.first_failure ? std::to_string(*s.first_failure) : ""));
    if (std::string(name) == "T1" || std::string(name) == "T2")
      for (const auto& c : s.runs)
        v.require(c.tau && alpha_equal(*c.tau, succ_power(c.n)), std::string(name) + " tau at n=" + std::to_string(c.n));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.require(secs < 5.0, "took " + std::to_string(secs) + "s");
  if (v.pass) {
    std::ostringstream o;
    o.precision(3);
    o << "T1, T2, T, T' certify for n=0..10; tau = (s)^n 0 for T1, T2; " << secs << "s";
    v.note = o.str();
  }
  return v;
}

Verdict certification_negative() {
  Verdict v;
  auto reason = [](const Certificate& c) { return c.failure ? std::optional(c.failure->reason) : std::nullopt; };
  auto f0 = certify_range(parse_term("\\v \\f (f)@church:0"), 1);
  v.require(f0.first_failure == 1u && reason(f0.runs[1]) == FailureReason::TauWrongValue,
            "(f)0 is not tau-wrong-value at n=1");
  v.require(reason(certify(parse_term("\\v \\f (v)f"), 0)) == FailureReason::BadHeadShape,
            "(v)f is not bad-head-shape at n=0");
  v.require(reason(certify(parse_term("\\v \\f @omega"), 0)) == FailureReason::FuelExhausted,
            "omega is not fuel-exhausted");
  if (v.pass) v.note = "tau-wrong-value at n=1, bad-head-shape at n=0, fuel-exhausted";
  return v;
}

Verdict behavioral() {
  Verdict v;
  unsigned checked = 0;
  for (const char* name : kOperators) {
    Term op = builtin_term(name);
    for (unsigned n = 0; n <= 10; ++n) {
      Certificate c = certify(op, n);
      auto thetas = theta_corpus(n, 4);
      v.require(thetas.size() == 4, "corpus(" + std::to_string(n) + ") is short");
      auto rep = behavioral_check(op, c, thetas);
      v.require(rep.ok(), std::string(name) + " behavioral at n=" + std::to_string(n));
      for (const auto& e : rep.entries) {
        ++checked;
        if (!e.sigma || !c.tau || !e.hnf) continue;
        Term expected = Term::app(Term::var(kF), substitute(*c.tau, *e.sigma));
        v.require(alpha_equal(*e.hnf, expected), std::string(name) + " sigma(tau) differs at n=" + std::to_string(n));
      }
    }
  }
  if (v.pass) v.note = std::to_string(checked) + " runs of (T)theta f equal (f)sigma(tau) up to alpha";
  return v;
}

Verdict lemma21() {
  Verdict v;
  auto p1 = testgen::lemma21_substitution(200);
  auto p2 = testgen::lemma21_application(200);
  v.require(p1.instances == 200 && p1.ok(), "part 1: " + std::to_string(p1.failures.size()) + " failures");
  v.require(p2.instances == 200 && p2.ok(), "part 2: " + std::to_string(p2.failures.size()) + " failures");
  if (v.pass) v.note = "200 + 200 instances, step counts exact";
  return v;
}

Verdict derivations() {
  Verdict v;
  auto lib = bundled::library();
  unsigned ok = 0, mutants = 0, killed = 0;
  std::string failing;
  for (const auto& e : lib) {
    auto r = check_derivation(e.derivation);
    if (r.ok) {
      ++ok;
      auto all = testgen::mutants_of(e.derivation);
      auto survivors = testgen::surviving_mutants(e.derivation);
      mutants += all.size();
      killed += all.size() - survivors.size();
    } else {
      failing += (failing.empty() ? "" : ", ") + e.name + " at " + format_path(r.path);
    }
  }
  v.require(failing.empty(), std::to_string(ok) + "/" + std::to_string(lib.size()) +
                                 " derivations check; not derivable with adequate equations: " + failing);
  v.require(killed == mutants, "mutation kill " + std::to_string(killed) + "/" + std::to_string(mutants));
  std::string kill = "mutation kill " + std::to_string(killed) + "/" + std::to_string(mutants) + " over the " +
                     std::to_string(ok) + " checking derivations";
  v.note = v.pass ? std::to_string(ok) + " derivations check; " + kill : v.note + "; " + kill;
  return v;
}

Verdict lift() {
  Verdict v;
  auto lib = bundled::library();
  const Formula target = parse_formula("!x(N_|[x] -> ~~N[x])");
  std::string lifted;
  for (const char* name : {"t1-star", "t2-star"}) {
    const auto* e = find_entry(lib, name);
    try {
      Derivation d = lift_star_to_bot(e->derivation);
      auto r = check_derivation(d);
      bool good = r.ok && alpha_equal(d.type, target);
      v.require(good, std::string(name) + " lift does not check: " + r.reason);
      if (good) lifted += std::string(lifted.empty() ? "" : ", ") + name;
    } catch (const std::exception& ex) {
      v.require(false, std::string(name) + ": " + ex.what());
    }
  }
  v.note = v.pass ? "t1-star and t2-star lifted to the N_| type and checked" : v.note + "; lifted and checked: " + lifted;
  return v;
}

Verdict translations() {
  Verdict v;
  Formula n = nat(FoTerm::var("x"));
  FormulaStyle uni{true, false};
  v.require(print_formula(godel_star(n), uni) == "∀X{¬X(0), ∀y(¬X(y) → ¬X(s(y))) → ¬X(x)}", "N*[x] display");
  v.require(print_formula(bot_transform(n), uni) == "∀X⊥{X⊥(0), ∀y(X⊥(y) → X⊥(s(y))) → X⊥(x)}", "N_|[x] display");
  v.require(print_formula(forget_first_order(n), uni) == "∀X{X, (X → X) → X}", "propositional trace display");
  std::mt19937 rng(2024);
  for (int i = 0; i < 100; ++i) {
    Formula a = testgen::random_formula(rng, 5);
    v.require(alpha_equal(forget_first_order(godel_star(a)), godel_star(forget_first_order(a))),
              "star does not commute on " + print_formula(a));
    v.require(alpha_equal(forget_first_order(bot_transform(a)), bot_transform(forget_first_order(a))),
              "bot does not commute on " + print_formula(a));
  }
  if (v.pass) v.note = "three displays exact; both commutations over 100 random formulas";
  return v;
}

Verdict numerals() {
  Verdict v;
  for (unsigned n = 0; n <= 200; ++n) v.require(numeral_of(church(n)) == n, "church(" + std::to_string(n) + ")");
  auto others = testgen::random_non_numerals(50);
  v.require(others.size() == 50, "generator short");
  for (const auto& t : others) {
    v.require(normalize(t).steps == 0, "not normal: " + print_term(t));
    v.require(!numeral_of(t), "accepted " + print_term(t));
  }
  if (v.pass) v.note = "church(0..200) recognized; 50 normal non-numerals rejected";
  return v;
}

Verdict normalization() {
  Verdict v;
  unsigned count = 0;
  for (const auto& e : bundled::library()) {
    ++count;
    auto r = normalize(e.derivation.term);
    v.require(r.status == ReductionStatus::NormalForm, e.name + " does not normalize");
  }
  if (v.pass) v.note = std::to_string(count) + " bundled terms normalize within " + std::to_string(kDefaultFuel);
  return v;
}

Verdict theta0_remark() {
  Verdict v;
  v.require(check_derivation(bundled::theta0()).ok, "theta0 : N*[0] does not check");
  v.require(beta_equiv(builtin_term("theta0"), church(0)) == Tri::No, "theta0 is beta-equal to 0");
  std::string golden = read_file(STOROP_DATA_DIR "/golden/theta0_T2_hnf.txt");
  v.require(!golden.empty() && golden == goldens::theta0_hnf(), "golden hnf of (T2)theta0 f differs");
  if (v.pass) {
    v.note = "theta0 : N*[0] checks; not beta-equal to 0; (T2)theta0 f hnf = " + golden;
    v.note.pop_back();
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {"storage certification, positive", certification_positive},
      {"storage certification, negative", certification_negative},
      {"behavioral cross-check", behavioral},
      {"head reduction property suite", lemma21},
      {"derivation suite and mutation kill", derivations},
      {"star-to-bot lift", lift},
      {"translations", translations},
      {"numeral recognition", numerals},
      {"normalization smoke test", normalization},
      {"theta0 regression", theta0_remark},
  };
  int failed = 0;
  int i = 0;
  for (const auto& c : criteria) {
    Verdict v = c.run();
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << ++i << " " << c.title << ": " << v.note << "\n";
  }
  return failed ? 1 : 0;
}
