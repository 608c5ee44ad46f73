// storop: command-line front end.
//
//   storop reduce TERM [--strategy head|normal] [--fuel N] [--trace]
//   storop certify TERM [--max-n N] [--fuel N] [--corpus K] [--out FILE]
//   storop check FILE [--fragment af2bot|fperp] [--equations FILE]
//   storop translate FORMULA --op star|bot|forget|polarity
//
// Exit codes: 0 positive verdict, 1 negative verdict, 2 usage or parse error,
// 3 fuel exhausted. STOROP_FUEL replaces the default fuel.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "storop/formula.hpp"
#include "storop/reduce.hpp"
#include "storop/storage.hpp"
#include "storop/typing.hpp"

namespace {

using namespace storop;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kFuel = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string show(const Term& t) { return print_term(t, {true}); }

std::uint64_t default_fuel() {
  const char* env = std::getenv("STOROP_FUEL");
  if (!env || !*env) return kDefaultFuel;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end || v == 0) throw UsageError("STOROP_FUEL must be a positive integer");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Term read_term(const std::string& text) {
  try {
    return parse_term(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("term ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---------------------------------------------------------------------------

struct ReduceArgs {
  std::string term;
  std::string strategy = "head";
  std::uint64_t fuel = 0;
  bool trace = false;
};

int cmd_reduce(const ReduceArgs& a) {
  Term t = read_term(a.term);
  TraceFn trace;
  if (a.trace) trace = [](const Term& x) { std::cout << "  " << show(x) << "\n"; };
  auto out = a.strategy == "head" ? head_reduce(t, a.fuel, trace) : normalize(t, a.fuel, trace);
  std::cout << show(out.result) << "\n";
  std::cout << "steps " << out.steps << "\n";
  std::cout << "status " << to_string(out.status) << "\n";
  return out.status == ReductionStatus::FuelExhausted ? kFuel : kOk;
}

struct CertifyArgs {
  std::string term;
  unsigned max_n = 10;
  std::uint64_t fuel = 0;
  unsigned corpus = 4;
  std::string out;
};

int cmd_certify(const CertifyArgs& a) {
  Term op = read_term(a.term);
  if (!is_closed(op)) throw UsageError("the operator is not closed");
  auto range = certify_range(op, a.max_n, a.fuel);

  int code = kOk;
  std::string written;
  for (const auto& c : range.runs) {
    written += serialize_certificate(c) + "\n";
    std::cout << "n=" << c.n << " ";
    if (!c.ok()) {
      std::cout << "FAIL " << to_string(c.failure->reason) << ": " << c.failure->detail << "\n";
      if (code == kOk) code = c.failure->reason == FailureReason::FuelExhausted ? kFuel : kNegative;
      continue;
    }
    std::cout << "ok tau=" << show(*c.tau) << " steps=" << c.steps.size() << " h=" << c.total_h;
    for (const auto& f : c.flags) std::cout << " [" << f << "]";
    if (a.corpus > 0) {
      auto rep = behavioral_check(op, c, theta_corpus(c.n, a.corpus), a.fuel);
      std::size_t good = 0;
      for (const auto& e : rep.entries) good += e.ok;
      std::cout << " behavioral " << good << "/" << rep.entries.size();
      if (!rep.ok()) {
        for (const auto& e : rep.entries)
          if (!e.ok) std::cout << "\n  theta " << show(e.theta) << ": " << e.detail;
        if (code == kOk) code = kNegative;
      }
    }
    std::cout << "\n";
  }
  if (range.first_failure) std::cout << "first failure at n=" << *range.first_failure << "\n";
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + a.out);
    f << written;
  }
  return code;
}

struct CheckArgs {
  std::string file;
  std::string fragment = "af2bot";
  std::string equations;
};

int cmd_check(const CheckArgs& a) {
  Derivation d = [&] {
    try {
      return parse_derivation(read_file(a.file));
    } catch (const ParseError& e) {
      throw UsageError(a.file + ": " + e.what());
    }
  }();
  EquationSet eqs;
  if (!a.equations.empty()) {
    try {
      eqs = parse_equations(read_file(a.equations));
    } catch (const std::exception& e) {
      throw UsageError(a.equations + ": " + e.what());
    }
  }
  CheckReport r = a.fragment == "fperp" ? check_fperp(d) : check_derivation(d, eqs);
  if (r.ok) {
    std::cout << "ok " << show(d.term) << " : " << print_formula(d.type, {true, true}) << "\n";
    return kOk;
  }
  std::cout << "fail at " << format_path(r.path) << ": " << r.reason << "\n";
  return kNegative;
}

struct TranslateArgs {
  std::string formula;
  std::string op;
};

int cmd_translate(const TranslateArgs& a) {
  Formula f = [&] {
    try {
      return parse_formula(a.formula);
    } catch (const ParseError& e) {
      throw UsageError(std::string("formula ") + e.what());
    } catch (const FormulaError& e) {
      throw UsageError(e.what());
    }
  }();
  if ((a.op == "star" || a.op == "bot") && has_bot_vars(f))
    throw UsageError("--op " + a.op + " needs a formula without ⊥-variables");
  if (a.op == "polarity") {
    std::cout << to_string(polarity(f)) << "\n";
    return kOk;
  }
  Formula g = a.op == "star" ? godel_star(f) : a.op == "bot" ? bot_transform(f) : forget_first_order(f);
  std::cout << print_formula(g, {true, false}) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Storage operators: reduction, certification and derivation checking"};
  app.require_subcommand(1);

  std::uint64_t fuel = 0;
  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "head-reduce or normalize a term");
  reduce->add_option("term", ra.term, "term text or @builtin")->required();
  reduce->add_option("--strategy", ra.strategy)->check(CLI::IsMember({"head", "normal"}));
  reduce->add_option("--fuel", ra.fuel)->check(CLI::PositiveNumber);
  reduce->add_flag("--trace", ra.trace, "print every intermediate term");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "run the storage machine for n = 0..max-n");
  certify->add_option("term", ca.term, "closed operator")->required();
  certify->add_option("--max-n", ca.max_n);
  certify->add_option("--fuel", ca.fuel)->check(CLI::PositiveNumber);
  certify->add_option("--corpus", ca.corpus, "numeral variants per n for the behavioral check");
  certify->add_option("--out", ca.out, "write the certificates here");

  CheckArgs ka;
  auto* check = app.add_subcommand("check", "check a derivation file");
  check->add_option("file", ka.file)->required();
  check->add_option("--fragment", ka.fragment)->check(CLI::IsMember({"af2bot", "fperp"}));
  check->add_option("--equations", ka.equations, "equation file");

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "apply a formula translation");
  translate->add_option("formula", ta.formula)->required();
  translate->add_option("--op", ta.op)->required()->check(CLI::IsMember({"star", "bot", "forget", "polarity"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    fuel = default_fuel();
    if (ra.fuel == 0) ra.fuel = fuel;
    if (ca.fuel == 0) ca.fuel = fuel;
    if (*reduce) return cmd_reduce(ra);
    if (*certify) return cmd_certify(ca);
    if (*check) return cmd_check(ka);
    return cmd_translate(ta);
  } catch (const UsageError& e) {
    std::cerr << "storop: " << e.what() << "\n";
    return kUsage;
  }
}
