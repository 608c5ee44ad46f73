#include "storop/storage.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "storop/builtins.hpp"
#include "storop/numerals.hpp"

namespace storop {

// ---------------------------------------------------------------------------
// Registry

const IndexedVar& IndexedVarRegistry::create(unsigned level, const Term& a, const Term& b,
                                             const std::vector<Term>& args) {
  std::set<std::string> taken = all_names(a);
  for (const auto& n : all_names(b)) taken.insert(n);
  for (const auto& c : args)
    for (const auto& n : all_names(c)) taken.insert(n);
  for (const auto& e : entries_) taken.insert(e.symbol);
  std::string sym;
  do {
    sym = "x_" + std::to_string(level) + "_" + std::to_string(++generation_);
  } while (taken.count(sym));
  entries_.push_back({sym, level, a, b, args, false});
  return entries_.back();
}

IndexedVar* IndexedVarRegistry::find(const std::string& symbol) {
  for (auto& e : entries_)
    if (e.symbol == symbol) return &e;
  return nullptr;
}

const IndexedVar* IndexedVarRegistry::find(const std::string& symbol) const {
  return const_cast<IndexedVarRegistry*>(this)->find(symbol);
}

std::set<std::string> IndexedVarRegistry::symbols() const {
  std::set<std::string> out;
  for (const auto& e : entries_) out.insert(e.symbol);
  return out;
}

const char* to_string(MachineRule r) {
  switch (r) {
    case MachineRule::NuHead: return "nu-head";
    case MachineRule::IndexedHead: return "indexed-head";
    case MachineRule::FHeadTerminal: return "f-head-terminal";
  }
  return "?";
}

const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::BadHeadShape: return "bad-head-shape";
    case FailureReason::ReusedIndexedVariable: return "reused-indexed-variable";
    case FailureReason::FuelExhausted: return "fuel-exhausted";
    case FailureReason::TauNotNumeral: return "tau-not-numeral";
    case FailureReason::TauWrongValue: return "tau-wrong-value";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// The machine

namespace {

std::string show(const Term& t) { return print_term(t, {true}); }

std::string plural(std::size_t k, const char* what) {
  return std::to_string(k) + " " + what + (k == 1 ? "" : "s");
}

}  // namespace

Certificate certify(const Term& op, unsigned n, std::uint64_t fuel, CertifyMode mode) {
  if (!is_closed(op)) throw std::invalid_argument("certify: the operator is not closed");
  if (fuel == 0) throw std::invalid_argument("certify: fuel must be positive");

  Certificate c{.op = op, .n = n};
  auto fail = [&](FailureReason r, std::string detail) {
    c.failure = Failure{r, std::move(detail)};
    return c;
  };

  std::uint64_t remaining = fuel;
  Term u = Term::apply(op, {Term::var(kNu), Term::var(kF)});
  for (;;) {
    if (remaining == 0) return fail(FailureReason::FuelExhausted, "fuel spent after " + plural(c.steps.size(), "step"));
    auto r = head_reduce(u, remaining);
    if (r.status == ReductionStatus::FuelExhausted)
      return fail(FailureReason::FuelExhausted, "no head normal form for U" + std::to_string(c.steps.size() + 1));
    remaining -= std::min<std::uint64_t>(remaining, std::max<std::uint64_t>(1, r.steps));
    c.total_h += r.steps;
    const Term& v = r.result;

    auto lam = peel(v);
    if (!lam.binders.empty()) return fail(FailureReason::BadHeadShape, "head normal form " + show(v) + " is an abstraction");
    Spine sp = unwind(v);
    const std::string& head = sp.head.name();
    const auto& args = sp.args;

    if (head == kF) {
      if (args.size() != 1)
        return fail(FailureReason::BadHeadShape, "f applied to " + plural(args.size(), "argument"));
      c.steps.push_back({u, v, MachineRule::FHeadTerminal, r.steps});
      c.tau = args[0];
      break;
    }
    if (head == kNu) {
      if (args.size() < 2)
        return fail(FailureReason::BadHeadShape, "nu applied to " + plural(args.size(), "argument"));
      c.steps.push_back({u, v, MachineRule::NuHead, r.steps});
      std::vector<Term> rest(args.begin() + 2, args.end());
      if (n == 0) {
        u = Term::apply(args[0], rest);
      } else {
        const auto& x = c.registry.create(n - 1, args[0], args[1], rest);
        u = Term::apply(Term::app(args[1], Term::var(x.symbol)), rest);
      }
      continue;
    }
    IndexedVar* iv = c.registry.find(head);
    if (!iv) return fail(FailureReason::BadHeadShape, "head variable " + head + " is neither nu, f nor indexed");
    if (iv->used) return fail(FailureReason::ReusedIndexedVariable, head + " is in head position a second time");
    iv->used = true;
    if (iv->level >= n) c.flags.push_back(head + " has level " + std::to_string(iv->level) + " >= n");
    c.steps.push_back({u, v, MachineRule::IndexedHead, r.steps});
    unsigned level = iv->level;
    Term a = iv->a, b = iv->b;  // iv is invalidated by create
    if (level == 0) {
      u = Term::apply(a, args);
    } else {
      const auto& x = c.registry.create(level - 1, a, b, args);
      u = Term::apply(Term::app(b, Term::var(x.symbol)), args);
    }
  }

  auto nf = normalize(*c.tau, remaining);
  if (nf.status != ReductionStatus::NormalForm)
    return fail(FailureReason::FuelExhausted, "tau does not normalize within the remaining fuel");
  auto m = numeral_of(nf.result);
  if (!m) return fail(FailureReason::TauNotNumeral, "tau normalizes to " + show(nf.result));
  c.m = m;
  if (mode == CertifyMode::Exact && *m != n)
    return fail(FailureReason::TauWrongValue, "tau is " + std::to_string(*m) + ", expected " + std::to_string(n));
  return c;
}

RangeSummary certify_range(const Term& op, unsigned n_max, std::uint64_t fuel, CertifyMode mode) {
  RangeSummary s;
  for (unsigned n = 0; n <= n_max; ++n) {
    s.runs.push_back(certify(op, n, fuel, mode));
    if (!s.runs.back().ok() && !s.first_failure) s.first_failure = n;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Corpus

namespace {

Term iterate(const Term& fn, unsigned k, Term base) {
  for (unsigned i = 0; i < k; ++i) base = Term::app(fn, base);
  return base;
}

}  // namespace

std::vector<Term> theta_corpus(unsigned n, unsigned variant_count) {
  const Term s = builtin_term("succ");
  const Term id = parse_term("\\z z");
  const Term x = Term::var("x"), f = Term::var("f");

  std::vector<Term> fixed{church(n), iterate(s, n, church(0))};
  std::vector<Term> extra;
  for (unsigned k = 1; k < n; ++k) extra.push_back(iterate(s, k, church(n - k)));
  extra.push_back(Term::app(id, church(n)));
  extra.push_back(Term::app(id, iterate(s, n, church(0))));
  extra.push_back(Term::lambdas({"x", "f"}, iterate(f, n, Term::app(id, x))));
  extra.push_back(Term::lambdas({"x", "f"}, iterate(Term::app(id, f), n, x)));
  extra.push_back(Term::app(parse_term("\\m \\x \\f (m)x f"), church(n)));
  // λaλbλxλf ((a)((b)x)f)f
  const Term add = Term::lambdas(
      {"a", "b", "x", "f"},
      Term::apply(Term::var("a"), {Term::apply(Term::var("b"), {x, f}), f}));
  for (unsigned k = 0; k <= n; ++k) extra.push_back(Term::apply(add, {church(k), church(n - k)}));
  extra.push_back(Term::apply(builtin_term("T1"), {church(n), id}));

  std::mt19937 rng(0x5eed + n);
  for (std::size_t i = extra.size(); i > 1; --i) std::swap(extra[i - 1], extra[rng() % i]);

  std::vector<Term> out;
  auto offer = [&](const Term& t) {
    if (out.size() >= variant_count) return;
    for (const auto& o : out)
      if (alpha_equal(o, t)) return;
    if (beta_equiv(t, church(n)) == Tri::Yes) out.push_back(t);
  };
  for (const auto& t : fixed) offer(t);
  for (const auto& t : extra) offer(t);
  return out;
}

// ---------------------------------------------------------------------------
// Behavioral checks

namespace {

/// (f)t → t
std::optional<Term> f_argument(const Term& v) {
  if (!peel(v).binders.empty()) return std::nullopt;
  Spine sp = unwind(v);
  if (sp.head.name() != kF || sp.args.size() != 1) return std::nullopt;
  return sp.args[0];
}

}  // namespace

bool BehavioralReport::ok() const {
  return !entries.empty() && std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
}

BehavioralReport behavioral_check(const Term& op, const Certificate& cert, const std::vector<Term>& thetas,
                                  std::uint64_t fuel) {
  BehavioralReport rep;
  const auto holes = cert.registry.symbols();
  for (const auto& theta : thetas) {
    BehavioralEntry e{.theta = theta};
    e.theta_is_numeral = beta_equiv(theta, church(cert.n), fuel);
    auto r = head_reduce(Term::apply(op, {theta, Term::var(kF)}), fuel);
    if (r.status == ReductionStatus::FuelExhausted) {
      e.detail = "no head normal form within fuel";
    } else {
      e.hnf = r.result;
      auto t = f_argument(r.result);
      if (!t) {
        e.detail = "head normal form is not (f)t";
      } else if (!cert.tau) {
        e.detail = "the certificate has no tau";
      } else if (!(e.sigma = match_holes(*cert.tau, holes, *t))) {
        e.detail = "output is not an instance of tau";
      } else {
        auto nf = normalize(substitute(*cert.tau, *e.sigma), fuel);
        if (nf.status != ReductionStatus::NormalForm || !alpha_equal(nf.result, church(cert.n)))
          e.detail = "sigma(tau) does not normalize to church(" + std::to_string(cert.n) + ")";
        else if (e.theta_is_numeral != Tri::Yes)
          e.detail = std::string("theta is not beta-equal to church(n): ") + to_string(e.theta_is_numeral);
        else
          e.ok = true;
      }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Anti-unification

namespace {

struct AntiUnifier {
  std::set<std::string> avoid;
  std::map<std::string, std::string> by_key;
  std::vector<std::string> holes;

  std::string hole_for(const std::vector<Term>& ts) {
    std::string key;
    for (const auto& t : ts) key += print_term(t) + '\x1f';
    auto it = by_key.find(key);
    if (it != by_key.end()) return it->second;
    std::string name;
    for (std::size_t i = holes.size();; ++i) {
      name = "h" + std::to_string(i);
      if (!avoid.count(name) && !by_key.count(name)) break;
    }
    avoid.insert(name);
    holes.push_back(name);
    by_key.emplace(key, name);
    return name;
  }

  std::optional<Term> go(const std::vector<Term>& ts, std::vector<std::string>& bound) {
    if (std::all_of(ts.begin(), ts.end(), [&](const Term& t) { return alpha_equal(t, ts[0]); })) return ts[0];
    auto kind = ts[0].kind();
    bool same_kind = std::all_of(ts.begin(), ts.end(), [&](const Term& t) { return t.kind() == kind; });
    if (same_kind && kind == Term::Kind::Abs &&
        std::all_of(ts.begin(), ts.end(), [&](const Term& t) { return t.name() == ts[0].name(); })) {
      std::vector<Term> bodies;
      for (const auto& t : ts) bodies.push_back(t.body());
      bound.push_back(ts[0].name());
      auto body = go(bodies, bound);
      bound.pop_back();
      if (body) return Term::abs(ts[0].name(), *body);
    } else if (same_kind && kind == Term::Kind::App) {
      std::vector<Term> fns, args;
      for (const auto& t : ts) {
        fns.push_back(t.fn());
        args.push_back(t.arg());
      }
      auto fn = go(fns, bound);
      auto arg = fn ? go(args, bound) : std::nullopt;
      if (fn && arg) return Term::app(*fn, *arg);
    }
    for (const auto& t : ts)
      for (const auto& b : bound)
        if (occurs_free(t, b)) return std::nullopt;
    return Term::var(hole_for(ts));
  }
};

}  // namespace

Generalization anti_unify(const std::vector<Term>& terms) {
  if (terms.empty()) throw std::invalid_argument("anti_unify: no terms");
  AntiUnifier au;
  std::vector<Term> ts;
  for (const auto& t : terms) {
    ts.push_back(alpha_normalize(t));
    for (const auto& n : all_names(ts.back())) au.avoid.insert(n);
  }
  std::vector<std::string> bound;
  Term pattern = *au.go(ts, bound);
  return {pattern, au.holes};
}

bool PairReport::ok() const {
  return !entries.empty() && std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
}

PairReport pair_behavioral(const Term& op, const std::vector<PairSample>& samples, std::uint64_t fuel) {
  for (const auto& s : samples) {
    if (s.variants.empty()) throw std::invalid_argument("pair_behavioral: a sample has no variants");
    for (const auto& v : s.variants)
      if (beta_equiv(v, s.t, fuel) != Tri::Yes)
        throw std::invalid_argument("pair_behavioral: variant " + show(v) + " is not beta-equal to its sample");
  }

  PairReport rep;
  for (const auto& s : samples) {
    PairEntry e{.t = s.t};
    std::vector<Term> outputs;
    for (const auto& v : s.variants) {
      auto r = head_reduce(Term::apply(op, {v, Term::var(kF)}), fuel);
      auto u = r.status == ReductionStatus::FuelExhausted ? std::nullopt : f_argument(r.result);
      if (!u) {
        e.detail = "(T)" + show(v) + " f has no head normal form (f)u";
        break;
      }
      outputs.push_back(alpha_normalize(*u));
    }
    if (outputs.size() == s.variants.size()) {
      auto g = anti_unify(outputs);
      e.pattern = g.pattern;
      e.holes = g.holes;
      std::set<std::string> holes(g.holes.begin(), g.holes.end());
      for (const auto& u : outputs) e.sigmas.push_back(match_holes(g.pattern, holes, u));
      auto nf = normalize(g.pattern, fuel);
      bool leaks = nf.status == ReductionStatus::NormalForm &&
                   std::any_of(g.holes.begin(), g.holes.end(), [&](const auto& h) { return occurs_free(nf.result, h); });
      if (nf.status != ReductionStatus::NormalForm) {
        e.detail = "the generalized output does not normalize within fuel";
      } else if (leaks || !is_closed(nf.result)) {
        e.detail = "the generalized output keeps a hole: the operator passes its argument unevaluated";
      } else {
        e.tau = nf.result;
        e.tau_matches_t = beta_equiv(*e.tau, s.t, fuel);
        bool matched = std::all_of(e.sigmas.begin(), e.sigmas.end(), [](const auto& m) { return m.has_value(); });
        if (e.tau_matches_t != Tri::Yes)
          e.detail = "tau is not beta-equal to the sample";
        else if (!matched)
          e.detail = "an output is not an instance of the pattern";
        else
          e.ok = true;
      }
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "operator " << show(c.op) << "\n";
  out << "n " << c.n << "\n";
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    out << "step " << i + 1 << " " << to_string(s.rule) << " h=" << s.h << "\n";
    out << "  U " << show(s.u) << "\n";
    out << "  V " << show(s.v) << "\n";
  }
  out << "tau " << (c.tau ? show(*c.tau) : "-") << "\n";
  out << "m " << (c.m ? std::to_string(*c.m) : "-") << "\n";
  out << "total_h " << c.total_h << "\n";
  for (const auto& f : c.flags) out << "flag " << f << "\n";
  if (c.failure)
    out << "status fail " << to_string(c.failure->reason) << ": " << c.failure->detail << "\n";
  else
    out << "status ok\n";
  out << "registry " << c.registry.entries().size() << "\n";
  for (const auto& e : c.registry.entries()) {
    out << "  " << e.symbol << " level=" << e.level << " used=" << (e.used ? "yes" : "no") << "\n";
    out << "    a " << show(e.a) << "\n";
    out << "    b " << show(e.b) << "\n";
    out << "    args";
    if (e.args.empty()) out << " -";
    for (std::size_t i = 0; i < e.args.size(); ++i) out << (i ? " ; " : " ") << show(e.args[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace storop
