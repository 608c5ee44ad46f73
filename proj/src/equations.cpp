#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

#include "storop/formula.hpp"
#include "storop/term.hpp"

namespace storop {

void EquationSet::add(std::string name, Equation eq) {
  if (find(name)) throw FormulaError("duplicate equation name: " + name);
  eqs_.emplace_back(std::move(name), std::move(eq));
}

const Equation* EquationSet::find(const std::string& name) const {
  for (const auto& [n, e] : eqs_)
    if (n == name) return &e;
  return nullptr;
}

EquationSet parse_equations(std::string_view text) {
  EquationSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto colon = line.find(':');
    auto eq = line.find('=');
    if (colon == std::string::npos || eq == std::string::npos || eq < colon)
      throw ParseError("expected 'name: lhs = rhs'", lineno, 1);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string name = trim(line.substr(0, colon));
    if (name.empty()) throw ParseError("missing equation name", lineno, 1);
    try {
      Signature sig;
      Formula lhs_holder = parse_formula("P(" + trim(line.substr(colon + 1, eq - colon - 1)) + ")", sig);
      Formula rhs_holder = parse_formula("P(" + trim(line.substr(eq + 1)) + ")", sig);
      out.add(name, Equation{lhs_holder.args().at(0), rhs_holder.args().at(0)});
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad equation term: ") + e.what(), lineno, 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

FoTerm rewrite_term(const FoTerm& t, const Position& pos, std::size_t i, const FoTerm& from, const FoTerm& to) {
  if (i == pos.size()) {
    if (!(t == from))
      throw FormulaError("subterm " + print_fo(t) + " does not match the equation instance " + print_fo(from));
    return to;
  }
  if (t.is_var() || pos[i] >= t.args.size()) throw FormulaError("position does not address a subterm");
  FoTerm out = t;
  out.args[pos[i]] = rewrite_term(t.args[pos[i]], pos, i + 1, from, to);
  return out;
}

Formula rewrite(const Formula& f, const Position& pos, std::size_t i, const FoTerm& from, const FoTerm& to,
                std::vector<std::string>& bound) {
  if (i >= pos.size()) throw FormulaError("position ends at a formula, not a first-order term");
  std::size_t k = pos[i];
  switch (f.kind()) {
    case Formula::Kind::Bot: throw FormulaError("position does not address a subterm");
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar:
    case Formula::Kind::PredSym: {
      if (k >= f.args().size()) throw FormulaError("position does not address a subterm");
      for (const auto* side : {&from, &to})
        for (const auto& v : fo_vars(*side))
          if (std::find(bound.begin(), bound.end(), v) != bound.end())
            throw FormulaError("equation instance mentions " + v + ", which is bound at that position");
      auto args = f.args();
      args[k] = rewrite_term(args[k], pos, i + 1, from, to);
      if (f.kind() == Formula::Kind::PredSym) return Formula::pred_sym(f.name(), std::move(args));
      return Formula::so_atom(f.so_var(), std::move(args));
    }
    case Formula::Kind::Arrow:
      if (k == 0) return Formula::arrow(rewrite(f.left(), pos, i + 1, from, to, bound), f.right());
      if (k == 1) return Formula::arrow(f.left(), rewrite(f.right(), pos, i + 1, from, to, bound));
      throw FormulaError("position does not address a subterm");
    case Formula::Kind::ForallFo: {
      if (k != 0) throw FormulaError("position does not address a subterm");
      bound.push_back(f.name());
      Formula b = rewrite(f.body(), pos, i + 1, from, to, bound);
      bound.pop_back();
      return Formula::forall_fo(f.name(), b);
    }
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot:
      if (k != 0) throw FormulaError("position does not address a subterm");
      return Formula::forall_so(f.so_var(), rewrite(f.body(), pos, i + 1, from, to, bound));
  }
  throw FormulaError("position does not address a subterm");
}

}  // namespace

Formula eq_step(const Formula& f, const Equation& eq, const FoBindings& instance, const Position& position,
                Direction direction) {
  FoTerm l = subst_fo_term(eq.lhs, instance);
  FoTerm r = subst_fo_term(eq.rhs, instance);
  if (direction == Direction::RightToLeft) std::swap(l, r);
  std::vector<std::string> bound;
  return rewrite(f, position, 0, l, r, bound);
}

Formula eq_step(const Formula& f, const EquationSet& eqs, const EqStep& step) {
  const Equation* eq = eqs.find(step.equation);
  if (!eq) throw FormulaError("unknown equation: " + step.equation);
  return eq_step(f, *eq, step.instance, step.position, step.direction);
}

Formula eq_chain(const Formula& f, const EquationSet& eqs, const std::vector<EqStep>& steps) {
  Formula cur = f;
  for (const auto& s : steps) cur = eq_step(cur, eqs, s);
  return cur;
}

// ---------------------------------------------------------------------------
// Adequacy lint

namespace {

struct GroundTerm {
  std::string fn;
  std::vector<std::size_t> args;
  bool operator<(const GroundTerm& o) const { return std::tie(fn, args) < std::tie(o.fn, o.args); }
};

void collect_symbols(const FoTerm& t, std::map<std::string, std::size_t>& out) {
  if (t.is_var()) return;
  out.emplace(t.name, t.args.size());
  for (const auto& a : t.args) collect_symbols(a, out);
}

class Universe {
 public:
  std::vector<GroundTerm> terms;
  std::map<GroundTerm, std::size_t> index;

  std::optional<std::size_t> lookup(const FoTerm& t) const {
    if (t.is_var()) return std::nullopt;
    GroundTerm g{t.name, {}};
    for (const auto& a : t.args) {
      auto i = lookup(a);
      if (!i) return std::nullopt;
      g.args.push_back(*i);
    }
    auto it = index.find(g);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  FoTerm to_fo(std::size_t i) const {
    FoTerm out = FoTerm::fn(terms[i].fn);
    for (auto a : terms[i].args) out.args.push_back(to_fo(a));
    return out;
  }

  void add(GroundTerm g) {
    if (index.count(g)) return;
    index.emplace(g, terms.size());
    terms.push_back(std::move(g));
  }
};

constexpr std::size_t kMaxUniverse = 4000;
constexpr std::size_t kMaxInstances = 200000;

void product(const std::vector<std::size_t>& pool, std::size_t arity, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (out.size() >= kMaxUniverse) return;
  if (cur.size() == arity) {
    out.push_back(cur);
    return;
  }
  for (auto p : pool) {
    cur.push_back(p);
    product(pool, arity, cur, out);
    cur.pop_back();
  }
}

}  // namespace

AdequacyReport lint_adequacy(const EquationSet& eqs, unsigned depth) {
  std::map<std::string, std::size_t> symbols{{"0", 0}, {"s", 1}};
  for (const auto& [n, e] : eqs.entries()) {
    collect_symbols(e.lhs, symbols);
    collect_symbols(e.rhs, symbols);
  }

  Universe u;
  for (const auto& [f, a] : symbols)
    if (a == 0) u.add({f, {}});
  for (unsigned d = 1; d <= depth && u.terms.size() < kMaxUniverse; ++d) {
    std::vector<std::size_t> pool(u.terms.size());
    std::iota(pool.begin(), pool.end(), 0);
    for (const auto& [f, a] : symbols) {
      if (a == 0) continue;
      std::vector<std::vector<std::size_t>> tuples;
      std::vector<std::size_t> cur;
      product(pool, a, cur, tuples);
      for (auto& t : tuples) {
        if (u.terms.size() >= kMaxUniverse) break;
        u.add({f, std::move(t)});
      }
    }
  }

  std::vector<std::size_t> parent(u.terms.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  };

  // every instance of every equation whose two sides land in the universe
  std::size_t instances = 0;
  for (const auto& [n, e] : eqs.entries()) {
    std::set<std::string> vars = fo_vars(e.lhs);
    auto rv = fo_vars(e.rhs);
    vars.insert(rv.begin(), rv.end());
    std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<std::size_t> pool(u.terms.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::size_t> choice(names.size(), 0);
    while (instances < kMaxInstances) {
      ++instances;
      FoBindings sigma;
      for (std::size_t i = 0; i < names.size(); ++i) sigma.emplace(names[i], u.to_fo(choice[i]));
      auto l = u.lookup(subst_fo_term(e.lhs, sigma));
      auto r = u.lookup(subst_fo_term(e.rhs, sigma));
      if (l && r) unite(*l, *r);
      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == pool.size()) choice[i++] = 0;
      if (i == choice.size()) break;
    }
  }

  // congruence closure
  for (bool changed = true; changed;) {
    changed = false;
    std::map<GroundTerm, std::size_t> sig;
    for (std::size_t i = 0; i < u.terms.size(); ++i) {
      GroundTerm key{u.terms[i].fn, {}};
      for (auto a : u.terms[i].args) key.args.push_back(find(a));
      auto [it, fresh] = sig.emplace(key, i);
      if (!fresh && unite(it->second, i)) changed = true;
    }
  }

  AdequacyReport report;
  report.universe = u.terms.size();
  std::size_t zero = *u.lookup(FoTerm::zero());
  std::vector<std::pair<std::size_t, std::size_t>> succs;  // (s(a), a)
  for (std::size_t i = 0; i < u.terms.size(); ++i)
    if (u.terms[i].fn == "s" && u.terms[i].args.size() == 1) succs.emplace_back(i, u.terms[i].args[0]);
  for (auto [sa, a] : succs) {
    if (find(sa) == find(zero)) {
      report.refuted = true;
      report.witness = print_fo(u.to_fo(sa)) + " = 0";
      return report;
    }
  }
  for (std::size_t i = 0; i < succs.size(); ++i)
    for (std::size_t j = i + 1; j < succs.size(); ++j)
      if (find(succs[i].first) == find(succs[j].first) && find(succs[i].second) != find(succs[j].second)) {
        report.refuted = true;
        report.witness = print_fo(u.to_fo(succs[i].first)) + " = " + print_fo(u.to_fo(succs[j].first)) + " but " +
                         print_fo(u.to_fo(succs[i].second)) + " != " + print_fo(u.to_fo(succs[j].second));
        return report;
      }
  return report;
}

}  // namespace storop
