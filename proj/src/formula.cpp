#include "storop/formula.hpp"

#include <algorithm>
#include <cctype>

namespace storop {

// ---------------------------------------------------------------------------
// First-order terms

FoTerm FoTerm::succ_n(unsigned n, FoTerm t) {
  for (unsigned i = 0; i < n; ++i) t = succ(std::move(t));
  return t;
}

std::string print_fo(const FoTerm& t) {
  if (t.args.empty()) return t.name;
  std::string out = t.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ",";
    out += print_fo(t.args[i]);
  }
  return out + ")";
}

namespace {

void collect_fo_vars(const FoTerm& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name);
    return;
  }
  for (const auto& a : t.args) collect_fo_vars(a, out);
}

std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  for (std::size_t i = 1;; ++i) {
    auto c = stem + std::to_string(i);
    if (!avoid.count(c)) return c;
  }
}

}  // namespace

std::set<std::string> fo_vars(const FoTerm& t) {
  std::set<std::string> out;
  collect_fo_vars(t, out);
  return out;
}

FoTerm subst_fo_term(const FoTerm& t, const FoBindings& sigma) {
  if (t.is_var()) {
    auto it = sigma.find(t.name);
    return it == sigma.end() ? t : it->second;
  }
  FoTerm out = t;
  for (auto& a : out.args) a = subst_fo_term(a, sigma);
  return out;
}

// ---------------------------------------------------------------------------
// Formula nodes

Formula Formula::bot() { return Formula(std::make_shared<const Node>(Node{Kind::Bot, "", {}, {}, {}})); }

Formula Formula::pred_var(std::string name, std::vector<FoTerm> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::PredVar, std::move(name), std::move(args), {}, {}}));
}

Formula Formula::bot_var(std::string name, std::vector<FoTerm> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::BotVar, std::move(name), std::move(args), {}, {}}));
}

Formula Formula::pred_sym(std::string name, std::vector<FoTerm> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::PredSym, std::move(name), std::move(args), {}, {}}));
}

Formula Formula::so_atom(const SoVar& v, std::vector<FoTerm> args) {
  return v.kind == SoKind::Pred ? pred_var(v.name, std::move(args)) : bot_var(v.name, std::move(args));
}

Formula Formula::arrow(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Arrow, "", {}, std::move(a), std::move(b)}));
}

Formula Formula::arrows(const std::vector<Formula>& hyps, Formula concl) {
  for (auto it = hyps.rbegin(); it != hyps.rend(); ++it) concl = arrow(*it, std::move(concl));
  return concl;
}

Formula Formula::forall_fo(std::string x, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::ForallFo, std::move(x), {}, std::move(body), {}}));
}

Formula Formula::forall_pred(std::string x, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::ForallPred, std::move(x), {}, std::move(body), {}}));
}

Formula Formula::forall_bot(std::string x, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::ForallBot, std::move(x), {}, std::move(body), {}}));
}

Formula Formula::forall_so(const SoVar& v, Formula body) {
  return v.kind == SoKind::Pred ? forall_pred(v.name, std::move(body)) : forall_bot(v.name, std::move(body));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
  auto k = kind();
  return k == Kind::PredVar || k == Kind::BotVar || k == Kind::PredSym;
}

bool Formula::is_forall() const {
  auto k = kind();
  return k == Kind::ForallFo || k == Kind::ForallPred || k == Kind::ForallBot;
}

const std::string& Formula::name() const { return node_->name; }
const std::vector<FoTerm>& Formula::args() const { return node_->args; }
const Formula& Formula::left() const { return node_->a; }
const Formula& Formula::right() const { return node_->b; }
const Formula& Formula::body() const { return node_->a; }

SoVar Formula::so_var() const {
  auto k = kind();
  bool bot = k == Kind::BotVar || k == Kind::ForallBot;
  return SoVar{name(), bot ? SoKind::Bot : SoKind::Pred};
}

// ---------------------------------------------------------------------------
// Free variables and α-equivalence

namespace {

void collect_free_fo(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Bot: return;
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar:
    case Formula::Kind::PredSym:
      for (const auto& a : f.args())
        for (const auto& v : fo_vars(a))
          if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
      return;
    case Formula::Kind::Arrow:
      collect_free_fo(f.left(), bound, out);
      collect_free_fo(f.right(), bound, out);
      return;
    case Formula::Kind::ForallFo:
      bound.push_back(f.name());
      collect_free_fo(f.body(), bound, out);
      bound.pop_back();
      return;
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot:
      collect_free_fo(f.body(), bound, out);
      return;
  }
}

void collect_free_so(const Formula& f, std::vector<SoVar>& bound, std::set<SoVar>& out) {
  switch (f.kind()) {
    case Formula::Kind::Bot:
    case Formula::Kind::PredSym: return;
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar: {
      auto v = f.so_var();
      if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
      return;
    }
    case Formula::Kind::Arrow:
      collect_free_so(f.left(), bound, out);
      collect_free_so(f.right(), bound, out);
      return;
    case Formula::Kind::ForallFo:
      collect_free_so(f.body(), bound, out);
      return;
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot:
      bound.push_back(f.so_var());
      collect_free_so(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

template <class T>
long depth_of(const std::vector<T>& stack, const T& v) {
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i] == v) return static_cast<long>(i);
  return -1;
}

struct AlphaEnv {
  std::vector<std::string> fa, fb;
  std::vector<SoVar> sa, sb;
};

bool fo_alpha(const FoTerm& a, const FoTerm& b, const AlphaEnv& env) {
  if (a.kind != b.kind) return false;
  if (a.is_var()) {
    long ia = depth_of(env.fa, a.name), ib = depth_of(env.fb, b.name);
    if (ia < 0 && ib < 0) return a.name == b.name;
    return ia == ib;
  }
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!fo_alpha(a.args[i], b.args[i], env)) return false;
  return true;
}

bool formula_alpha(const Formula& a, const Formula& b, AlphaEnv& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Bot: return true;
    case Formula::Kind::PredSym:
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar: {
      if (a.args().size() != b.args().size()) return false;
      if (a.kind() == Formula::Kind::PredSym) {
        if (a.name() != b.name()) return false;
      } else {
        long ia = depth_of(env.sa, a.so_var()), ib = depth_of(env.sb, b.so_var());
        if (ia < 0 && ib < 0) {
          if (a.name() != b.name()) return false;
        } else if (ia != ib) {
          return false;
        }
      }
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!fo_alpha(a.args()[i], b.args()[i], env)) return false;
      return true;
    }
    case Formula::Kind::Arrow:
      return formula_alpha(a.left(), b.left(), env) && formula_alpha(a.right(), b.right(), env);
    case Formula::Kind::ForallFo: {
      env.fa.push_back(a.name());
      env.fb.push_back(b.name());
      bool r = formula_alpha(a.body(), b.body(), env);
      env.fa.pop_back();
      env.fb.pop_back();
      return r;
    }
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot: {
      env.sa.push_back(a.so_var());
      env.sb.push_back(b.so_var());
      bool r = formula_alpha(a.body(), b.body(), env);
      env.sa.pop_back();
      env.sb.pop_back();
      return r;
    }
  }
  return false;
}

void collect_arity(const Formula& f, const SoVar& v, std::optional<std::size_t>& out) {
  switch (f.kind()) {
    case Formula::Kind::Bot:
    case Formula::Kind::PredSym: return;
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar:
      if (f.so_var() == v) {
        if (out && *out != f.args().size())
          throw FormulaError("inconsistent arity for " + v.name);
        out = f.args().size();
      }
      return;
    case Formula::Kind::Arrow:
      collect_arity(f.left(), v, out);
      collect_arity(f.right(), v, out);
      return;
    case Formula::Kind::ForallFo:
      collect_arity(f.body(), v, out);
      return;
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot:
      if (f.so_var() == v) return;
      collect_arity(f.body(), v, out);
      return;
  }
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  AlphaEnv env;
  return formula_alpha(a, b, env);
}

std::set<std::string> free_fo_vars(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free_fo(f, bound, out);
  return out;
}

std::set<SoVar> free_so_vars(const Formula& f) {
  std::set<SoVar> out;
  std::vector<SoVar> bound;
  collect_free_so(f, bound, out);
  return out;
}

bool has_bot_vars(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::BotVar:
    case Formula::Kind::ForallBot: return true;
    case Formula::Kind::Arrow: return has_bot_vars(f.left()) || has_bot_vars(f.right());
    case Formula::Kind::ForallFo:
    case Formula::Kind::ForallPred: return has_bot_vars(f.body());
    default: return false;
  }
}

std::optional<std::size_t> so_arity(const Formula& f, const SoVar& v) {
  std::optional<std::size_t> out;
  collect_arity(f, v, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

std::set<std::string> bound_fo_names(const Formula& f) {
  std::set<std::string> out;
  switch (f.kind()) {
    case Formula::Kind::Arrow: {
      auto l = bound_fo_names(f.left());
      auto r = bound_fo_names(f.right());
      out.insert(l.begin(), l.end());
      out.insert(r.begin(), r.end());
      break;
    }
    case Formula::Kind::ForallFo:
      out = bound_fo_names(f.body());
      out.insert(f.name());
      break;
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot: out = bound_fo_names(f.body()); break;
    default: break;
  }
  return out;
}

}  // namespace

Formula subst_fo(const Formula& f, const FoBindings& sigma) {
  if (sigma.empty()) return f;
  switch (f.kind()) {
    case Formula::Kind::Bot: return f;
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar:
    case Formula::Kind::PredSym: {
      std::vector<FoTerm> args;
      for (const auto& a : f.args()) args.push_back(subst_fo_term(a, sigma));
      if (f.kind() == Formula::Kind::PredSym) return Formula::pred_sym(f.name(), std::move(args));
      return Formula::so_atom(f.so_var(), std::move(args));
    }
    case Formula::Kind::Arrow: return Formula::arrow(subst_fo(f.left(), sigma), subst_fo(f.right(), sigma));
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot: return Formula::forall_so(f.so_var(), subst_fo(f.body(), sigma));
    case Formula::Kind::ForallFo: break;
  }
  const std::string& y = f.name();
  auto body_free = free_fo_vars(f.body());
  FoBindings inner;
  for (const auto& [k, v] : sigma)
    if (k != y && body_free.count(k)) inner.emplace(k, v);
  if (inner.empty()) return f;
  bool capture = false;
  std::set<std::string> avoid = body_free;
  for (const auto& [k, v] : inner) {
    auto vs = fo_vars(v);
    if (vs.count(y)) capture = true;
    avoid.insert(vs.begin(), vs.end());
    avoid.insert(k);
  }
  if (!capture) return Formula::forall_fo(y, subst_fo(f.body(), inner));
  std::string renamed = fresh(y, avoid);
  inner.emplace(y, FoTerm::var(renamed));
  return Formula::forall_fo(renamed, subst_fo(f.body(), inner));
}

Formula subst_fo(const Formula& f, const std::string& x, const FoTerm& u) { return subst_fo(f, FoBindings{{x, u}}); }

namespace {

struct PredSubst {
  SoVar target;
  const PredAbstraction& g;
  std::set<std::string> g_fo_free;  // free first-order variables of λparams.body
  std::set<SoVar> g_so_free;

  Formula run(const Formula& f) const {
    switch (f.kind()) {
      case Formula::Kind::Bot:
      case Formula::Kind::PredSym: return f;
      case Formula::Kind::PredVar:
      case Formula::Kind::BotVar: {
        if (f.so_var() != target) return f;
        if (f.args().size() != g.params.size())
          throw FormulaError("arity mismatch instantiating " + target.name + ": expected " +
                             std::to_string(f.args().size()) + " parameters, witness has " +
                             std::to_string(g.params.size()));
        FoBindings sigma;
        for (std::size_t i = 0; i < g.params.size(); ++i) sigma.emplace(g.params[i], f.args()[i]);
        return subst_fo(g.body, sigma);
      }
      case Formula::Kind::Arrow: return Formula::arrow(run(f.left()), run(f.right()));
      case Formula::Kind::ForallFo: {
        if (!g_fo_free.count(f.name())) return Formula::forall_fo(f.name(), run(f.body()));
        std::set<std::string> avoid = free_fo_vars(f.body());
        avoid.insert(g_fo_free.begin(), g_fo_free.end());
        auto names = bound_fo_names(f.body());
        avoid.insert(names.begin(), names.end());
        std::string renamed = fresh(f.name(), avoid);
        Formula body = subst_fo(f.body(), f.name(), FoTerm::var(renamed));
        return Formula::forall_fo(renamed, run(body));
      }
      case Formula::Kind::ForallPred:
      case Formula::Kind::ForallBot: {
        SoVar v = f.so_var();
        if (v == target) return f;
        if (!g_so_free.count(v)) return Formula::forall_so(v, run(f.body()));
        std::set<std::string> avoid;
        for (const auto& s : free_so_vars(f.body())) avoid.insert(s.name);
        for (const auto& s : g_so_free) avoid.insert(s.name);
        avoid.insert(target.name);
        SoVar renamed{fresh(v.name, avoid), v.kind};
        auto arity = so_arity(f.body(), v);
        std::vector<std::string> params;
        for (std::size_t i = 0; i < arity.value_or(0); ++i) params.push_back("p" + std::to_string(i));
        std::vector<FoTerm> pargs;
        for (const auto& p : params) pargs.push_back(FoTerm::var(p));
        PredAbstraction rename{params, Formula::so_atom(renamed, pargs)};
        Formula body = subst_pred(f.body(), v, rename);
        return Formula::forall_so(renamed, run(body));
      }
    }
    return f;
  }
};

}  // namespace

Formula subst_pred(const Formula& f, const SoVar& x, const PredAbstraction& g) {
  auto arity = so_arity(f, x);
  if (arity && *arity != g.params.size())
    throw FormulaError("arity mismatch instantiating " + x.name + ": variable has arity " + std::to_string(*arity) +
                       ", witness has " + std::to_string(g.params.size()) + " parameters");
  std::set<std::string> fo_free = free_fo_vars(g.body);
  for (const auto& p : g.params) fo_free.erase(p);
  PredSubst s{x, g, std::move(fo_free), free_so_vars(g.body)};
  return s.run(f);
}

// ---------------------------------------------------------------------------
// Integer types

Formula nat(const FoTerm& t) {
  static const Formula tmpl = [] {
    auto X = [](FoTerm a) { return Formula::pred_var("X", {std::move(a)}); };
    Formula step =
        Formula::forall_fo("y", Formula::arrow(X(FoTerm::var("y")), X(FoTerm::succ(FoTerm::var("y")))));
    return Formula::forall_pred("X", Formula::arrows({X(FoTerm::zero()), step}, X(FoTerm::var("x"))));
  }();
  return subst_fo(tmpl, "x", t);
}

Formula nat_prop() { return forget_first_order(nat(FoTerm::var("x"))); }
Formula nat_star(const FoTerm& t) { return godel_star(nat(t)); }
Formula nat_bot(const FoTerm& t) { return bot_transform(nat(t)); }
Formula nat_bot_prop() { return forget_first_order(nat_bot(FoTerm::var("x"))); }

// ---------------------------------------------------------------------------
// Classifications and translations

bool is_bot_type(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Bot:
    case Formula::Kind::BotVar: return true;
    case Formula::Kind::Arrow: return is_bot_type(f.right());
    case Formula::Kind::ForallFo:
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot: return is_bot_type(f.body());
    default: return false;
  }
}

Formula godel_star(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Bot: return f;
    case Formula::Kind::PredVar:
    case Formula::Kind::PredSym: return Formula::neg(f);
    case Formula::Kind::BotVar:
    case Formula::Kind::ForallBot: throw FormulaError("Gödel translation is undefined on ⊥-variables");
    case Formula::Kind::Arrow: return Formula::arrow(godel_star(f.left()), godel_star(f.right()));
    case Formula::Kind::ForallFo: return Formula::forall_fo(f.name(), godel_star(f.body()));
    case Formula::Kind::ForallPred: return Formula::forall_pred(f.name(), godel_star(f.body()));
  }
  return f;
}

namespace {

Formula bot_transform_rec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Bot:
    case Formula::Kind::PredSym: return f;
    case Formula::Kind::PredVar: return Formula::bot_var(f.name(), f.args());
    case Formula::Kind::Arrow: return Formula::arrow(bot_transform_rec(f.left()), bot_transform_rec(f.right()));
    case Formula::Kind::ForallFo: return Formula::forall_fo(f.name(), bot_transform_rec(f.body()));
    case Formula::Kind::ForallPred: return Formula::forall_bot(f.name(), bot_transform_rec(f.body()));
    default: throw FormulaError("⊥-transformation is undefined on ⊥-variables");
  }
}

}  // namespace

Formula bot_transform(const Formula& f) {
  if (has_bot_vars(f)) throw FormulaError("⊥-transformation is undefined on ⊥-variables");
  return bot_transform_rec(f);
}

Formula forget_first_order(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Bot: return f;
    case Formula::Kind::PredVar: return Formula::pred_var(f.name());
    case Formula::Kind::BotVar: return Formula::bot_var(f.name());
    case Formula::Kind::PredSym: return Formula::pred_sym(f.name());
    case Formula::Kind::Arrow: return Formula::arrow(forget_first_order(f.left()), forget_first_order(f.right()));
    case Formula::Kind::ForallFo: return forget_first_order(f.body());
    case Formula::Kind::ForallPred: return Formula::forall_pred(f.name(), forget_first_order(f.body()));
    case Formula::Kind::ForallBot: return Formula::forall_bot(f.name(), forget_first_order(f.body()));
  }
  return f;
}

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Both: return "both";
    case Polarity::Neither: return "neither";
  }
  return "?";
}

namespace {

std::pair<bool, bool> pol(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Bot:
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar:
    case Formula::Kind::PredSym: return {true, true};
    case Formula::Kind::Arrow: {
      auto [lp, ln] = pol(f.left());
      auto [rp, rn] = pol(f.right());
      return {ln && rp, lp && rn};
    }
    case Formula::Kind::ForallFo: return pol(f.body());
    case Formula::Kind::ForallPred:
    case Formula::Kind::ForallBot: {
      auto [p, n] = pol(f.body());
      bool occurs = free_so_vars(f.body()).count(f.so_var()) > 0;
      return {p, n && !occurs};
    }
  }
  return {false, false};
}

}  // namespace

Polarity polarity(const Formula& f) {
  auto [p, n] = pol(f);
  if (p && n) return Polarity::Both;
  if (p) return Polarity::Positive;
  if (n) return Polarity::Negative;
  return Polarity::Neither;
}

// ---------------------------------------------------------------------------
// ⊴ chains

Formula instantiate(const Formula& f, const Witness& w) {
  switch (f.kind()) {
    case Formula::Kind::ForallFo:
      if (!std::holds_alternative<FoTerm>(w))
        throw FormulaError("quantifier-kind mismatch: ∀" + f.name() + " needs a first-order term");
      return subst_fo(f.body(), f.name(), std::get<FoTerm>(w));
    case Formula::Kind::ForallPred:
      if (!std::holds_alternative<PredAbstraction>(w))
        throw FormulaError("quantifier-kind mismatch: ∀" + f.name() + " needs a formula");
      return subst_pred(f.body(), f.so_var(), std::get<PredAbstraction>(w));
    case Formula::Kind::ForallBot: {
      if (!std::holds_alternative<PredAbstraction>(w))
        throw FormulaError("quantifier-kind mismatch: ∀" + f.name() + "⊥ needs a formula");
      const auto& g = std::get<PredAbstraction>(w);
      if (!is_bot_type(g.body)) throw FormulaError("witness for ⊥-variable " + f.name() + " is not a ⊥-type");
      return subst_pred(f.body(), f.so_var(), g);
    }
    default: throw FormulaError("quantifier-kind mismatch: formula is not universally quantified");
  }
}

Formula instantiate_chain(const Formula& f, const std::vector<Witness>& witnesses) {
  Formula cur = f;
  for (const auto& w : witnesses) cur = instantiate(cur, w);
  return cur;
}

std::vector<Formula> decompose_applied(const Formula& f, std::size_t arity,
                                       const std::vector<std::vector<Witness>>& chains) {
  if (!is_bot_type(f)) throw FormulaError("decomposition requires a ⊥-type");
  if (chains.size() != arity + 1)
    throw FormulaError("expected " + std::to_string(arity + 1) + " witness chains, got " +
                       std::to_string(chains.size()));
  std::vector<Formula> out;
  Formula cur = f;
  for (std::size_t i = 0; i < arity; ++i) {
    Formula g = instantiate_chain(cur, chains[i]);
    if (!g.is_arrow()) throw FormulaError("chain mismatch: step " + std::to_string(i + 1) + " is not an arrow");
    out.push_back(g.left());
    cur = g.right();
  }
  if (!instantiate_chain(cur, chains[arity]).is_bot()) throw FormulaError("final formula is not ⊥");
  return out;
}

}  // namespace storop
