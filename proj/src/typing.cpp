#include "storop/typing.hpp"

#include <algorithm>
#include <stdexcept>

#include "storop/reduce.hpp"

namespace storop {

const Formula* lookup(const Context& ctx, const std::string& name) {
  for (const auto& e : ctx)
    if (e.name == name) return &e.type;
  return nullptr;
}

namespace {

constexpr std::pair<Rule, const char*> kRuleNames[] = {
    {Rule::Ax, "ax"},           {Rule::Abs, "abs"},         {Rule::App, "app"},
    {Rule::GenFo, "gen-fo"},    {Rule::InstFo, "inst-fo"},  {Rule::GenPred, "gen-pred"},
    {Rule::InstPred, "inst-pred"}, {Rule::GenBot, "gen-bot"}, {Rule::InstBot, "inst-bot"},
    {Rule::Eq, "eq"},
};

}  // namespace

const char* to_string(Rule r) {
  for (auto [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::optional<Rule> rule_from_string(std::string_view s) {
  for (auto [rule, name] : kRuleNames)
    if (s == name) return rule;
  return std::nullopt;
}

std::string format_path(const NodePath& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(p[i]);
  }
  return out + "]";
}

const Derivation& node_at(const Derivation& d, const NodePath& p) {
  const Derivation* cur = &d;
  for (auto i : p) {
    if (i >= cur->premises.size()) throw std::out_of_range("no node at " + format_path(p));
    cur = &cur->premises[i];
  }
  return *cur;
}

Derivation& node_at(Derivation& d, const NodePath& p) {
  return const_cast<Derivation&>(node_at(static_cast<const Derivation&>(d), p));
}

namespace {

void collect_paths(const Derivation& d, NodePath& cur, std::vector<NodePath>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    cur.push_back(i);
    collect_paths(d.premises[i], cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<NodePath> all_paths(const Derivation& d) {
  std::vector<NodePath> out;
  NodePath cur;
  collect_paths(d, cur, out);
  return out;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

bool same_context(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (const auto& e : a) {
    const Formula* t = lookup(b, e.name);
    if (!t || !alpha_equal(*t, e.type)) return false;
  }
  return true;
}

bool fo_free_in_context(const Context& ctx, const std::string& x) {
  for (const auto& e : ctx)
    if (free_fo_vars(e.type).count(x)) return true;
  return false;
}

bool so_free_in_context(const Context& ctx, const SoVar& v) {
  for (const auto& e : ctx)
    if (free_so_vars(e.type).count(v)) return true;
  return false;
}

std::optional<std::string> premise_count(const Derivation& d, std::size_t n) {
  if (d.premises.size() != n)
    return std::string(to_string(d.rule)) + " expects " + std::to_string(n) + " premise(s), found " +
           std::to_string(d.premises.size());
  return std::nullopt;
}

// Context and subject are unchanged by the rules 4-8.
std::optional<std::string> same_judgement_subject(const Derivation& d) {
  if (auto e = premise_count(d, 1)) return e;
  const Derivation& p = d.premises[0];
  if (!same_context(d.ctx, p.ctx)) return "context differs from the premise";
  if (!alpha_equal(d.term, p.term)) return "term differs from the premise";
  return std::nullopt;
}

std::optional<std::string> check_generalization(const Derivation& d, Formula::Kind kind) {
  if (auto e = same_judgement_subject(d)) return e;
  if (d.type.kind() != kind) return "conclusion is not quantified over the right kind of variable";
  if (!alpha_equal(d.type.body(), d.premises[0].type)) return "quantifier body differs from the premise type";
  if (kind == Formula::Kind::ForallFo) {
    if (fo_free_in_context(d.ctx, d.type.name()))
      return "variable " + d.type.name() + " occurs free in the context";
  } else if (so_free_in_context(d.ctx, d.type.so_var())) {
    return "variable " + d.type.name() + (kind == Formula::Kind::ForallBot ? "⊥" : "") +
           " occurs free in the context";
  }
  return std::nullopt;
}

std::optional<std::string> check_instantiation(const Derivation& d, Formula::Kind kind) {
  if (auto e = same_judgement_subject(d)) return e;
  const Formula& from = d.premises[0].type;
  if (from.kind() != kind) return "premise is not quantified over the right kind of variable";
  if (!d.witness) return "missing witness";
  bool fo = std::holds_alternative<FoTerm>(*d.witness);
  if (fo != (kind == Formula::Kind::ForallFo)) return "witness has the wrong kind";
  Formula inst = instantiate(from, *d.witness);
  if (!alpha_equal(inst, d.type)) return "conclusion is not the instance " + print_formula(inst);
  return std::nullopt;
}

std::optional<std::string> check_node(const Derivation& d, const EquationSet& eqs) {
  for (std::size_t i = 0; i < d.ctx.size(); ++i)
    for (std::size_t j = i + 1; j < d.ctx.size(); ++j)
      if (d.ctx[i].name == d.ctx[j].name) return "variable " + d.ctx[i].name + " declared twice in the context";
  bool wants_witness = d.rule == Rule::InstFo || d.rule == Rule::InstPred || d.rule == Rule::InstBot;
  if (d.witness && !wants_witness) return std::string("rule ") + to_string(d.rule) + " takes no witness";
  if (!d.chain.empty() && d.rule != Rule::Eq) return std::string("rule ") + to_string(d.rule) + " takes no chain";

  switch (d.rule) {
    case Rule::Ax: {
      if (auto e = premise_count(d, 0)) return e;
      if (!d.term.is_var()) return "axiom subject is not a variable";
      const Formula* t = lookup(d.ctx, d.term.name());
      if (!t) return "variable " + d.term.name() + " is not in the context";
      if (!alpha_equal(*t, d.type)) return "type differs from the context entry for " + d.term.name();
      return std::nullopt;
    }
    case Rule::Abs: {
      if (auto e = premise_count(d, 1)) return e;
      const Derivation& p = d.premises[0];
      if (p.ctx.empty()) return "premise context is empty";
      const ContextEntry& x = p.ctx.back();
      Context rest(p.ctx.begin(), p.ctx.end() - 1);
      if (!same_context(d.ctx, rest)) return "context differs from the premise minus " + x.name;
      if (!d.type.is_arrow()) return "conclusion is not an implication";
      if (!alpha_equal(d.type.left(), x.type)) return "hypothesis differs from the type of " + x.name;
      if (!alpha_equal(d.type.right(), p.type)) return "conclusion differs from the premise type";
      if (!alpha_equal(d.term, Term::abs(x.name, p.term))) return "term is not the abstraction over " + x.name;
      return std::nullopt;
    }
    case Rule::App: {
      if (auto e = premise_count(d, 2)) return e;
      const Derivation& u = d.premises[0];
      const Derivation& v = d.premises[1];
      if (!same_context(d.ctx, u.ctx) || !same_context(d.ctx, v.ctx)) return "context differs from a premise";
      if (!u.type.is_arrow()) return "function premise is not an implication";
      if (!alpha_equal(u.type.left(), v.type)) return "argument type does not match";
      if (!alpha_equal(u.type.right(), d.type)) return "conclusion differs from the function's result";
      if (!alpha_equal(d.term, Term::app(u.term, v.term))) return "term is not the application of the premises";
      return std::nullopt;
    }
    case Rule::GenFo: return check_generalization(d, Formula::Kind::ForallFo);
    case Rule::GenPred: return check_generalization(d, Formula::Kind::ForallPred);
    case Rule::GenBot: return check_generalization(d, Formula::Kind::ForallBot);
    case Rule::InstFo: return check_instantiation(d, Formula::Kind::ForallFo);
    case Rule::InstPred: return check_instantiation(d, Formula::Kind::ForallPred);
    case Rule::InstBot: return check_instantiation(d, Formula::Kind::ForallBot);
    case Rule::Eq: {
      if (auto e = same_judgement_subject(d)) return e;
      Formula out = eq_chain(d.premises[0].type, eqs, d.chain);
      if (!alpha_equal(out, d.type)) return "equation chain ends at " + print_formula(out);
      return std::nullopt;
    }
  }
  return "unknown rule";
}

CheckReport check_rec(const Derivation& d, const EquationSet& eqs, NodePath& path) {
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(i);
    CheckReport r = check_rec(d.premises[i], eqs, path);
    path.pop_back();
    if (!r.ok) return r;
  }
  std::optional<std::string> reason;
  try {
    reason = check_node(d, eqs);
  } catch (const FormulaError& e) {
    reason = e.what();
  }
  if (reason) return CheckReport{false, path, std::string(to_string(d.rule)) + ": " + *reason};
  return {};
}

bool has_first_order(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Bot: return false;
    case Formula::Kind::PredVar:
    case Formula::Kind::BotVar:
    case Formula::Kind::PredSym: return !f.args().empty();
    case Formula::Kind::Arrow: return has_first_order(f.left()) || has_first_order(f.right());
    case Formula::Kind::ForallFo: return true;
    default: return has_first_order(f.body());
  }
}

std::optional<std::string> fperp_node(const Derivation& d) {
  if (d.rule == Rule::GenFo || d.rule == Rule::InstFo || d.rule == Rule::Eq)
    return std::string("rule ") + to_string(d.rule) + " is outside the propositional fragment";
  for (const auto& e : d.ctx)
    if (has_first_order(e.type)) return "context entry " + e.name + " has first-order structure";
  if (has_first_order(d.type)) return "type has first-order structure";
  if (d.witness) {
    if (std::holds_alternative<FoTerm>(*d.witness)) return "first-order witness";
    const auto& g = std::get<PredAbstraction>(*d.witness);
    if (!g.params.empty() || has_first_order(g.body)) return "witness has first-order structure";
  }
  return std::nullopt;
}

CheckReport fperp_rec(const Derivation& d, NodePath& path) {
  if (auto r = fperp_node(d)) return CheckReport{false, path, "fperp: " + *r};
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(i);
    CheckReport r = fperp_rec(d.premises[i], path);
    path.pop_back();
    if (!r.ok) return r;
  }
  return {};
}

}  // namespace

CheckReport check_derivation(const Derivation& d, const EquationSet& eqs) {
  NodePath path;
  return check_rec(d, eqs, path);
}

CheckReport check_fperp(const Derivation& d) {
  CheckReport r = check_derivation(d);
  if (!r.ok) return r;
  NodePath path;
  return fperp_rec(d, path);
}

// ---------------------------------------------------------------------------
// Projections and lifts

Derivation forget_derivation(const Derivation& d) {
  if (d.rule == Rule::GenFo || d.rule == Rule::InstFo || d.rule == Rule::Eq) {
    if (d.premises.size() != 1) throw std::invalid_argument("malformed derivation");
    return forget_derivation(d.premises[0]);
  }
  Context ctx;
  for (const auto& e : d.ctx) ctx.push_back({e.name, forget_first_order(e.type)});
  Derivation out{ctx, d.term, forget_first_order(d.type), d.rule, std::nullopt, {}, {}};
  if (d.witness && std::holds_alternative<PredAbstraction>(*d.witness))
    out.witness = PredAbstraction{{}, forget_first_order(std::get<PredAbstraction>(*d.witness).body)};
  for (const auto& p : d.premises) out.premises.push_back(forget_derivation(p));
  return out;
}

namespace {

struct Lifter {
  std::string nu;
  Formula bot_type;

  Derivation run(const Derivation& d) const {
    Context ctx = d.ctx;
    for (auto& e : ctx)
      if (e.name == nu) e.type = bot_type;
    if (d.rule == Rule::Ax && d.term.name() == nu) return recover_star(ctx);
    Derivation out{ctx, d.term, d.type, d.rule, d.witness, d.chain, {}};
    for (const auto& p : d.premises) out.premises.push_back(run(p));
    return out;
  }

  // ν : N⊥[x] ⊢ ν : N*[x] through X⊥ := λy.¬Z(y) and generalization over Z
  Derivation recover_star(const Context& ctx) const {
    std::set<std::string> taken;
    for (const auto& e : ctx)
      for (const auto& v : free_so_vars(e.type)) taken.insert(v.name);
    SoVar z{fresh_name("Z", taken), SoKind::Pred};
    PredAbstraction g{{"y"}, Formula::neg(Formula::pred_var(z.name, {FoTerm::var("y")}))};
    return build::gen_so(build::inst_so(build::ax(ctx, nu), g), z);
  }
};

}  // namespace

Derivation lift_star_to_bot(const Derivation& d) {
  if (!is_closed(d.term)) throw std::invalid_argument("the operator is not closed");
  if (!d.term.is_abs() || !is_head_normal(d.term)) throw std::invalid_argument("the operator is not in head normal form");
  if (d.rule != Rule::GenFo || d.premises.size() != 1 || d.premises[0].rule != Rule::Abs)
    throw std::invalid_argument("derivation does not end with gen-fo over abs");
  const std::string x = d.type.name();
  const Formula goal =
      Formula::forall_fo(x, Formula::arrow(nat_star(FoTerm::var(x)), Formula::neg(Formula::neg(nat(FoTerm::var(x))))));
  if (!alpha_equal(d.type, goal)) throw std::invalid_argument("conclusion is not ∀x(N*[x] → ¬¬N[x])");
  if (auto r = check_derivation(d); !r.ok) throw std::invalid_argument("input derivation does not check: " + r.reason);
  const Derivation& body = d.premises[0].premises[0];
  Lifter lift{body.ctx.back().name, nat_bot(FoTerm::var(x))};
  return build::gen_fo(build::abs(lift.run(body)), x);
}

// ---------------------------------------------------------------------------
// Forward construction

namespace build {

namespace {

Derivation node(Context ctx, Term term, Formula type, Rule rule) {
  return Derivation{std::move(ctx), std::move(term), std::move(type), rule, std::nullopt, {}, {}};
}

}  // namespace

Derivation ax(const Context& ctx, const std::string& name) {
  const Formula* t = lookup(ctx, name);
  if (!t) throw std::invalid_argument("no context entry for " + name);
  return node(ctx, Term::var(name), *t, Rule::Ax);
}

Derivation abs(Derivation premise) {
  if (premise.ctx.empty()) throw std::invalid_argument("nothing to discharge");
  ContextEntry x = premise.ctx.back();
  Context ctx(premise.ctx.begin(), premise.ctx.end() - 1);
  Derivation out = node(ctx, Term::abs(x.name, premise.term), Formula::arrow(x.type, premise.type), Rule::Abs);
  out.premises.push_back(std::move(premise));
  return out;
}

Derivation app(Derivation fn, Derivation arg) {
  if (!fn.type.is_arrow() || !alpha_equal(fn.type.left(), arg.type))
    throw std::invalid_argument("cannot apply " + print_formula(fn.type) + " to " + print_formula(arg.type));
  Derivation out = node(fn.ctx, Term::app(fn.term, arg.term), fn.type.right(), Rule::App);
  out.premises.push_back(std::move(fn));
  out.premises.push_back(std::move(arg));
  return out;
}

Derivation gen_fo(Derivation premise, const std::string& x) {
  Derivation out = node(premise.ctx, premise.term, Formula::forall_fo(x, premise.type), Rule::GenFo);
  out.premises.push_back(std::move(premise));
  return out;
}

Derivation inst_fo(Derivation premise, const FoTerm& u) {
  Derivation out = node(premise.ctx, premise.term, instantiate(premise.type, u), Rule::InstFo);
  out.witness = u;
  out.premises.push_back(std::move(premise));
  return out;
}

Derivation gen_so(Derivation premise, const SoVar& v) {
  Rule r = v.kind == SoKind::Pred ? Rule::GenPred : Rule::GenBot;
  Derivation out = node(premise.ctx, premise.term, Formula::forall_so(v, premise.type), r);
  out.premises.push_back(std::move(premise));
  return out;
}

Derivation inst_so(Derivation premise, const PredAbstraction& g) {
  Rule r = premise.type.kind() == Formula::Kind::ForallBot ? Rule::InstBot : Rule::InstPred;
  Derivation out = node(premise.ctx, premise.term, instantiate(premise.type, g), r);
  out.witness = g;
  out.premises.push_back(std::move(premise));
  return out;
}

Derivation eq(Derivation premise, const EquationSet& eqs, std::vector<EqStep> chain) {
  Derivation out = node(premise.ctx, premise.term, eq_chain(premise.type, eqs, chain), Rule::Eq);
  out.chain = std::move(chain);
  out.premises.push_back(std::move(premise));
  return out;
}

}  // namespace build

}  // namespace storop
