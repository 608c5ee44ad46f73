#include "storop/derivations.hpp"

#include <stdexcept>

namespace storop::bundled {

namespace {

using build::abs;
using build::app;
using build::ax;
using build::gen_fo;
using build::gen_so;
using build::inst_fo;
using build::inst_so;

FoTerm V(const std::string& x) { return FoTerm::var(x); }

Context extend(Context ctx, std::string name, Formula type) {
  ctx.push_back({std::move(name), std::move(type)});
  return ctx;
}

std::string term_name(const Context& ctx, const std::string& base) {
  std::set<std::string> taken;
  for (const auto& e : ctx) taken.insert(e.name);
  return fresh_name(base, taken);
}

std::string fo_name(const Context& ctx, const std::string& base, std::set<std::string> taken = {}) {
  for (const auto& e : ctx) {
    auto fv = free_fo_vars(e.type);
    taken.insert(fv.begin(), fv.end());
  }
  return fresh_name(base, taken);
}

std::string so_name(const Context& ctx, const std::string& base) {
  std::set<std::string> taken;
  for (const auto& e : ctx)
    for (const auto& v : free_so_vars(e.type)) taken.insert(v.name);
  return fresh_name(base, taken);
}

// X(0) → ∀y(X(y) → X(s(y))) → X(t) over the predicate variable X
std::vector<Formula> nat_parts(const FoTerm& t, const std::string& x) {
  Formula body = instantiate(nat(t), PredAbstraction{{"w"}, Formula::pred_var(x, {V("w")})});
  return {body.left(), body.right().left(), body.right().right()};
}

Formula nn(const FoTerm& t) { return Formula::neg(Formula::neg(nat(t))); }

// ctx ⊢ λxλf x : ∀X{X(t), ∀y(X(y) → X(s(y))) → X(t)}
Derivation zero_at(const Context& ctx, const FoTerm& t) {
  std::string X = so_name(ctx, "X");
  auto parts = nat_parts(FoTerm::zero(), X);
  Formula start = Formula::pred_var(X, {t});
  std::string x = term_name(ctx, "x");
  Context c1 = extend(ctx, x, start);
  std::string f = term_name(c1, "f");
  Context c2 = extend(c1, f, parts[1]);
  return gen_so(abs(abs(ax(c2, x))), {X, SoKind::Pred});
}

}  // namespace

Derivation zero(const Context& ctx) { return zero_at(ctx, FoTerm::zero()); }

Derivation succ(const Context& ctx) {
  std::string y = fo_name(ctx, "y");
  std::string n = term_name(ctx, "n");
  Context c1 = extend(ctx, n, nat(V(y)));
  std::string X = so_name(c1, "X");
  auto parts = nat_parts(FoTerm::succ(V(y)), X);
  std::string x = term_name(c1, "x");
  Context c2 = extend(c1, x, parts[0]);
  std::string f = term_name(c2, "f");
  Context c3 = extend(c2, f, parts[1]);

  Derivation n_inst = inst_so(ax(c3, n), PredAbstraction{{"w"}, Formula::pred_var(X, {V("w")})});
  Derivation nxf = app(app(n_inst, ax(c3, x)), ax(c3, f));
  Derivation body = app(inst_fo(ax(c3, f), V(y)), nxf);
  return gen_fo(abs(gen_so(abs(abs(body)), {X, SoKind::Pred})), y);
}

Derivation numeral(unsigned count, const Context& ctx) {
  std::string X = so_name(ctx, "X");
  auto parts = nat_parts(FoTerm::zero(), X);
  std::string x = term_name(ctx, "x");
  Context c1 = extend(ctx, x, parts[0]);
  std::string f = term_name(c1, "f");
  Context c2 = extend(c1, f, parts[1]);
  Derivation v = ax(c2, x);
  for (unsigned k = 0; k < count; ++k) v = app(inst_fo(ax(c2, f), FoTerm::succ_n(k)), v);
  return gen_so(abs(abs(v)), {X, SoKind::Pred});
}

Derivation zero_prop() {
  Formula X = Formula::pred_var("X");
  Context c{{"x", X}, {"f", Formula::arrow(X, X)}};
  return gen_so(abs(abs(ax(c, "x"))), {"X", SoKind::Pred});
}

Derivation theta0() {
  // λxλfλz (x)((λd z)λw w), an α-variant of θ₀ with distinct binders
  Formula body = instantiate(nat_star(FoTerm::zero()), PredAbstraction{{"w"}, Formula::pred_var("X", {V("w")})});
  Formula hx = body.left();
  Formula hf = body.right().left();
  Formula hz = body.right().right().left();
  Context c{{"x", hx}, {"f", hf}, {"z", hz}};
  Formula id = Formula::neg(Formula::bot());
  Derivation dz = abs(ax(extend(c, "d", id), "z"));
  Derivation ww = abs(ax(extend(c, "w", Formula::bot()), "w"));
  Derivation core = app(ax(c, "x"), app(dz, ww));
  return gen_so(abs(abs(abs(core))), {"X", SoKind::Pred});
}

Derivation t1(bool bot, const Context& ctx) {
  std::string gx = fo_name(ctx, "x");
  std::string n = term_name(ctx, "n");
  Context c0 = extend(ctx, n, bot ? nat_bot(V(gx)) : nat_star(V(gx)));

  // X := λw.¬N[w] under *, X⊥ := λw.¬¬N[w] under ⊥; both give the same instance
  Formula neg_n = Formula::neg(nat(V("w")));
  PredAbstraction g{{"w"}, bot ? Formula::neg(neg_n) : neg_n};
  Derivation n_inst = inst_so(ax(c0, n), g);

  // δ = λk (k)0̄ : ¬¬N[0]
  std::string k = term_name(c0, "f");
  Context cd = extend(c0, k, Formula::neg(nat(FoTerm::zero())));
  Derivation delta = abs(app(ax(cd, k), zero(cd)));

  // G = λaλb (a)λz (b)(s̄)z : ∀v(¬¬N[v] → ¬¬N[s(v)])
  std::string v = fo_name(c0, "y");
  std::string a = term_name(c0, "x");
  Context c1 = extend(c0, a, nn(V(v)));
  std::string b = term_name(c1, "y");
  Context c2 = extend(c1, b, Formula::neg(nat(FoTerm::succ(V(v)))));
  std::string z = term_name(c2, "z");
  Context c3 = extend(c2, z, nat(V(v)));
  Derivation sz = app(inst_fo(succ(c3), V(v)), ax(c3, z));
  Derivation inner = abs(app(ax(c3, b), sz));
  Derivation G = gen_fo(abs(abs(app(ax(c2, a), inner))), v);

  return gen_fo(abs(app(app(n_inst, delta), G)), gx);
}

Derivation t2(bool bot) {
  const std::string gx = "x";
  Context c0{{"n", bot ? nat_bot(V(gx)) : nat_star(V(gx))}, {"f", Formula::neg(nat(V(gx)))}};

  // M(w) = ∀Y{Y(w), ∀y(Y(y) → Y(s(y))) → Y(x)}: the only instance of X that
  // lets f : ¬N[x] meet the first hypothesis of n.
  const Formula step = nat_parts(FoTerm::zero(), "Y")[1];
  auto M = [&](const FoTerm& w) {
    Formula Y = Formula::pred_var("Y", {w});
    return Formula::forall_pred("Y", Formula::arrows({Y, step}, Formula::pred_var("Y", {V(gx)})));
  };
  PredAbstraction g{{"w"}, bot ? Formula::neg(M(V("w"))) : M(V("w"))};
  Derivation n_inst = inst_so(ax(c0, "n"), g);
  Derivation nf = app(n_inst, ax(c0, "f"));

  // F = λaλb (a)(s̄)b : ∀v(¬M(v) → ¬M(s(v)))
  std::string v = "y";
  Context c1 = extend(c0, "a", Formula::neg(M(V(v))));
  Context c2 = extend(c1, "b", M(FoTerm::succ(V(v))));
  Derivation s = succ(c2);
  // No rule turns ∀y(N[y] → N[s(y)]) into M(s(v)) → M(v); this node asserts it.
  Derivation gap{c2, s.term, Formula::arrow(M(FoTerm::succ(V(v))), M(V(v))), Rule::Eq, std::nullopt, {}, {s}};
  Derivation sb{c2, Term::app(gap.term, Term::var("b")), M(V(v)), Rule::App, std::nullopt, {}, {gap, ax(c2, "b")}};
  Derivation F = gen_fo(abs(abs(app(ax(c2, "a"), sb))), v);

  Derivation body = app(app(nf, F), zero_at(c0, V(gx)));
  return gen_fo(abs(abs(body)), gx);
}

Derivation storage_t(bool primed) {
  const std::string gx = "x";
  Context c{{"v", nat_bot(V(gx))}, {"f", Formula::neg(nat(V(gx)))}};
  Derivation v_inst = inst_so(ax(c, "v"), PredAbstraction{{"w"}, Formula::bot()});

  // (T₁)v f : ⊥ in the given context
  auto t1vf = [&](const Context& ctx) {
    Derivation t = inst_fo(t1(true, ctx), V(gx));
    return app(app(t, ax(ctx, "v")), ax(ctx, "f"));
  };

  Derivation second = [&] {
    if (primed) {
      Context cd = extend(c, "d", Formula::bot());
      return gen_fo(abs(t1vf(cd)), fo_name(c, "y"));
    }
    std::string x = term_name(c, "x");
    return gen_fo(abs(ax(extend(c, x, Formula::bot()), x)), fo_name(c, "y"));
  }();
  Derivation body = app(app(v_inst, t1vf(c)), second);
  return gen_fo(abs(abs(body)), gx);
}

std::vector<Entry> library() {
  std::vector<Entry> out;
  out.push_back({"zero", "⊢ 0̄ : N[0]", zero(), true});
  out.push_back({"succ", "⊢ s̄ : ∀y(N[y] → N[s(y)])", succ(), true});
  for (unsigned n = 0; n <= 5; ++n)
    out.push_back({"numeral-" + std::to_string(n), "⊢ " + std::to_string(n) + " : N[s^" + std::to_string(n) + "(0)]",
                   numeral(n), true});
  out.push_back({"zero-prop", "⊢ λxλf x : N", zero_prop(), true});
  out.push_back({"theta0", "⊢ θ₀ : N*[0]", theta0(), true});
  out.push_back({"t1-star", "⊢ T₁ : ∀x(N*[x] → ¬¬N[x])", t1(false), true});
  out.push_back({"t1-bot", "⊢ T₁ : ∀x(N⊥[x] → ¬¬N[x])", t1(true), true});
  out.push_back({"t2-star", "⊢ T₂ : ∀x(N*[x] → ¬¬N[x])", t2(false), false});
  out.push_back({"t2-bot", "⊢ T₂ : ∀x(N⊥[x] → ¬¬N[x])", t2(true), false});
  out.push_back({"T-bot", "⊢ T : ∀x(N⊥[x] → ¬¬N[x])", storage_t(false), true});
  out.push_back({"Tp-bot", "⊢ T′ : ∀x(N⊥[x] → ¬¬N[x])", storage_t(true), true});
  return out;
}

}  // namespace storop::bundled
