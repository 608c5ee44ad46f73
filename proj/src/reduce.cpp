#include "storop/reduce.hpp"

#include <algorithm>
#include <vector>

namespace storop {

const char* to_string(ReductionStatus s) {
  switch (s) {
    case ReductionStatus::NormalForm: return "normal-form-reached";
    case ReductionStatus::HeadNormalForm: return "head-normal-form-reached";
    case ReductionStatus::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

std::optional<Term> head_step(const Term& t) {
  Lambdas outer = peel(t);
  Spine spine = unwind(outer.core);
  if (!spine.head.is_abs() || spine.args.empty()) return std::nullopt;
  Term contracted = substitute(spine.head.body(), spine.head.name(), spine.args.front());
  std::vector<Term> rest(spine.args.begin() + 1, spine.args.end());
  return Term::lambdas(outer.binders, Term::apply(std::move(contracted), rest));
}

bool is_head_normal(const Term& t) {
  Spine spine = unwind(peel(t).core);
  return spine.head.is_var() || spine.args.empty();
}

ReductionOutcome head_reduce(const Term& t, std::uint64_t fuel, const TraceFn& trace) {
  ReductionOutcome out{t, 0, ReductionStatus::HeadNormalForm};
  if (trace) trace(t);
  for (;;) {
    auto next = head_step(out.result);
    if (!next) return out;
    if (out.steps == fuel) {
      out.status = ReductionStatus::FuelExhausted;
      return out;
    }
    out.result = std::move(*next);
    ++out.steps;
    if (trace) trace(out.result);
  }
}

namespace {

using Wrap = std::function<Term(const Term&)>;

struct NormState {
  std::uint64_t fuel;
  std::uint64_t steps = 0;
  bool exhausted = false;
  const TraceFn* trace;
};

Term norm(Term t, NormState& st, const Wrap& wrap) {
  for (;;) {
    auto next = head_step(t);
    if (!next) break;
    if (st.steps == st.fuel) {
      st.exhausted = true;
      return t;
    }
    t = std::move(*next);
    ++st.steps;
    if (*st.trace) (*st.trace)(wrap ? wrap(t) : t);
  }
  Lambdas outer = peel(t);
  Spine spine = unwind(outer.core);
  std::vector<Term> args = spine.args;
  auto rebuild = [&] { return Term::lambdas(outer.binders, Term::apply(spine.head, args)); };
  for (std::size_t i = 0; i < args.size(); ++i) {
    Wrap inner;
    if (*st.trace) {
      inner = [&, i](const Term& sub) {
        auto saved = args[i];
        args[i] = sub;
        Term whole = rebuild();
        args[i] = saved;
        return wrap ? wrap(whole) : whole;
      };
    }
    args[i] = norm(args[i], st, inner);
    if (st.exhausted) return rebuild();
  }
  return rebuild();
}

}  // namespace

ReductionOutcome normalize(const Term& t, std::uint64_t fuel, const TraceFn& trace) {
  if (trace) trace(t);
  NormState st{fuel, 0, false, &trace};
  Term r = norm(t, st, {});
  return {r, st.steps, st.exhausted ? ReductionStatus::FuelExhausted : ReductionStatus::NormalForm};
}

Tri beta_equiv(const Term& a, const Term& b, std::uint64_t fuel) {
  auto na = normalize(a, fuel);
  if (na.status == ReductionStatus::FuelExhausted) return Tri::Unknown;
  auto nb = normalize(b, fuel);
  if (nb.status == ReductionStatus::FuelExhausted) return Tri::Unknown;
  return alpha_equal(na.result, nb.result) ? Tri::Yes : Tri::No;
}

Solvability is_solvable(const Term& t, std::uint64_t fuel) {
  return head_reduce(t, fuel).status == ReductionStatus::HeadNormalForm ? Solvability::Solvable : Solvability::Unknown;
}

namespace {

long index_of(const std::vector<std::string>& stack, const std::string& name) {
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i] == name) return static_cast<long>(i);
  return -1;
}

struct Matcher {
  const std::set<std::string>& holes;
  std::vector<std::string> sp, st;
  Bindings sigma;

  bool run(const Term& p, const Term& t) {
    switch (p.kind()) {
      case Term::Kind::Var: {
        long ip = index_of(sp, p.name());
        if (ip < 0 && holes.count(p.name())) {
          for (const auto& v : free_vars(t))
            if (index_of(st, v) >= 0) return false;
          auto it = sigma.find(p.name());
          if (it != sigma.end()) return alpha_equal(it->second, t);
          sigma.emplace(p.name(), t);
          return true;
        }
        if (!t.is_var()) return false;
        long it = index_of(st, t.name());
        if (ip < 0 && it < 0) return p.name() == t.name();
        return ip == it;
      }
      case Term::Kind::Abs: {
        if (!t.is_abs()) return false;
        sp.push_back(p.name());
        st.push_back(t.name());
        bool ok = run(p.body(), t.body());
        sp.pop_back();
        st.pop_back();
        return ok;
      }
      case Term::Kind::App:
        return t.is_app() && run(p.fn(), t.fn()) && run(p.arg(), t.arg());
    }
    return false;
  }
};

}  // namespace

std::optional<Bindings> match_holes(const Term& pattern, const std::set<std::string>& holes, const Term& t) {
  Matcher m{holes, {}, {}, {}};
  if (!m.run(pattern, t)) return std::nullopt;
  return std::move(m.sigma);
}

}  // namespace storop
