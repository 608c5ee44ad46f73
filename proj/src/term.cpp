#include "storop/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "storop/builtins.hpp"
#include "storop/numerals.hpp"

namespace storop {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), Term{}, Term{}, 1}));
}

Term Term::abs(std::string binder, Term body) {
  std::size_t n = body.size() + 1;
  return Term(std::make_shared<const Node>(Node{Kind::Abs, std::move(binder), std::move(body), Term{}, n}));
}

Term Term::app(Term fn, Term arg) {
  std::size_t n = fn.size() + arg.size() + 1;
  return Term(std::make_shared<const Node>(Node{Kind::App, {}, std::move(fn), std::move(arg), n}));
}

Term Term::apply(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = app(std::move(head), a);
  return head;
}

Term Term::lambdas(const std::vector<std::string>& binders, Term body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = abs(*it, std::move(body));
  return body;
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::body() const { return node_->first; }
const Term& Term::fn() const { return node_->first; }
const Term& Term::arg() const { return node_->second; }
std::size_t Term::size() const { return node_ ? node_->size : 0; }

// ---------------------------------------------------------------------------
// Variables

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      return;
    case Term::Kind::Abs:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case Term::Kind::App:
      collect_free(t.fn(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
  }
}

bool free_in(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == name;
    case Term::Kind::Abs:
      return t.name() != name && free_in(t.body(), name);
    case Term::Kind::App:
      return free_in(t.fn(), name) || free_in(t.arg(), name);
  }
  return false;
}

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out.insert(t.name());
      return;
    case Term::Kind::Abs:
      out.insert(t.name());
      collect_names(t.body(), out);
      return;
    case Term::Kind::App:
      collect_names(t.fn(), out);
      collect_names(t.arg(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

bool occurs_free(const Term& t, const std::string& name) { return free_in(t, name); }

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base) && !base.empty()) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (std::size_t i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

Term substitute(const Term& t, const Bindings& bindings) {
  if (bindings.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = bindings.find(t.name());
      return it == bindings.end() ? t : it->second;
    }
    case Term::Kind::App: {
      Term f = substitute(t.fn(), bindings);
      Term a = substitute(t.arg(), bindings);
      return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Abs: break;
  }

  const std::string& x = t.name();
  Bindings inner;
  for (const auto& [k, v] : bindings)
    if (k != x && free_in(t.body(), k)) inner.emplace(k, v);
  if (inner.empty()) return t;

  bool capture = false;
  for (const auto& [k, v] : inner)
    if (free_in(v, x)) {
      capture = true;
      break;
    }
  if (!capture) return Term::abs(x, substitute(t.body(), inner));

  std::set<std::string> avoid = free_vars(t.body());
  for (const auto& [k, v] : inner) {
    avoid.insert(k);
    auto fv = free_vars(v);
    avoid.insert(fv.begin(), fv.end());
  }
  std::string renamed = fresh_name(x, avoid);
  inner.emplace(x, Term::var(renamed));
  return Term::abs(renamed, substitute(t.body(), inner));
}

Term substitute(const Term& t, const std::string& name, const Term& value) {
  return substitute(t, Bindings{{name, value}});
}

Spine unwind(const Term& t) {
  std::vector<Term> args;
  const Term* cur = &t;
  while (cur->is_app()) {
    args.push_back(cur->arg());
    cur = &cur->fn();
  }
  std::reverse(args.begin(), args.end());
  return Spine{*cur, std::move(args)};
}

Lambdas peel(const Term& t) {
  std::vector<std::string> binders;
  const Term* cur = &t;
  while (cur->is_abs()) {
    binders.push_back(cur->name());
    cur = &cur->body();
  }
  return Lambdas{std::move(binders), *cur};
}

// ---------------------------------------------------------------------------
// α-equivalence

namespace {

long lookup(const std::vector<std::string>& stack, const std::string& name) {
  for (std::size_t i = stack.size(); i-- > 0;)
    if (stack[i] == name) return static_cast<long>(i);
  return -1;
}

bool alpha_rec(const Term& a, const Term& b, std::vector<std::string>& sa, std::vector<std::string>& sb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      long ia = lookup(sa, a.name());
      long ib = lookup(sb, b.name());
      if (ia < 0 && ib < 0) return a.name() == b.name();
      return ia == ib;
    }
    case Term::Kind::Abs: {
      sa.push_back(a.name());
      sb.push_back(b.name());
      bool r = alpha_rec(a.body(), b.body(), sa, sb);
      sa.pop_back();
      sb.pop_back();
      return r;
    }
    case Term::Kind::App:
      return a.size() == b.size() && alpha_rec(a.fn(), b.fn(), sa, sb) && alpha_rec(a.arg(), b.arg(), sa, sb);
  }
  return false;
}

Term normalize_names(const Term& t, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& env) {
  switch (t.kind()) {
    case Term::Kind::Var:
      for (std::size_t i = env.size(); i-- > 0;)
        if (env[i].first == t.name()) return Term::var(env[i].second);
      return t;
    case Term::Kind::Abs: {
      std::string fresh = prefix + std::to_string(env.size());
      env.emplace_back(t.name(), fresh);
      Term body = normalize_names(t.body(), prefix, env);
      env.pop_back();
      return Term::abs(fresh, std::move(body));
    }
    case Term::Kind::App:
      return Term::app(normalize_names(t.fn(), prefix, env), normalize_names(t.arg(), prefix, env));
  }
  return t;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  std::vector<std::string> sa, sb;
  return alpha_rec(a, b, sa, sb);
}

Term alpha_normalize(const Term& t) {
  auto fv = free_vars(t);
  std::string prefix = "_b";
  auto clashes = [&] {
    for (const auto& v : fv)
      if (v.rfind(prefix, 0) == 0) return true;
    return false;
  };
  while (clashes()) prefix.insert(prefix.begin(), '_');
  std::vector<std::pair<std::string, std::string>> env;
  return normalize_names(t, prefix, env);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

class Printer {
 public:
  explicit Printer(const PrintOptions& opts) : opts_(opts) {}

  std::string print(const Term& t) {
    std::ostringstream os;
    emit(os, t);
    return os.str();
  }

 private:
  std::optional<std::string> folded(const Term& t) const {
    if (!opts_.fold_builtins || t.is_var() || !is_closed(t)) return std::nullopt;
    if (auto n = numeral_of(t)) return "@church:" + std::to_string(*n);
    if (alpha_equal(t, builtin_term("succ"))) return std::string("@succ");
    return std::nullopt;
  }

  bool atomic(const Term& t) const { return t.is_var() || folded(t).has_value(); }

  void emit(std::ostream& os, const Term& t) {
    if (auto f = folded(t)) {
      os << *f;
      return;
    }
    switch (t.kind()) {
      case Term::Kind::Var:
        os << t.name();
        return;
      case Term::Kind::Abs:
        os << '\\' << t.name() << ' ';
        emit(os, t.body());
        return;
      case Term::Kind::App:
        emit_app(os, unwind(t));
        return;
    }
  }

  void emit_app(std::ostream& os, const Spine& spine) {
    const auto& args = spine.args;
    // Every argument but the last must be atomic; group the prefix up to the
    // last compound one into the head.
    std::size_t split = 0;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
      if (!atomic(args[i])) split = i + 1;
    Term head = Term::apply(spine.head, std::vector<Term>(args.begin(), args.begin() + split));
    os << '(';
    emit(os, head);
    os << ')';
    bool prev_atom = false;
    for (std::size_t i = split; i < args.size(); ++i) {
      bool at = atomic(args[i]);
      if (prev_atom && at) os << ' ';
      emit(os, args[i]);
      prev_atom = at;
    }
  }

  const PrintOptions& opts_;
};

}  // namespace

std::string print_term(const Term& t, const PrintOptions& opts) {
  Printer p(opts);
  return p.print(t);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Lambda, LParen, RParen, Builtin, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      std::size_t l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      char ch = src_[pos_];
      if (ch == '(') {
        advance(1);
        out.push_back({Tok::LParen, "(", l, c});
      } else if (ch == ')') {
        advance(1);
        out.push_back({Tok::RParen, ")", l, c});
      } else if (ch == '\\') {
        advance(1);
        out.push_back({Tok::Lambda, "\\", l, c});
      } else if (src_.substr(pos_, 2) == "\xCE\xBB") {  // λ
        pos_ += 2;
        ++col_;
        out.push_back({Tok::Lambda, "λ", l, c});
      } else if (ch == '@') {
        advance(1);
        std::string name;
        while (pos_ < src_.size() && (is_ident_char(src_[pos_]) || src_[pos_] == ':')) {
          name.push_back(src_[pos_]);
          advance(1);
        }
        if (name.empty()) throw ParseError("expected builtin name after '@'", l, c);
        out.push_back({Tok::Builtin, name, l, c});
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string name;
        while (pos_ < src_.size() && (is_ident_char(src_[pos_]) || src_[pos_] == '\'')) {
          name.push_back(src_[pos_]);
          advance(1);
        }
        out.push_back({Tok::Ident, name, l, c});
      } else {
        throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
      }
    }
  }

 private:
  static bool is_ident_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else {
        advance(1);
      }
    }
  }

  void advance(std::size_t n) {
    pos_ += n;
    col_ += n;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class TermParser {
 public:
  TermParser(std::vector<Token> toks, const BuiltinResolver& resolve) : toks_(std::move(toks)), resolve_(resolve) {}

  Term parse_all() {
    Term t = term();
    if (peek().kind != Tok::End) fail("unexpected trailing input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + (t.kind == Tok::End ? " (at end of input)" : " near '" + t.text + "'"), t.line, t.column);
  }

  static bool starts_term(Tok k) {
    return k == Tok::Ident || k == Tok::Lambda || k == Tok::LParen || k == Tok::Builtin;
  }

  Term term() {
    if (peek().kind == Tok::Lambda) return lambda();
    Term head = head_term();
    std::vector<Term> args;
    collect_args(args);
    return Term::apply(std::move(head), args);
  }

  void collect_args(std::vector<Term>& args) {
    while (starts_term(peek().kind)) {
      switch (peek().kind) {
        case Tok::Ident:
          args.push_back(Term::var(next().text));
          break;
        case Tok::Builtin:
          args.push_back(builtin());
          break;
        case Tok::Lambda:
          args.push_back(lambda());
          return;
        case Tok::LParen: {
          // A parenthesised argument takes everything after it as its own
          // arguments: (t)(u)v is t applied to (u)v.
          Term h = paren();
          std::vector<Term> inner;
          collect_args(inner);
          args.push_back(Term::apply(std::move(h), inner));
          return;
        }
        default:
          return;
      }
    }
  }

  Term head_term() {
    switch (peek().kind) {
      case Tok::Ident:
        return Term::var(next().text);
      case Tok::Builtin:
        return builtin();
      case Tok::LParen:
        return paren();
      default:
        fail("expected a term");
    }
  }

  Term paren() {
    next();  // (
    Term t = term();
    if (peek().kind != Tok::RParen) fail("expected ')'");
    next();
    return t;
  }

  Term lambda() {
    next();  // \ or λ
    std::vector<std::string> binders;
    while (peek().kind == Tok::Ident) binders.push_back(next().text);
    if (binders.empty()) fail("expected a variable after lambda");
    if (!starts_term(peek().kind)) {
      // "\x y" : the last name is the body
      if (binders.size() < 2) fail("expected lambda body");
      std::string body = binders.back();
      binders.pop_back();
      return Term::lambdas(binders, Term::var(body));
    }
    return Term::lambdas(binders, term());
  }

  Term builtin() {
    const Token& tok = next();
    auto t = resolve_(tok.text);
    if (!t) throw ParseError("unknown builtin '@" + tok.text + "'", tok.line, tok.column);
    return *t;
  }

  std::vector<Token> toks_;
  const BuiltinResolver& resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const BuiltinResolver& resolve) {
  Lexer lexer(text);
  TermParser parser(lexer.run(), resolve);
  return parser.parse_all();
}

Term parse_term(std::string_view text) {
  static const BuiltinResolver resolve = [](std::string_view name) { return lookup_builtin(name); };
  return parse_term(text, resolve);
}

}  // namespace storop
