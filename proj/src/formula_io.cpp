#include <cctype>

#include "storop/formula.hpp"
#include "storop/term.hpp"

namespace storop {

namespace {

constexpr std::string_view kNot = "\xC2\xAC";         // ¬
constexpr std::string_view kForall = "\xE2\x88\x80";  // ∀
constexpr std::string_view kArrow = "\xE2\x86\x92";   // →
constexpr std::string_view kBot = "\xE2\x8A\xA5";     // ⊥

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool is_upper(const std::string& s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

struct Name {
  std::string text;
  bool bot = false;
};

class FormulaParser {
 public:
  FormulaParser(std::string_view src, Signature& sig) : src_(src), sig_(sig) {}

  Formula parse_all() {
    Formula f = chain();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected input");
    return f;
  }

  FoTerm parse_fo_all() {
    FoTerm t = fo_term();
    skip_ws();
    if (pos_ < src_.size()) fail("unexpected input after term");
    return t;
  }

 private:
  std::string_view src_;
  Signature& sig_;
  std::size_t pos_ = 0;
  std::map<SoVar, std::size_t> arities_;

  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool at(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  bool eat(std::string_view s) {
    skip_ws();
    if (!at(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!eat(s)) fail("expected '" + std::string(s) + "'");
  }

  bool eat_arrow() { return eat("->") || eat(kArrow); }

  // Identifier with an optional ⊥ mark written directly after it.
  std::optional<Name> name() {
    skip_ws();
    if (pos_ >= src_.size() || !ident_start(src_[pos_])) return std::nullopt;
    std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    Name n{std::string(src_.substr(start, pos_ - start))};
    if (n.text.size() > 1 && n.text.back() == '_' && at("|")) {
      n.text.pop_back();
      n.bot = true;
      ++pos_;
    } else if (at(kBot)) {
      n.bot = true;
      pos_ += kBot.size();
    }
    return n;
  }

  Formula chain() {
    std::vector<Formula> items{unary()};
    while (eat(",")) items.push_back(unary());
    if (eat_arrow()) {
      Formula concl = chain();
      return Formula::arrows(items, concl);
    }
    if (items.size() > 1) fail("a comma-separated list must be followed by an arrow");
    return items[0];
  }

  Formula unary() {
    skip_ws();
    if (eat("~") || eat(kNot)) return Formula::neg(unary());
    if (eat("!") || eat(kForall)) {
      auto n = name();
      if (!n) fail("expected a variable after the quantifier");
      Formula body = unary();
      if (n->bot) return Formula::forall_bot(n->text, body);
      if (is_upper(n->text)) return Formula::forall_pred(n->text, body);
      return Formula::forall_fo(n->text, body);
    }
    if (eat(kBot)) return Formula::bot();
    if (eat("(")) {
      Formula f = chain();
      expect(")");
      return f;
    }
    if (eat("{")) {
      Formula f = chain();
      expect("}");
      return f;
    }
    auto n = name();
    if (!n) fail("expected a formula");
    if (n->text == "bot" && !n->bot) return Formula::bot();
    if (n->text == "N") return macro(n->bot);
    std::vector<FoTerm> args;
    if (at("(")) {
      ++pos_;
      args = fo_args();
    }
    if (n->bot) return so_atom(SoVar{n->text, SoKind::Bot}, std::move(args));
    if (!sig_.predicates.count(n->text) && is_upper(n->text))
      return so_atom(SoVar{n->text, SoKind::Pred}, std::move(args));
    check_arity(sig_.predicates, n->text, args.size(), "predicate symbol");
    return Formula::pred_sym(n->text, std::move(args));
  }

  Formula so_atom(const SoVar& v, std::vector<FoTerm> args) {
    auto it = arities_.find(v);
    if (it != arities_.end() && it->second != args.size())
      fail("predicate variable " + v.name + " used with arity " + std::to_string(args.size()) + " and " +
           std::to_string(it->second));
    auto sv = sig_.variables.find(v);
    if (sv != sig_.variables.end() && sv->second != args.size())
      fail("predicate variable " + v.name + " is declared with arity " + std::to_string(sv->second));
    arities_[v] = args.size();
    return Formula::so_atom(v, std::move(args));
  }

  Formula macro(bool bot) {
    bool star = !bot && eat("*");
    if (!at("[")) {
      if (bot) return nat_bot_prop();
      return star ? godel_star(nat_prop()) : nat_prop();
    }
    ++pos_;
    FoTerm t = fo_term();
    expect("]");
    if (bot) return nat_bot(t);
    return star ? nat_star(t) : nat(t);
  }

  void check_arity(std::map<std::string, std::size_t>& table, const std::string& name, std::size_t n,
                   const char* what) {
    auto [it, inserted] = table.emplace(name, n);
    if (!inserted && it->second != n)
      fail(std::string(what) + " " + name + " has arity " + std::to_string(it->second) + ", used with " +
           std::to_string(n));
  }

  std::vector<FoTerm> fo_args() {
    std::vector<FoTerm> args;
    skip_ws();
    if (eat(")")) return args;
    args.push_back(fo_term());
    while (eat(",")) args.push_back(fo_term());
    expect(")");
    return args;
  }

  FoTerm fo_term() {
    skip_ws();
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      unsigned n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        n = n * 10 + static_cast<unsigned>(src_[pos_++] - '0');
      return FoTerm::succ_n(n);
    }
    auto n = name();
    if (!n || n->bot) fail("expected a first-order term");
    if (at("(")) {
      ++pos_;
      auto args = fo_args();
      check_arity(sig_.functions, n->text, args.size(), "function symbol");
      return FoTerm::fn(n->text, std::move(args));
    }
    if (sig_.constants.count(n->text)) return FoTerm::fn(n->text);
    return FoTerm::var(n->text);
  }
};

// ---------------------------------------------------------------------------
// Printing

class FormulaPrinter {
 public:
  explicit FormulaPrinter(const FormulaStyle& s) : style_(s) {}

  std::string chain(const Formula& f) const {
    auto [hyps, concl] = split(f);
    if (hyps.empty()) return concl;
    std::string out;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      if (i) out += ", ";
      out += unary(hyps[i]);
    }
    return out + " " + arrow() + " " + concl;
  }

 private:
  const FormulaStyle& style_;

  std::string arrow() const { return std::string(style_.unicode ? kArrow : "->"); }
  std::string bot_mark() const { return std::string(style_.unicode ? kBot : "_|"); }

  static bool pure_bot(const Formula& f) {
    if (f.is_bot()) return true;
    return f.is_arrow() && pure_bot(f.left()) && pure_bot(f.right());
  }

  // Hypotheses and the printed conclusion; a trailing "A -> ⊥" folds to ¬A.
  std::pair<std::vector<Formula>, std::string> split(const Formula& f) const {
    std::vector<Formula> hyps;
    Formula cur = f;
    while (cur.is_arrow() && !macro(cur)) {
      hyps.push_back(cur.left());
      cur = cur.right();
    }
    if (cur.is_bot() && !hyps.empty() && !pure_bot(hyps.back())) {
      Formula last = hyps.back();
      hyps.pop_back();
      return {hyps, negation(last)};
    }
    return {hyps, unary(cur)};
  }

  std::string negation(const Formula& a) const { return std::string(style_.unicode ? kNot : "~") + unary(a); }

  std::string unary(const Formula& f) const {
    if (auto m = macro(f)) return *m;
    switch (f.kind()) {
      case Formula::Kind::Bot: return style_.unicode ? std::string(kBot) : "bot";
      case Formula::Kind::PredVar:
      case Formula::Kind::PredSym: return atom(f.name(), f.args());
      case Formula::Kind::BotVar: return atom(f.name() + bot_mark(), f.args());
      case Formula::Kind::Arrow: {
        auto [hyps, concl] = split(f);
        if (hyps.empty()) return concl;
        return "(" + chain(f) + ")";
      }
      case Formula::Kind::ForallFo:
      case Formula::Kind::ForallPred:
      case Formula::Kind::ForallBot: {
        std::string head = std::string(style_.unicode ? kForall : "!") + f.name();
        if (f.kind() == Formula::Kind::ForallBot) head += bot_mark();
        const Formula& b = f.body();
        if (b.is_arrow() && !macro(b)) {
          auto [hyps, concl] = split(b);
          if (hyps.size() >= 2) return head + "{" + chain(b) + "}";
          if (hyps.size() == 1) return head + "(" + chain(b) + ")";
        }
        return head + " " + unary(b);
      }
    }
    return "?";
  }

  static std::string atom(const std::string& head, const std::vector<FoTerm>& args) {
    if (args.empty()) return head;
    std::string out = head + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ",";
      out += print_fo(args[i]);
    }
    return out + ")";
  }

  std::optional<std::string> macro(const Formula& f) const {
    if (!style_.fold_macros || !f.is_forall() || f.kind() == Formula::Kind::ForallFo) return std::nullopt;
    std::string bot = style_.unicode ? std::string(kBot) : "_|";
    if (alpha_equal(f, nat_prop())) return "N";
    if (alpha_equal(f, godel_star(nat_prop()))) return "N*";
    if (alpha_equal(f, nat_bot_prop())) return "N" + bot;
    // the argument t sits in the final atom X(t), or in the last hypothesis of ¬X(t)
    Formula cur = f.body();
    std::optional<Formula> last_hyp;
    while (cur.is_arrow()) {
      last_hyp = cur.left();
      cur = cur.right();
    }
    const Formula* tail = &cur;
    if (cur.is_bot() && last_hyp) tail = &*last_hyp;
    if (!tail->is_atom() || tail->args().size() != 1) return std::nullopt;
    const FoTerm& t = tail->args()[0];
    if (alpha_equal(f, nat(t))) return "N[" + print_fo(t) + "]";
    if (alpha_equal(f, nat_star(t))) return "N*[" + print_fo(t) + "]";
    if (alpha_equal(f, nat_bot(t))) return "N" + bot + "[" + print_fo(t) + "]";
    return std::nullopt;
  }
};

}  // namespace

Formula parse_formula(std::string_view text, Signature& sig) { return FormulaParser(text, sig).parse_all(); }

Formula parse_formula(std::string_view text) {
  Signature sig;
  return parse_formula(text, sig);
}

FoTerm parse_fo_term(std::string_view text) {
  Signature sig;
  return FormulaParser(text, sig).parse_fo_all();
}

std::string print_formula(const Formula& f, const FormulaStyle& style) { return FormulaPrinter(style).chain(f); }

}  // namespace storop
