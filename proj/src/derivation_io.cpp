// Derivation files: nested s-expressions, one (rule ...) record per node.
//
//   node    := (rule TAG (ctx (NAME "formula")...) (term "term") (type "formula")
//               [(witness WITNESS)] [(chain STEP...)] [(premises node...)])
//   WITNESS := (fo "term") | (pred (params NAME...) "formula")
//   STEP    := (step "equation" (inst (NAME "term")...) (pos INT...) (dir ltr|rtl))

#include <cctype>
#include <sstream>

#include "storop/typing.hpp"

namespace storop {

namespace {

struct Sx {
  enum class Kind { Atom, String, List } kind = Kind::Atom;
  std::string text;
  std::vector<Sx> items;
  std::size_t line = 1, column = 1;

  bool is_list() const { return kind == Kind::List; }
  bool is_head(std::string_view h) const {
    return is_list() && !items.empty() && items[0].kind == Kind::Atom && items[0].text == h;
  }
};

class SxReader {
 public:
  explicit SxReader(std::string_view src) : src_(src) {}

  Sx read_top() {
    Sx s = read();
    skip();
    if (pos_ < src_.size()) fail("trailing input");
    return s;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else if (src_[pos_] == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Sx read() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    Sx s;
    s.line = line_;
    s.column = col_;
    char c = src_[pos_];
    if (c == '(') {
      advance();
      s.kind = Sx::Kind::List;
      for (;;) {
        skip();
        if (pos_ >= src_.size()) fail("unclosed '('");
        if (src_[pos_] == ')') {
          advance();
          return s;
        }
        s.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      advance();
      s.kind = Sx::Kind::String;
      for (;;) {
        if (pos_ >= src_.size()) fail("unterminated string");
        char d = src_[pos_];
        advance();
        if (d == '"') return s;
        if (d == '\\') {
          if (pos_ >= src_.size()) fail("unterminated string");
          d = src_[pos_];
          advance();
        }
        s.text += d;
      }
    }
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) && src_[pos_] != '(' &&
           src_[pos_] != ')' && src_[pos_] != '"') {
      s.text += src_[pos_];
      advance();
    }
    return s;
  }
};

[[noreturn]] void fail_at(const Sx& s, const std::string& msg) { throw ParseError(msg, s.line, s.column); }

const std::string& string_of(const Sx& s) {
  if (s.kind != Sx::Kind::String) fail_at(s, "expected a quoted string");
  return s.text;
}

const std::string& atom_of(const Sx& s) {
  if (s.kind != Sx::Kind::Atom) fail_at(s, "expected a name");
  return s.text;
}

// Re-raises parse errors of embedded terms/formulas at the string's position.
template <class F>
auto embedded(const Sx& s, F&& parse) {
  try {
    return parse(string_of(s));
  } catch (const ParseError& e) {
    fail_at(s, std::string("in embedded text: ") + e.what());
  }
}

Formula read_formula(const Sx& s) {
  return embedded(s, [](const std::string& t) { return parse_formula(t); });
}

FoTerm read_fo(const Sx& s) {
  return embedded(s, [](const std::string& t) { return parse_fo_term(t); });
}

Witness read_witness(const Sx& w) {
  if (w.is_head("fo") && w.items.size() == 2) return read_fo(w.items[1]);
  if (w.is_head("pred") && w.items.size() == 3 && w.items[1].is_head("params")) {
    PredAbstraction g{{}, read_formula(w.items[2])};
    for (std::size_t i = 1; i < w.items[1].items.size(); ++i) g.params.push_back(atom_of(w.items[1].items[i]));
    return g;
  }
  fail_at(w, "expected (fo \"t\") or (pred (params ...) \"formula\")");
}

EqStep read_step(const Sx& s) {
  if (!s.is_head("step") || s.items.size() < 2) fail_at(s, "expected (step \"name\" ...)");
  EqStep step{string_of(s.items[1]), {}, {}, Direction::LeftToRight};
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    const Sx& f = s.items[i];
    if (f.is_head("inst")) {
      for (std::size_t j = 1; j < f.items.size(); ++j) {
        const Sx& b = f.items[j];
        if (!b.is_list() || b.items.size() != 2) fail_at(b, "expected (name \"term\")");
        step.instance.emplace(atom_of(b.items[0]), read_fo(b.items[1]));
      }
    } else if (f.is_head("pos")) {
      for (std::size_t j = 1; j < f.items.size(); ++j) {
        const std::string& n = atom_of(f.items[j]);
        if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
          fail_at(f.items[j], "expected a position index");
        step.position.push_back(std::stoul(n));
      }
    } else if (f.is_head("dir") && f.items.size() == 2) {
      const std::string& d = atom_of(f.items[1]);
      if (d == "ltr") step.direction = Direction::LeftToRight;
      else if (d == "rtl") step.direction = Direction::RightToLeft;
      else fail_at(f.items[1], "direction must be ltr or rtl");
    } else {
      fail_at(f, "unknown step field");
    }
  }
  return step;
}

Derivation read_node(const Sx& s) {
  if (!s.is_head("rule") || s.items.size() < 2) fail_at(s, "expected (rule TAG ...)");
  auto rule = rule_from_string(atom_of(s.items[1]));
  if (!rule) fail_at(s.items[1], "unknown rule " + s.items[1].text);
  Context ctx;
  std::optional<Term> term;
  std::optional<Formula> type;
  std::optional<Witness> witness;
  std::vector<EqStep> chain;
  std::vector<Derivation> premises;
  for (std::size_t i = 2; i < s.items.size(); ++i) {
    const Sx& f = s.items[i];
    if (f.is_head("ctx")) {
      for (std::size_t j = 1; j < f.items.size(); ++j) {
        const Sx& b = f.items[j];
        if (!b.is_list() || b.items.size() != 2) fail_at(b, "expected (name \"formula\")");
        const std::string& name = atom_of(b.items[0]);
        if (lookup(ctx, name)) fail_at(b, "variable " + name + " declared twice");
        ctx.push_back({name, read_formula(b.items[1])});
      }
    } else if (f.is_head("term") && f.items.size() == 2) {
      term = embedded(f.items[1], [](const std::string& t) { return parse_term(t); });
    } else if (f.is_head("type") && f.items.size() == 2) {
      type = read_formula(f.items[1]);
    } else if (f.is_head("witness") && f.items.size() == 2) {
      witness = read_witness(f.items[1]);
    } else if (f.is_head("chain")) {
      for (std::size_t j = 1; j < f.items.size(); ++j) chain.push_back(read_step(f.items[j]));
    } else if (f.is_head("premises")) {
      for (std::size_t j = 1; j < f.items.size(); ++j) premises.push_back(read_node(f.items[j]));
    } else {
      fail_at(f, "unknown node field");
    }
  }
  if (!term) fail_at(s, "node without (term ...)");
  if (!type) fail_at(s, "node without (type ...)");
  return Derivation{std::move(ctx), *term, *type, *rule, std::move(witness), std::move(chain), std::move(premises)};
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string show(const Formula& f) { return quote(print_formula(f, {false, true})); }

void write_node(const Derivation& d, int indent, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  out << pad << "(rule " << to_string(d.rule) << "\n";
  out << pad << "  (ctx";
  for (const auto& e : d.ctx) out << " (" << e.name << " " << show(e.type) << ")";
  out << ")\n";
  out << pad << "  (term " << quote(print_term(d.term, {true})) << ")\n";
  out << pad << "  (type " << show(d.type) << ")";
  if (d.witness) {
    out << "\n" << pad << "  (witness ";
    if (const auto* u = std::get_if<FoTerm>(&*d.witness)) {
      out << "(fo " << quote(print_fo(*u)) << ")";
    } else {
      const auto& g = std::get<PredAbstraction>(*d.witness);
      out << "(pred (params";
      for (const auto& p : g.params) out << " " << p;
      out << ") " << show(g.body) << ")";
    }
    out << ")";
  }
  if (!d.chain.empty()) {
    out << "\n" << pad << "  (chain";
    for (const auto& s : d.chain) {
      out << "\n" << pad << "    (step " << quote(s.equation) << " (inst";
      for (const auto& [k, v] : s.instance) out << " (" << k << " " << quote(print_fo(v)) << ")";
      out << ") (pos";
      for (auto p : s.position) out << " " << p;
      out << ") (dir " << (s.direction == Direction::LeftToRight ? "ltr" : "rtl") << "))";
    }
    out << ")";
  }
  if (!d.premises.empty()) {
    out << "\n" << pad << "  (premises\n";
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      if (i) out << "\n";
      write_node(d.premises[i], indent + 4, out);
    }
    out << ")";
  }
  out << ")";
}

}  // namespace

std::string print_derivation(const Derivation& d) {
  std::ostringstream out;
  write_node(d, 0, out);
  out << "\n";
  return out.str();
}

Derivation parse_derivation(std::string_view text) { return read_node(SxReader(text).read_top()); }

}  // namespace storop
