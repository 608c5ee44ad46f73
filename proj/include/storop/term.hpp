#ifndef STOROP_TERM_HPP
#define STOROP_TERM_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace storop {

/// Syntax error raised by the term and formula parsers.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Untyped λ-term with named variables. Immutable and cheap to copy; equality
/// of terms is α-equivalence (see alpha_equal), never pointer or name equality.
class Term {
 public:
  enum class Kind { Var, Abs, App };

  static Term var(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fn, Term arg);
  /// (head)a1...an
  static Term apply(Term head, const std::vector<Term>& args);
  /// λx1...λxn body
  static Term lambdas(const std::vector<std::string>& binders, Term body);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_abs() const { return kind() == Kind::Abs; }
  bool is_app() const { return kind() == Kind::App; }

  /// Variable name (Var) or binder name (Abs).
  const std::string& name() const;
  const Term& body() const;
  const Term& fn() const;
  const Term& arg() const;

  std::size_t size() const;

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::string name;
  Term first;   // body for Abs, function for App
  Term second;  // argument for App
  std::size_t size;
};

using Bindings = std::map<std::string, Term>;

bool alpha_equal(const Term& a, const Term& b);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, const std::string& name);
/// Every variable name occurring in t, free or bound.
std::set<std::string> all_names(const Term& t);
bool is_closed(const Term& t);

/// Name derived from base that is not in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Simultaneous capture-avoiding substitution.
Term substitute(const Term& t, const Bindings& bindings);
Term substitute(const Term& t, const std::string& name, const Term& value);

/// Head/argument decomposition of an application spine: t = (head)args.
struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine unwind(const Term& t);

/// Leading abstractions: t = λbinders.core.
struct Lambdas {
  std::vector<std::string> binders;
  Term core;
};
Lambdas peel(const Term& t);

/// Canonical α-representative: binders renamed by depth (b0, b1, ...) with
/// names that avoid the free variables of t.
Term alpha_normalize(const Term& t);

struct PrintOptions {
  /// Replace closed subterms α-equal to s̄ or a Church numeral by @succ /
  /// @church:n.
  bool fold_builtins = false;
};

std::string print_term(const Term& t, const PrintOptions& opts = {});

/// Parses the term grammar documented in README.md. Builtins (@T1, @church:3,
/// ...) are expanded at parse time.
Term parse_term(std::string_view text);

/// Resolves builtin names (without '@'); nullopt means unknown.
using BuiltinResolver = std::function<std::optional<Term>(std::string_view)>;
Term parse_term(std::string_view text, const BuiltinResolver& resolve);

}  // namespace storop

#endif  // STOROP_TERM_HPP
