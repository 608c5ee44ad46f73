#include "storop/builtins.hpp"

#include <charconv>
#include <stdexcept>

#include "storop/numerals.hpp"

namespace storop {

namespace {

struct Source {
  const char* name;
  const char* text;
};

// Order matters: later entries may reference earlier ones.
constexpr Source kSources[] = {
    {"zero", "\\x \\f x"},
    {"succ", "\\n \\x \\f (f)((n)x)f"},
    {"delta", "\\f (f)@zero"},
    {"G", "\\x \\y (x)\\z (y)(@succ)z"},
    {"F", "\\x \\y (x)(@succ)y"},
    {"T1", "\\n ((n)@delta)@G"},
    {"T2", "\\n \\f (((n)f)@F)@zero"},
    {"T:1", "\\v \\f ((v)(@T1)v f)\\x x"},
    {"T:2", "\\v \\f ((v)(@T2)v f)\\x x"},
    {"Tp:1", "\\v \\f ((v)(@T1)v f)\\d (@T1)v f"},
    {"Tp:2", "\\v \\f ((v)(@T2)v f)\\d (@T2)v f"},
    {"T", "@T:1"},
    {"Tp", "@Tp:1"},
    {"omega", "(\\x (x)x)\\x (x)x"},
    {"theta0", "\\x \\f \\z (x)(\\d z)\\x x"},
};

std::optional<Term> church_ref(std::string_view name) {
  if (name.rfind("church:", 0) != 0) return std::nullopt;
  auto digits = name.substr(7);
  unsigned n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return church(n);
}

const std::vector<Builtin>& library() {
  static const std::vector<Builtin> lib = [] {
    std::vector<Builtin> out;
    BuiltinResolver resolve = [&out](std::string_view name) -> std::optional<Term> {
      if (auto c = church_ref(name)) return c;
      for (const auto& b : out)
        if (b.name == name) return b.term;
      return std::nullopt;
    };
    for (const auto& s : kSources) out.push_back({s.name, parse_term(s.text, resolve)});
    return out;
  }();
  return lib;
}

}  // namespace

std::optional<Term> lookup_builtin(std::string_view name) {
  if (auto c = church_ref(name)) return c;
  for (const auto& b : library())
    if (b.name == name) return b.term;
  return std::nullopt;
}

Term builtin_term(std::string_view name) {
  auto t = lookup_builtin(name);
  if (!t) throw std::invalid_argument("unknown builtin: " + std::string(name));
  return *t;
}

const std::vector<Builtin>& builtin_library() { return library(); }

}  // namespace storop
