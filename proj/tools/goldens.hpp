// The files under data/ that are regenerated by storop_goldens and compared
// byte for byte by the tests.
#ifndef STOROP_TOOLS_GOLDENS_HPP
#define STOROP_TOOLS_GOLDENS_HPP

#include <string>
#include <utility>
#include <vector>

#include "storop/builtins.hpp"
#include "storop/derivations.hpp"
#include "storop/reduce.hpp"
#include "storop/storage.hpp"
#include "storop/typing.hpp"

namespace storop::goldens {

struct File {
  std::string path;  // relative to the data directory
  std::string content;
};

inline std::string theta0_hnf() {
  auto r = head_reduce(parse_term("(@T2 @theta0) f"));
  return print_term(r.result, {true}) + "\n";
}

inline std::vector<File> all() {
  std::vector<File> out;
  for (const auto& e : bundled::library()) {
    std::string header = "; " + e.statement + (e.expected_ok ? "\n" : "\n; does not check, see README\n");
    out.push_back({"derivations/" + e.name + ".deriv", header + print_derivation(e.derivation)});
  }
  const std::pair<const char*, unsigned> certs[] = {{"T1", 3}, {"T2", 3}, {"T", 2}, {"Tp", 2}};
  for (const auto& [name, n] : certs)
    out.push_back({"golden/cert_" + std::string(name) + "_" + std::to_string(n) + ".txt",
                   serialize_certificate(certify(builtin_term(name), n))});
  out.push_back({"golden/theta0_T2_hnf.txt", theta0_hnf()});
  return out;
}

}  // namespace storop::goldens

#endif
