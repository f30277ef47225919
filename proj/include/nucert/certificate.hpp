#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nucert::cert {

/// A machine-checked statement.  The anchor is a dotted path locating the
/// claim in the report tree, e.g. "h1.dirac.infinite.adjoint_pairing".
struct Certificate {
  std::string id;
  std::string statement;
  std::string anchor;
  bool passed = false;
  std::string witness;
};

inline Certificate make(std::string id, std::string statement,
                        std::string anchor, bool passed,
                        std::string witness = {}) {
  return Certificate{std::move(id), std::move(statement), std::move(anchor),
                     passed, std::move(witness)};
}

inline bool all_passed(const std::vector<Certificate>& certs) {
  for (const auto& c : certs)
    if (!c.passed) return false;
  return true;
}

}  // namespace nucert::cert
