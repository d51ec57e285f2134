#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cg {

/// Error raised for invalid input (bad matrices, malformed words,
/// dimension mismatches, exceeded enumeration caps).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::string detail = {})
      : std::runtime_error(what), detail_(std::move(detail)) {}

  /// Machine-readable detail, e.g. the offending index pair.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
};

}  // namespace cg
