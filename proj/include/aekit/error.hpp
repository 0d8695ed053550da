#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aekit {

/// One problem found in an input file. `line` is 1-based, 0 when the issue
/// is not tied to a line (e.g. a whole-dataset check).
struct Issue {
  std::size_t line = 0;
  std::string record_id;
  std::string message;

  std::string describe() const {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!record_id.empty()) out += "record '" + record_id + "': ";
    out += message;
    return out;
  }
};

/// Thrown when input data violates a format or a record invariant. Carries
/// every issue found in the input, not only the first.
class DataError : public std::runtime_error {
 public:
  explicit DataError(std::vector<Issue> issues)
      : std::runtime_error(summarize(issues)), issues_(std::move(issues)) {}

  explicit DataError(const std::string& message) : DataError(std::vector<Issue>{{0, {}, message}}) {}

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  static std::string summarize(const std::vector<Issue>& issues) {
    std::string out;
    for (const auto& issue : issues) {
      if (!out.empty()) out += '\n';
      out += issue.describe();
    }
    return out;
  }

  std::vector<Issue> issues_;
};

/// Bad arguments or configuration supplied by the caller.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace aekit
