#pragma once

#include <stdexcept>
#include <string>

namespace cdopt {

// Every error thrown by the toolkit carries a stable kebab-case tag followed
// by a human-readable detail, e.g. "invalid-partition: 7 blocks for dimension 3".
// Callers that care about the failure class match on the tag prefix.
class Error : public std::runtime_error {
 public:
  Error(std::string tag, const std::string& detail)
      : std::runtime_error(tag + ": " + detail), tag_(std::move(tag)) {}

  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

[[noreturn]] inline void fail(const std::string& tag, const std::string& detail) {
  throw Error(tag, detail);
}

}  // namespace cdopt
