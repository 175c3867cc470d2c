#pragma once

#include <stdexcept>
#include <string>

namespace hyperlab {

/// Bad input: malformed sets, parameters out of range, unparsable files.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A guard on work or memory was exceeded (brute-force censuses, edge budget).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hyperlab
