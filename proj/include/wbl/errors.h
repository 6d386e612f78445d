#ifndef WBL_ERRORS_H
#define WBL_ERRORS_H

#include <stdexcept>
#include <string>

namespace wbl {

// Bad shapes, dimensions, permutations or parameter ranges.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

// An input object (state, observable, POVM, table) failed a physical check.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string &what) : std::runtime_error(what) {}
};

// A numerical routine was called outside its domain (e.g. eigensolver on a
// non-Hermitian matrix).
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string &what) : std::logic_error(what) {}
};

}  // namespace wbl

#endif  // WBL_ERRORS_H
