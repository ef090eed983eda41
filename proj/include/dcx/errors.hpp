// Error types shared by every module.

#ifndef DCX_ERRORS_HPP
#define DCX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcx {

// A computation was asked to go beyond its enumeration cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text does not follow the formula or model grammar.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Syntactically valid formula that violates a dialect restriction.
class WellFormednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation called outside its documented domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dcx

#endif  // DCX_ERRORS_HPP
