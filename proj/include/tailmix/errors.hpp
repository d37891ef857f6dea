#ifndef TAILMIX_ERRORS_HPP
#define TAILMIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tailmix {

// Contract violation on an input (bad parameter range, unsupported model pairing).
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure (quadrature tolerance not reached, root bracket lost, ...).
// `achieved` carries the error bound reached before giving up, when meaningful.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg, double achieved_bound = -1.0)
      : std::runtime_error(msg), achieved(achieved_bound) {}
  double achieved;
};

}  // namespace tailmix

#endif
