#ifndef CHOREFAIR_ERRORS_HPP_
#define CHOREFAIR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace chorefair {

// Malformed or out-of-contract input (dimension mismatch, positive valuation,
// violated precondition of a construction).
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured search budget was exhausted before the answer was certified.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An algorithm reached a state its correctness argument rules out.
class algorithm_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chorefair

#endif  // CHOREFAIR_ERRORS_HPP_
