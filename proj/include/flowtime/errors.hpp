#ifndef FLOWTIME_ERRORS_HPP
#define FLOWTIME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flowtime {

// Bad user input: malformed files, infeasible parameters, unknown ids.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// The requested demand exceeds what the network can carry.
class demand_infeasible_error : public std::runtime_error {
 public:
  explicit demand_infeasible_error(const std::string& what)
      : std::runtime_error(what) {}
};

// A violated internal invariant; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace flowtime

#endif  // FLOWTIME_ERRORS_HPP
