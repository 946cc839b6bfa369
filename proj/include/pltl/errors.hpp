#pragma once

#include <stdexcept>
#include <string>

namespace pltl {

class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/* Formula text does not conform to the grammar. `position` is the
 * 0-based character offset of the offending token. */
class parse_error : public error {
public:
  parse_error(const std::string &msg, size_t position)
      : error(msg + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  size_t position;
};

// Formula is neither syntactically co-safe nor safe.
class fragment_error : public error {
public:
  using error::error;
};

// Trajectory shorter than the formula's temporal horizon.
class horizon_error : public error {
public:
  using error::error;
};

// A satisfied (violated) formula has zero prior mass on the satisfying
// (violating) side; the posterior is undefined.
class support_error : public error {
public:
  using error::error;
};

// Formula is not an instance of a supported automaton template.
class shape_error : public error {
public:
  using error::error;
};

// Enumeration or other size guard exceeded.
class guard_error : public error {
public:
  using error::error;
};

// Constraint cannot be met (generation or inference stuck).
class infeasible_error : public error {
public:
  using error::error;
};

class io_error : public error {
public:
  using error::error;
};

class config_error : public error {
public:
  using error::error;
};

} // namespace pltl
