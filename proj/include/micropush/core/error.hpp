#pragma once

#include <stdexcept>
#include <string>

namespace micropush {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration or parameter file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An actuation command outside the admissible band (omega in [0, omega_max], finite heading).
class CommandRejected : public Error {
 public:
  using Error::Error;
};

/// Two bodies share a center, so no contact normal exists.
class DegenerateContact : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling could not place the scene within its attempt budget.
class SceneGenerationError : public Error {
 public:
  using Error::Error;
};

/// A planner could not produce a collision-free path.
class PlanningError : public Error {
 public:
  using Error::Error;
};

/// The contact-aware reference is undefined (goal coincides with the cell).
class ReferenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace micropush
