#pragma once

#include <stdexcept>
#include <string>

namespace secrecy {

/// Bad scenario/input description (dimension mismatch, infeasible covariance, ...).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation.
class numeric_domain_error : public std::runtime_error {
 public:
  explicit numeric_domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// A structural invariant of a value was violated (e.g. non-Hermitian matrix
/// passed where a Hermitian one is required).
class invariant_error : public std::logic_error {
 public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

/// Requested combination of variants is outside the implemented surface.
class not_implemented_error : public std::logic_error {
 public:
  explicit not_implemented_error(const std::string& what) : std::logic_error(what) {}
};

/// A checked numerical claim failed (used by the report drivers).
class assertion_failure : public std::runtime_error {
 public:
  explicit assertion_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secrecy
