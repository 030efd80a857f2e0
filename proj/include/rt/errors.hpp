#pragma once

#include <stdexcept>
#include <string>

namespace rt {

// Malformed or out-of-domain caller input (bad family string, non-coprime
// surgery coefficients, unknown JSON fields, ...).  CLI exit code 2.
class InputError : public std::runtime_error {
public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed input outside the supported regime (level below the dual
// Coxeter number, rank above the enumeration guard, missing self-pairing
// table, ...).  CLI exit code 3.
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request refused because the predicted work exceeds a hard budget.
// CLI exit code 4.
class CostGuardError : public std::runtime_error {
public:
  explicit CostGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rt
