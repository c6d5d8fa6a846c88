#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

// Base class for every error the library can raise on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Two fields with incompatible grids were combined.
class GridMismatch : public Error {
public:
    using Error::Error;
};

// A coefficient that must be (strictly) positive is not, e.g. min(g) <= 0.
class PositivityViolation : public Error {
public:
    using Error::Error;
};

// Mollifier scale epsilon below the 4*dx resolvability floor, or outside (0,1].
class UnresolvableKernel : public Error {
public:
    using Error::Error;
};

// Solution norm exceeded the blow-up guard threshold during time stepping.
class StabilityBreach : public Error {
public:
    using Error::Error;
};

// An operation that requires f == 0 was called on a forced problem.
class ForcingPresent : public Error {
public:
    using Error::Error;
};

// An experiment was asked to run outside its theoretical scope (e.g. g != 1).
class ScopeViolation : public Error {
public:
    using Error::Error;
};

// A field failed a finiteness or Hermitian-residue check.
class NonFiniteField : public Error {
public:
    using Error::Error;
};

// Configuration rejected; `what()` carries one line per field-path-qualified issue.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace fracwave
