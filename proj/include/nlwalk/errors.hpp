#ifndef NLWALK_ERRORS_HPP
#define NLWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlwalk {

// Errors fall in two families: bad input (domain/regime/usage) and numerical
// failures. The CLI maps them to exit codes 2 and 3 respectively.
enum class ErrorFamily { Domain, Numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorFamily family, const std::string& what)
      : std::runtime_error(what), family_(family) {}
  ErrorFamily family() const noexcept { return family_; }

private:
  ErrorFamily family_;
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(ErrorFamily::Domain, what) {}
};

/// Quantity requested outside the regime where it is defined (e.g. a peak
/// runtime for a plateauing instance).
class RegimeError : public Error {
public:
  explicit RegimeError(const std::string& what) : Error(ErrorFamily::Domain, what) {}
};

/// Target probability is never reached by the dynamics.
class UnreachableError : public Error {
public:
  explicit UnreachableError(const std::string& what) : Error(ErrorFamily::Domain, what) {}
};

class AmbiguousScalingError : public Error {
public:
  explicit AmbiguousScalingError(const std::string& what)
      : Error(ErrorFamily::Domain, what) {}
};

/// File output failed (unwritable directory, short write).
class IOError : public Error {
public:
  explicit IOError(const std::string& what) : Error(ErrorFamily::Domain, what) {}
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error(ErrorFamily::Numeric, what) {}
};

/// Imaginary residue of the closed-form time left tolerance: a branch-cut bug,
/// not a domain failure.
class BranchError : public Error {
public:
  explicit BranchError(const std::string& what) : Error(ErrorFamily::Numeric, what) {}
};

class DegenerateFitError : public Error {
public:
  explicit DegenerateFitError(const std::string& what) : Error(ErrorFamily::Numeric, what) {}
};

}  // namespace nlwalk

#endif  // NLWALK_ERRORS_HPP
