#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pim {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error from the expression parser. Carries the byte offset into the
// source string and the set of tokens that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset,
               std::vector<std::string> expected = {})
        : Error(msg + " at offset " + std::to_string(offset)),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Evaluation failure: division by zero, ln/sqrt of a non-positive argument,
// an unbound parameter, a non-finite result. The offending subexpression is
// part of the message.
class EvalError : public Error {
public:
    using Error::Error;
};

// A point (or configuration) outside the valid real domain: singularity
// inside an interval, s-term singular at z=0, tolerances out of range.
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation at a point where Q^2 <= guard: in or too close to a classically
// forbidden region / turning point.
class GuardError : public Error {
public:
    GuardError(const std::string& msg, double z) : Error(msg), z_(z) {}
    double z() const { return z_; }

private:
    double z_;
};

// Third-order approximation broke down: effective q_3 is not positive.
class BreakdownError : public Error {
public:
    BreakdownError(const std::string& msg, double z) : Error(msg), z_(z) {}
    double z() const { return z_; }

private:
    double z_;
};

// Adaptive quadrature exceeded its evaluation budget, which normally means
// the integrand is singular inside the requested interval.
class QuadratureError : public Error {
public:
    using Error::Error;
};

// ODE stepper failure (step-size underflow or step budget exhausted).
class OdeError : public Error {
public:
    using Error::Error;
};

} // namespace pim
