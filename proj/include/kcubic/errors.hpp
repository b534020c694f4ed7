#pragma once

#include <stdexcept>
#include <string>

namespace kcubic {

// Input outside the domain of an operation (e.g. blend parameter a not in (0,1]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroPolynomialError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The hodograph vanishes at the requested parameter; curvature is undefined.
class ZeroSpeedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// x'y'' - x''y' vanishes identically (collinear control polygon).
class IdenticallyZeroError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation requires h > 0 and 2/3 < a <= 1.
class RegimeError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// More than one curvature extremum inside the regime where at most one is
// possible. Never expected; raised instead of constructing the report.
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace kcubic
