#pragma once

#include <stdexcept>
#include <string>

namespace qdyn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simultaneous root iteration hit its cap with corrections still large.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Evaluation landed on a pole of a weight function or an inner denominator.
class PoleHit : public Error {
public:
    using Error::Error;
};

class DerivativeZero : public Error {
public:
    using Error::Error;
};

/// A closed-form formula was asked for at a parameter it excludes.
class DomainExcluded : public Error {
public:
    using Error::Error;
};

/// Roots of the period equation could not be chained into cycles.
class GroupingFailure : public Error {
public:
    using Error::Error;
};

}  // namespace qdyn
