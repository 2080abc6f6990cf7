#pragma once
/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by all modules.
 */

#include <stdexcept>
#include <string>

namespace drinfeld {

/** @brief Base class of every library error. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** @brief Reduction modulo the uniformiser was requested for a non-integral element. */
class NegativeValuation : public Error {
public:
    using Error::Error;
};

/** @brief Reduction was requested into a residue field of the wrong characteristic. */
class ResidueFieldMismatch : public Error {
public:
    using Error::Error;
};

/** @brief A group element with zero determinant was supplied. */
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/** @brief A determinant that must be a unit is not invertible. */
class NonInvertibleDeterminant : public Error {
public:
    using Error::Error;
};

/** @brief A pole lies strictly inside the annulus on which a Laurent expansion was requested. */
class PoleInsideAnnulus : public Error {
public:
    using Error::Error;
};

/** @brief An operation that needs a non-zero function received zero. */
class ZeroFunction : public Error {
public:
    using Error::Error;
};

/** @brief User-supplied parameters are out of range or inconsistent. */
class InvalidParameters : public Error {
public:
    using Error::Error;
};

/** @brief An internal consistency audit failed. */
class InvariantViolation : public Error {
public:
    using Error::Error;
};

}  // namespace drinfeld
