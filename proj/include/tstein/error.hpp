#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tstein {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (e.g. A and B of different sizes).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise malformed input values.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A pivot or diagonal entry fell below the rank threshold.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, std::size_t index, double magnitude)
        : Error(what), index_(index), magnitude_(magnitude) {}

    std::size_t index() const noexcept { return index_; }
    double magnitude() const noexcept { return magnitude_; }

private:
    std::size_t index_;
    double magnitude_;
};

/// An iterative factorization ran out of its sweep budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::size_t sweeps) : Error(what), sweeps_(sweeps) {}

    std::size_t sweeps() const noexcept { return sweeps_; }

private:
    std::size_t sweeps_;
};

} // namespace tstein
