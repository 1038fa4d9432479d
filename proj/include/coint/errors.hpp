#ifndef COINT_ERRORS_HPP
#define COINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coint {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Problems with input data: malformed files, series too short, gaps.
// The CLI maps these to exit code 1.
class DataError : public Error {
public:
    using Error::Error;
};

class LoadError : public DataError {
public:
    using DataError::DataError;
};

class SampleSizeError : public DataError {
public:
    using DataError::DataError;
};

// Problems arising inside a computation (singular moments, degenerate
// geometry, contract violations). The CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class InvalidInputError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A moment matrix that must be positive definite is not. Carries the
// smallest pivot seen during factorization as a diagnostic.
class SingularMomentError : public NumericalError {
public:
    SingularMomentError(const std::string &msg, double smallest_pivot)
        : NumericalError(msg + " (smallest pivot " + std::to_string(smallest_pivot) + ")"),
          smallest_pivot_(smallest_pivot) {}
    double smallest_pivot() const { return smallest_pivot_; }

private:
    double smallest_pivot_ = 0.0;
};

class SingularRegressionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RankError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidRankError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidEigenvalueError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateGeometryError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoDecompositionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InvalidRestrictionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NumericalInconsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace coint

#endif
