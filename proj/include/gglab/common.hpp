#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gg {

/// Thrown when inputs violate a documented precondition (bad dimensions,
/// malformed probabilities, parameters out of range). CLI maps it to exit 2.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative method fails to reach its tolerance or a linear
/// program misbehaves. Carries the achieved residual. CLI maps it to exit 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what, double residual = 0.0)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Thrown when a computation exceeds a configured resource cap (e.g. vertex
/// explosion in polytope images). CLI maps it to exit 3.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Probability weights must sum to 1 within this tolerance; inputs outside it
/// are rejected, never renormalized.
inline constexpr double kNormalizationTol = 1e-12;

/// Default feasibility tolerance of the dense LP solver.
inline constexpr double kLpTol = 1e-9;

/// Default tolerance for the verification predicates (excessive, balanced, ...).
inline constexpr double kCheckTol = 1e-7;

/// Dense row-major matrix of doubles. Minimal on purpose: the artifact only
/// needs storage, element access and a few norms.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    double min() const;
    double max() const;

    /// Sup-norm of the entrywise difference. Dimensions must match.
    static double max_abs_diff(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace gg
