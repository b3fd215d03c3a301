#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace powmean {

inline constexpr std::size_t kMaxDim = 8;

using Vector = std::vector<double>;

/// Relative tolerance scales shared by every numerical routine.
struct ToleranceProfile {
    double eig_tol = 1e-12;        // eigensolver convergence / numerical-zero eigenvalues
    double psd_tol = 1e-10;        // positivity of inputs and map outputs
    double order_tol = 1e-10;      // Loewner-order verdicts
    double confluent_tol = 1e-7;   // coincident divided-difference nodes

    /// Throws Error(InvalidArgument) unless all scales are positive and
    /// confluent_tol > eig_tol.
    void validate() const;
};

/// Dense row-major matrix of arbitrary shape. Used for eigenbases, Kraus
/// factors, rotations and map actions.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    double norm_inf() const;
    Vector column(std::size_t j) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Real symmetric matrix of dimension 1..kMaxDim. Symmetry is exact: both
/// triangles always hold the same bits.
class SymMatrix {
public:
    SymMatrix() : SymMatrix(1) {}
    explicit SymMatrix(std::size_t dim);

    static SymMatrix identity(std::size_t dim);
    static SymMatrix diagonal(std::span<const double> entries);
    static SymMatrix diagonal(std::initializer_list<double> entries);

    /// Rows of a nearly symmetric matrix. Entries are symmetrized as
    /// (M+M^T)/2; asymmetry above 1e-13 * (1 + max|m_ij|) is rejected.
    static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static SymMatrix from_matrix(const Matrix& m);

    /// Symmetrizes without the asymmetry check (for internally produced
    /// products that are symmetric up to rounding).
    static SymMatrix symmetrized(const Matrix& m);

    std::size_t dim() const noexcept { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * kMaxDim + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        a_[i * kMaxDim + j] = v;
        a_[j * kMaxDim + i] = v;
    }

    Matrix to_matrix() const;
    Vector diagonal_entries() const;

    /// Principal submatrix on the given (0-based) indices.
    SymMatrix principal(std::span<const std::size_t> indices) const;

    Vector apply(std::span<const double> v) const;
    double quadratic_form(std::span<const double> v) const;

    double norm_inf() const;        // max absolute row sum
    double norm_frobenius() const;
    double max_abs() const;
    double trace() const;

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator-=(const SymMatrix& other);
    SymMatrix& operator*=(double s);

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
    friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
    friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }

    friend bool operator==(const SymMatrix& a, const SymMatrix& b);

    std::string to_string(int precision = 6) const;

private:
    std::size_t dim_;
    std::array<double, kMaxDim * kMaxDim> a_{};
};

/// V * S * V^T, symmetrized. V may be rectangular (out x in).
SymMatrix congruence(const Matrix& v, const SymMatrix& s);

/// Plane rotation [[cos, -sin], [sin, cos]].
Matrix rotation(double theta);

/// Max-abs-row-sum distance between two equally sized symmetric matrices.
double distance_inf(const SymMatrix& a, const SymMatrix& b);

struct SpectralDecomposition {
    Vector eigenvalues;   // ascending
    Matrix basis;         // columns are orthonormal eigenvectors

    SymMatrix reconstruct() const;
};

/// Cyclic Jacobi eigensolver (closed-form rotation for dim 2). At most 100
/// sweeps; throws Error(NonConvergence) if the off-diagonal mass is still
/// above eig_tol * ||M||_F after the cap.
SpectralDecomposition eig_sym(const SymMatrix& m, const ToleranceProfile& tol = {});

/// Scalar function tags for the spectral calculus.
class ScalarFunction {
public:
    enum class Kind { Power, Log, Exp };

    static ScalarFunction power(double r) { return {Kind::Power, r}; }
    static ScalarFunction log() { return {Kind::Log, 0.0}; }
    static ScalarFunction exp() { return {Kind::Exp, 0.0}; }

    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return r_; }

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    /// (f(a) - f(b)) / (a - b) evaluated without cancellation; f'(a) when a == b.
    double secant(double a, double b) const;

    /// True when the function is smooth at x (the interior of its domain).
    bool smooth_at(double x) const;

    /// Power with a nonnegative integer exponent: defined on all of R.
    bool is_polynomial() const;

    std::string name() const;

private:
    ScalarFunction(Kind k, double r) : kind_(k), r_(r) {}
    Kind kind_;
    double r_;
};

/// f(M) = V diag(f(lambda_i)) V^T.
///
/// Domain policy, with scale = ||M||_inf:
///   - power(r), r a nonnegative integer, and exp: any symmetric M;
///   - power(r), r > 0 otherwise: eigenvalues >= -psd_tol*scale; eigenvalues
///     within eig_tol*scale of zero are treated as exactly zero (0^r := 0);
///   - power(r), r < 0, and log: eigenvalues > psd_tol*scale.
/// Violations throw Error(DomainError).
SymMatrix mat_fun(const SymMatrix& m, const ScalarFunction& f, const ToleranceProfile& tol = {});

/// Same as mat_fun but reuses an existing decomposition of m.
SymMatrix mat_fun(const SpectralDecomposition& spec, const ScalarFunction& f,
                  const ToleranceProfile& tol = {});

SymMatrix inverse(const SymMatrix& m, const ToleranceProfile& tol = {});

struct OrderVerdict {
    bool holds = true;
    double min_eigenvalue = 0.0;   // of B - A
    Vector witness;                // unit eigenvector for min_eigenvalue
};

/// Decides A <= B in the Loewner order: holds iff
/// lambda_min(B - A) >= -order_tol * (1 + ||B - A||_inf).
OrderVerdict loewner_leq(const SymMatrix& a, const SymMatrix& b, const ToleranceProfile& tol = {});

/// Seeded positive definite matrix Q diag(lambda) Q^T with log-uniform
/// eigenvalues in [1/spread, spread] and a Haar-like random orthogonal Q.
SymMatrix random_pd(std::size_t dim, std::uint64_t seed, double condition_spread);

/// Random orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
Matrix random_orthogonal(std::size_t dim, std::mt19937_64& rng);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);

}  // namespace powmean
