#include "powmean/symmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "powmean/errors.hpp"

namespace powmean {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kAsymmetryLimit = 1e-13;
constexpr int kMaxSweeps = 100;

void check_dim(std::size_t dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw Error(ErrorKind::InvalidArgument,
                    "matrix dimension " + std::to_string(dim) + " outside 1.." + std::to_string(kMaxDim));
    }
}

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "matrix shapes differ");
    }
}

bool is_nonnegative_integer(double r) {
    return r >= 0.0 && std::floor(r) == r;
}

}  // namespace

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NotUnital: return "NotUnital";
        case ErrorKind::DegenerateFrame: return "DegenerateFrame";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::SearchExhausted: return "SearchExhausted";
        case ErrorKind::PreconditionViolation: return "PreconditionViolation";
        case ErrorKind::InRegion: return "InRegion";
    }
    return "Unknown";
}

void ToleranceProfile::validate() const {
    const bool positive = eig_tol > 0 && psd_tol > 0 && order_tol > 0 && confluent_tol > 0;
    if (!positive || !(confluent_tol > eig_tol)) {
        throw Error(ErrorKind::InvalidArgument,
                    "tolerances must be positive with confluent_tol > eig_tol");
    }
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

Vector Matrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

// ------------------------------------------------------------- SymMatrix

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> entries) {
    SymMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
    return m;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> entries) {
    return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    return from_matrix(Matrix(rows));
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "symmetric matrix must be square");
    check_dim(m.rows());
    double scale = 0.0;
    for (double v : m.data()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > kAsymmetryLimit * (1.0 + scale)) {
                throw Error(ErrorKind::InvalidArgument, "input matrix is not symmetric");
            }
    return symmetrized(m);
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "symmetric matrix must be square");
    SymMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s.set(i, i, m(i, i));
        for (std::size_t j = i + 1; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    }
    return s;
}

Matrix SymMatrix::to_matrix() const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

Vector SymMatrix::diagonal_entries() const {
    Vector d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i);
    return d;
}

SymMatrix SymMatrix::principal(std::span<const std::size_t> indices) const {
    SymMatrix s(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = i; j < indices.size(); ++j) {
            if (indices[i] >= dim_ || indices[j] >= dim_) throw Error(ErrorKind::IndexOutOfRange, "principal submatrix index");
            s.set(i, j, (*this)(indices[i], indices[j]));
        }
    return s;
}

Vector SymMatrix::apply(std::span<const double> v) const {
    if (v.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "vector length");
    Vector out(dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

double SymMatrix::quadratic_form(std::span<const double> v) const {
    const Vector mv = apply(v);
    return dot(v, mv);
}

double SymMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) row += std::abs((*this)(i, j));
        best = std::max(best, row);
    }
    return best;
}

double SymMatrix::norm_frobenius() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * (*this)(i, j);
    return std::sqrt(s);
}

double SymMatrix::max_abs() const {
    double best = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) best = std::max(best, std::abs((*this)(i, j)));
    return best;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
    require_same_dim(*this, other);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) a_[i * kMaxDim + j] += other(i, j);
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
    require_same_dim(*this, other);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) a_[i * kMaxDim + j] -= other(i, j);
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) a_[i * kMaxDim + j] *= s;
    return *this;
}

bool operator==(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i)
        for (std::size_t j = 0; j < a.dim_; ++j)
            if (a(i, j) != b(i, j)) return false;
    return true;
}

std::string SymMatrix::to_string(int precision) const {
    std::ostringstream os;
    os.precision(precision);
    os << "[";
    for (std::size_t i = 0; i < dim_; ++i) {
        os << (i == 0 ? "[" : " [");
        for (std::size_t j = 0; j < dim_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << "]" << (i + 1 < dim_ ? ",\n" : "");
    }
    os << "]";
    return os.str();
}

SymMatrix congruence(const Matrix& v, const SymMatrix& s) {
    if (v.cols() != s.dim()) throw Error(ErrorKind::DimensionMismatch, "congruence shapes");
    const Matrix vs = v * s.to_matrix();
    SymMatrix out(v.rows());
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = i; j < v.rows(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < v.cols(); ++k) acc += vs(i, k) * v(j, k);
            out.set(i, j, acc);
        }
    return out;
}

Matrix rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return Matrix{{c, -s}, {s, c}};
}

double distance_inf(const SymMatrix& a, const SymMatrix& b) {
    return (a - b).norm_inf();
}

SymMatrix SpectralDecomposition::reconstruct() const {
    const std::size_t n = eigenvalues.size();
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += basis(i, k) * eigenvalues[k] * basis(j, k);
            out.set(i, j, acc);
        }
    return out;
}

// ------------------------------------------------------------ eigensolver

namespace {

// Rotation (c, s, t) annihilating the (p,q) entry: t = tan of the angle.
struct Rotation {
    double c, s, t;
};

Rotation jacobi_rotation(double app, double aqq, double apq) {
    const double theta = (aqq - app) / (2.0 * apq);
    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(1.0, theta));
    const double c = 1.0 / std::hypot(1.0, t);
    return {c, t * c, t};
}

SpectralDecomposition eig_2x2(const SymMatrix& m) {
    SpectralDecomposition out{{m(0, 0), m(1, 1)}, Matrix::identity(2)};
    const double b = m(0, 1);
    if (b != 0.0) {
        const Rotation r = jacobi_rotation(m(0, 0), m(1, 1), b);
        out.eigenvalues = {m(0, 0) - r.t * b, m(1, 1) + r.t * b};
        out.basis = Matrix{{r.c, r.s}, {-r.s, r.c}};
    }
    return out;
}

SpectralDecomposition eig_jacobi(const SymMatrix& m, const ToleranceProfile& tol) {
    const std::size_t n = m.dim();
    Matrix a = m.to_matrix();
    Matrix v = Matrix::identity(n);
    const double frob = m.norm_frobenius();
    const double floor = kEps * kEps * frob;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    bool settled = false;
    for (int sweep = 0; sweep < kMaxSweeps && !settled; ++sweep) {
        settled = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Negligible relative to both diagonal entries, or below
                // any meaningful absolute scale.
                if (std::abs(apq) <= kEps * std::sqrt(std::abs(a(p, p) * a(q, q))) ||
                    std::abs(apq) <= floor) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                settled = false;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const Rotation r = jacobi_rotation(app, aqq, apq);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = r.c * akp - r.s * akq;
                    a(k, q) = r.s * akp + r.c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = r.c * apk - r.s * aqk;
                    a(q, k) = r.s * apk + r.c * aqk;
                }
                a(p, p) = app - r.t * apq;
                a(q, q) = aqq + r.t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = r.c * vkp - r.s * vkq;
                    v(k, q) = r.s * vkp + r.c * vkq;
                }
            }
        }
    }
    if (!settled && off_norm() > tol.eig_tol * frob) {
        throw Error(ErrorKind::NonConvergence, "Jacobi sweeps exceeded " + std::to_string(kMaxSweeps));
    }
    SpectralDecomposition out{Vector(n), std::move(v)};
    for (std::size_t i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
    return out;
}

void sort_ascending(SpectralDecomposition& d) {
    const std::size_t n = d.eigenvalues.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return d.eigenvalues[i] < d.eigenvalues[j]; });
    SpectralDecomposition sorted{Vector(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        sorted.eigenvalues[k] = d.eigenvalues[order[k]];
        for (std::size_t i = 0; i < n; ++i) sorted.basis(i, k) = d.basis(i, order[k]);
    }
    d = std::move(sorted);
}

}  // namespace

SpectralDecomposition eig_sym(const SymMatrix& m, const ToleranceProfile& tol) {
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (!std::isfinite(m(i, j))) throw Error(ErrorKind::DomainError, "non-finite matrix entry");
    SpectralDecomposition d;
    switch (m.dim()) {
        case 1: d = {{m(0, 0)}, Matrix::identity(1)}; break;
        case 2: d = eig_2x2(m); break;
        default: d = eig_jacobi(m, tol); break;
    }
    sort_ascending(d);
    return d;
}

// -------------------------------------------------------- scalar functions

double ScalarFunction::value(double x) const {
    switch (kind_) {
        case Kind::Power:
            if (x == 0.0 && r_ > 0.0) return 0.0;
            return std::pow(x, r_);
        case Kind::Log: return std::log(x);
        case Kind::Exp: return std::exp(x);
    }
    return 0.0;
}

double ScalarFunction::derivative(double x) const {
    switch (kind_) {
        case Kind::Power: return r_ == 0.0 ? 0.0 : r_ * std::pow(x, r_ - 1.0);
        case Kind::Log: return 1.0 / x;
        case Kind::Exp: return std::exp(x);
    }
    return 0.0;
}

double ScalarFunction::second_derivative(double x) const {
    switch (kind_) {
        case Kind::Power: return (r_ == 0.0 || r_ == 1.0) ? 0.0 : r_ * (r_ - 1.0) * std::pow(x, r_ - 2.0);
        case Kind::Log: return -1.0 / (x * x);
        case Kind::Exp: return std::exp(x);
    }
    return 0.0;
}

double ScalarFunction::secant(double a, double b) const {
    if (a == b) return derivative(a);
    switch (kind_) {
        case Kind::Exp: {
            const double h = a - b;
            return std::exp(b) * std::expm1(h) / h;
        }
        case Kind::Log: {
            if (a <= 0.0 || b <= 0.0) return std::numeric_limits<double>::quiet_NaN();
            const double ratio = a / b;
            if (ratio > 0.5 && ratio < 2.0) return std::log1p((a - b) / b) / (a - b);
            return (std::log(a) - std::log(b)) / (a - b);
        }
        case Kind::Power: {
            if (is_polynomial() && r_ <= 16.0) {
                // a^{r-1} + a^{r-2} b + ... + b^{r-1}
                const int n = static_cast<int>(r_);
                double acc = 0.0;
                for (int k = 0; k < n; ++k) acc += std::pow(a, k) * std::pow(b, n - 1 - k);
                return acc;
            }
            if (a <= 0.0 || b <= 0.0) return (value(a) - value(b)) / (a - b);
            const double ratio = a / b;
            const double u = (ratio > 0.5 && ratio < 2.0) ? std::log1p((a - b) / b) : std::log(a) - std::log(b);
            return std::pow(b, r_ - 1.0) * std::expm1(r_ * u) / std::expm1(u);
        }
    }
    return 0.0;
}

bool ScalarFunction::is_polynomial() const {
    return kind_ == Kind::Power && is_nonnegative_integer(r_);
}

bool ScalarFunction::smooth_at(double x) const {
    if (!std::isfinite(x)) return false;
    switch (kind_) {
        case Kind::Power: return is_polynomial() || x > 0.0;
        case Kind::Log: return x > 0.0;
        case Kind::Exp: return true;
    }
    return false;
}

std::string ScalarFunction::name() const {
    switch (kind_) {
        case Kind::Power: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "power(%.17g)", r_);
            return buf;
        }
        case Kind::Log: return "log";
        case Kind::Exp: return "exp";
    }
    return "?";
}

// ---------------------------------------------------------- matrix functions

SymMatrix mat_fun(const SpectralDecomposition& spec, const ScalarFunction& f, const ToleranceProfile& tol) {
    const std::size_t n = spec.eigenvalues.size();
    double scale = 0.0;
    for (double l : spec.eigenvalues) scale = std::max(scale, std::abs(l));

    Vector fv(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double l = spec.eigenvalues[k];
        switch (f.kind()) {
            case ScalarFunction::Kind::Exp: fv[k] = std::exp(l); break;
            case ScalarFunction::Kind::Log:
                if (!(l > tol.psd_tol * scale) || l <= 0.0) {
                    throw Error(ErrorKind::DomainError, "log of a matrix that is not positive definite");
                }
                fv[k] = std::log(l);
                break;
            case ScalarFunction::Kind::Power: {
                const double r = f.exponent();
                if (is_nonnegative_integer(r)) {
                    fv[k] = std::pow(l, r);
                } else if (r > 0.0) {
                    if (l < -tol.psd_tol * scale) {
                        throw Error(ErrorKind::DomainError, f.name() + " of a matrix that is not positive semidefinite");
                    }
                    fv[k] = l <= tol.eig_tol * scale ? 0.0 : std::pow(l, r);
                } else {
                    if (!(l > tol.psd_tol * scale) || l <= 0.0) {
                        throw Error(ErrorKind::DomainError, f.name() + " of a matrix that is not positive definite");
                    }
                    fv[k] = std::pow(l, r);
                }
                break;
            }
        }
    }
    return SpectralDecomposition{std::move(fv), spec.basis}.reconstruct();
}

SymMatrix mat_fun(const SymMatrix& m, const ScalarFunction& f, const ToleranceProfile& tol) {
    if (f.kind() == ScalarFunction::Kind::Power) {
        if (f.exponent() == 1.0) return m;
        if (f.exponent() == 0.0) return SymMatrix::identity(m.dim());
    }
    return mat_fun(eig_sym(m, tol), f, tol);
}

SymMatrix inverse(const SymMatrix& m, const ToleranceProfile& tol) {
    return mat_fun(m, ScalarFunction::power(-1.0), tol);
}

OrderVerdict loewner_leq(const SymMatrix& a, const SymMatrix& b, const ToleranceProfile& tol) {
    require_same_dim(a, b);
    const SymMatrix diff = b - a;
    const SpectralDecomposition d = eig_sym(diff, tol);
    OrderVerdict v;
    v.min_eigenvalue = d.eigenvalues.front();
    v.witness = d.basis.column(0);
    v.holds = v.min_eigenvalue >= -tol.order_tol * (1.0 + diff.norm_inf());
    return v;
}

// ------------------------------------------------------------ random input

Matrix random_orthogonal(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix q(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
        for (;;) {
            Vector col(dim);
            for (double& c : col) c = gauss(rng);
            // Modified Gram-Schmidt, twice for orthogonality to rounding.
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t k = 0; k < j; ++k) {
                    double proj = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) proj += q(i, k) * col[i];
                    for (std::size_t i = 0; i < dim; ++i) col[i] -= proj * q(i, k);
                }
            const double nrm = norm2(col);
            if (nrm < 1e-8) continue;
            for (std::size_t i = 0; i < dim; ++i) q(i, j) = col[i] / nrm;
            break;
        }
    }
    return q;
}

SymMatrix random_pd(std::size_t dim, std::uint64_t seed, double condition_spread) {
    check_dim(dim);
    if (!(condition_spread >= 1.0)) throw Error(ErrorKind::InvalidArgument, "condition spread must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double log_spread = std::log(condition_spread);
    Vector eig(dim);
    for (double& l : eig) l = std::exp(unit(rng) * log_spread);
    const Matrix q = random_orthogonal(dim, rng);
    return SpectralDecomposition{std::move(eig), q}.reconstruct();
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) {
    return std::sqrt(dot(v, v));
}

}  // namespace powmean
