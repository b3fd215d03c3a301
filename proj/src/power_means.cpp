#include "powmean/power_means.hpp"

#include <cmath>
#include <cstdio>

#include "powmean/errors.hpp"

namespace powmean {

PowerExponent PowerExponent::real(double p) {
    if (!std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "exponent must be finite");
    PowerExponent e;
    if (std::abs(p) >= kLogThreshold) {
        e.log_ = false;
        e.p_ = p;
    }
    return e;
}

PowerExponent PowerExponent::negated() const {
    return log_ ? *this : real(-p_);
}

std::string PowerExponent::to_string() const {
    if (log_) return "log-euclidean";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", p_);
    return buf;
}

SymMatrix power_mean(PowerExponent p, const SymMatrix& a, const SymMatrix& b, double weight,
                     const ToleranceProfile& tol) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "power mean of matrices of different size");
    if (!(weight > 0.0 && weight < 1.0)) throw Error(ErrorKind::InvalidArgument, "weight must lie in (0,1)");
    if (p.is_log_euclidean()) {
        const ScalarFunction log = ScalarFunction::log();
        return mat_fun((1.0 - weight) * mat_fun(a, log, tol) + weight * mat_fun(b, log, tol),
                       ScalarFunction::exp(), tol);
    }
    const double r = p.value();
    const ScalarFunction f = ScalarFunction::power(r);
    const SymMatrix inner = (1.0 - weight) * mat_fun(a, f, tol) + weight * mat_fun(b, f, tol);
    return mat_fun(inner, ScalarFunction::power(1.0 / r), tol);
}

SymMatrix map_power(const LinearMatrixMap& phi, PowerExponent p, const SymMatrix& a, const ToleranceProfile& tol) {
    if (!phi.is_unital(tol)) throw Error(ErrorKind::NotUnital, "map_power needs a unital map");
    if (a.dim() != phi.in_dim()) throw Error(ErrorKind::DimensionMismatch, "map input dimension");
    if (p.is_log_euclidean()) {
        return mat_fun(phi.apply(mat_fun(a, ScalarFunction::log(), tol)), ScalarFunction::exp(), tol);
    }
    const double r = p.value();
    const SymMatrix image = phi.apply(mat_fun(a, ScalarFunction::power(r), tol));
    const SpectralDecomposition d = eig_sym(image, tol);
    if (!(d.eigenvalues.front() > tol.psd_tol * image.norm_inf())) {
        throw Error(ErrorKind::DomainError, "Phi(A^p) is not positive definite");
    }
    return mat_fun(d, ScalarFunction::power(1.0 / r), tol);
}

LimitSlopeReport limit_slope_check(const LinearMatrixMap& phi, const SymMatrix& a,
                                   const std::vector<double>& exponents, const ToleranceProfile& tol) {
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (!(exponents[i] > 0.0) || (i > 0 && exponents[i] >= exponents[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "exponents must be positive and strictly descending");
        }
    }
    const SymMatrix limit = map_power(phi, PowerExponent::log_euclidean(), a, tol);
    LimitSlopeReport report;
    report.exponents = exponents;
    for (double p : exponents) {
        const double dev = distance_inf(map_power(phi, PowerExponent::real(p), a, tol), limit);
        if (!report.deviations.empty() && dev > report.deviations.back()) report.decreasing = false;
        report.deviations.push_back(dev);
        report.ratios.push_back(dev / p);
        report.max_ratio = std::max(report.max_ratio, dev / p);
    }
    return report;
}

}  // namespace powmean
