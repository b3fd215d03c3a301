#pragma once

#include <string>
#include <vector>

#include "powmean/maps.hpp"
#include "powmean/symmat.hpp"

namespace powmean {

/// Exponent of a power mean. Real(p) with |p| < 1e-8 collapses to the
/// Log-Euclidean tag.
class PowerExponent {
public:
    static constexpr double kLogThreshold = 1e-8;

    static PowerExponent log_euclidean() { return PowerExponent(); }
    static PowerExponent real(double p);

    PowerExponent() = default;
    /// Same as real(p); implicit so plain doubles can be passed.
    PowerExponent(double p) : PowerExponent(real(p)) {}  // NOLINT(google-explicit-constructor)

    bool is_log_euclidean() const noexcept { return log_; }
    /// 0 for the Log-Euclidean tag.
    double value() const noexcept { return p_; }
    PowerExponent negated() const;

    std::string to_string() const;

    friend bool operator==(const PowerExponent&, const PowerExponent&) = default;

private:
    bool log_ = true;
    double p_ = 0.0;
};

/// ((1-w) A^p + w B^p)^{1/p}, or exp((1-w) log A + w log B) for the
/// Log-Euclidean tag. PSD inputs are accepted when p > 0.
SymMatrix power_mean(PowerExponent p, const SymMatrix& a, const SymMatrix& b, double weight = 0.5,
                     const ToleranceProfile& tol = {});

/// Phi(A^p)^{1/p}, or exp(Phi(log A)). Throws NotUnital for a map that does
/// not fix the identity and DomainError when Phi(A^p) is not positive definite.
SymMatrix map_power(const LinearMatrixMap& phi, PowerExponent p, const SymMatrix& a,
                    const ToleranceProfile& tol = {});

struct LimitSlopeReport {
    std::vector<double> exponents;
    std::vector<double> deviations;   // ||map_power(p) - map_power(0)||_inf
    std::vector<double> ratios;       // deviation / p
    bool decreasing = true;
    double max_ratio = 0.0;
};

/// Deviation of map_power from its p -> 0 limit along a descending positive
/// exponent sequence.
LimitSlopeReport limit_slope_check(const LinearMatrixMap& phi, const SymMatrix& a,
                                   const std::vector<double>& exponents, const ToleranceProfile& tol = {});

}  // namespace powmean
