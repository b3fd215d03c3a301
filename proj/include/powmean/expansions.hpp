#pragma once

#include <functional>
#include <vector>

#include "powmean/symmat.hpp"

namespace powmean {

/// f[a,b]; confluent nodes (|a-b| <= confluent_tol * scale) use f'.
/// Throws DomainError when f is not smooth at a node.
double divided_diff_1(const ScalarFunction& f, double a, double b, const ToleranceProfile& tol = {});

/// f[a,b,c], symmetric in its arguments. Nearly coincident nodes go through
/// the Hermite-Genocchi integral of f'' instead of the recursion.
double divided_diff_2(const ScalarFunction& f, double a, double b, double c, const ToleranceProfile& tol = {});

/// First Frechet derivative Df(base)(h) by the Daleckii-Krein formula.
SymMatrix frechet_d1(const ScalarFunction& f, const SymMatrix& base, const SymMatrix& h,
                     const ToleranceProfile& tol = {});

/// Second Frechet derivative D^2 f(base)(h, k), i.e. the mixed second
/// derivative of f(base + s h + t k) at s = t = 0.
SymMatrix frechet_d2(const ScalarFunction& f, const SymMatrix& base, const SymMatrix& h, const SymMatrix& k,
                     const ToleranceProfile& tol = {});

/// Inner matrix of a mean along a rotation: G + theta H + theta^2 K + O(theta^3).
struct TaylorFrame {
    SymMatrix g;
    SymMatrix h;
    SymMatrix k;
};

/// A^p + B_theta^p for A = diag(1,x), B_theta = R diag(1,y) R^T:
/// G = diag(2, x^p+y^p), H off-diagonal 1-y^p, K = diag(-(1-y^p), 1-y^p).
/// Throws DegenerateFrame when x^p + y^p is within confluent_tol of 2.
TaylorFrame taylor_frame_rotated(double p, double x, double y, const ToleranceProfile& tol = {});

/// log A + log B_theta: G = diag(0, log xy), H off-diagonal -log y,
/// K = diag(log y, -log y). Throws DegenerateFrame when xy is near 1.
TaylorFrame taylor_frame_log_euclidean(double x, double y, const ToleranceProfile& tol = {});

/// Mean along the rotation family:
///   [[1 + a11 t^2, a12 t], [a12 t, m22 + a22 t^2]] + o(t^2).
/// a11 and a12 are closed forms, a22 comes from the Frechet derivatives.
struct ExpansionCoefficients {
    double alpha11 = 0.0;
    double alpha12 = 0.0;
    double alpha22 = 0.0;
    double m22 = 0.0;   // ((x^p+y^p)/2)^{1/p}, or sqrt(xy)

    /// The second-order model evaluated at theta.
    SymMatrix model(double theta) const;
};

ExpansionCoefficients alpha_rotated(double p, double x, double y, const ToleranceProfile& tol = {});
ExpansionCoefficients alpha_log_euclidean(double x, double y, const ToleranceProfile& tol = {});

/// theta^2 coefficient of det(M_q - M_p) along a rotation family, split as
/// total = delta1 + delta2. wp, wq are 1 - M_p, 1 - M_q of the scalar pair.
struct DetCoefficientBreakdown {
    double delta1 = 0.0;
    double delta2 = 0.0;
    double wp = 0.0;
    double wq = 0.0;
    double total = 0.0;
};

/// Rotated-diagonal family, p, q nonzero. p == q gives the zero breakdown.
/// Throws DegenerateFrame when x^p+y^p or x^q+y^q is near 2 or the scalar
/// means at p and q coincide.
DetCoefficientBreakdown det_coeff_rotated(double p, double q, double x, double y, const ToleranceProfile& tol = {});

/// Log-Euclidean mean against M_q on the rotated-diagonal family:
///   -1/2 {log x log y / log xy + (1-x^q)(1-y^q) / (q(2-x^q-y^q))} (M_q - sqrt(xy))
///   - {log y / log xy - (1-y^q)/(2-x^q-y^q)}^2 (1 - sqrt(xy)) (1 - M_q)
/// Throws DegenerateFrame when xy ~ 1, x^q+y^q ~ 2 or x ~ y.
DetCoefficientBreakdown det_coeff_log_euclidean(double q, double x, double y, const ToleranceProfile& tol = {});

/// Projection family A = diag(2,0), B_theta rank one, p, q in (0,1):
///   -((2^p+1)/2)^{1/p} ((2^q+1)/2)^{1/q} (1/(2^p+1) - 1/(2^q+1))^2.
/// Throws DomainError outside (0,1).
double det_coeff_projection(double p, double q);

struct RichardsonOptions {
    /// Exponents e of the error terms c_e theta^e to eliminate, ascending.
    std::vector<double> exponents{2.0, 4.0, 6.0};
    double rel_tol = 1e-5;
    double abs_tol = 1e-9;
};

struct ExtrapolationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::vector<double> raw;   // det / theta^2 at each theta
};

/// Exponents for the projection family, whose expansion carries the
/// non-integer powers theta^{2/p - 2} and theta^{2/q - 2}.
std::vector<double> projection_exponents(double p, double q);

/// 0.1 * 2^{-k}, k = 0..count-1.
std::vector<double> default_theta_sequence(int count = 8);

/// Richardson-extrapolated limit of det(difference(theta)) / theta^2 over a
/// descending ratio-2 sequence. Throws NoConvergence when the last two
/// tableau entries disagree by more than 10x the requested tolerance.
ExtrapolationResult numeric_det_coeff(const std::function<SymMatrix(double)>& difference,
                                      const std::vector<double>& thetas, const RichardsonOptions& opts = {});

}  // namespace powmean
