#pragma once

#include <string>
#include <vector>

#include "powmean/power_means.hpp"
#include "powmean/region.hpp"
#include "powmean/symmat.hpp"

namespace powmean {

/// A = diag(a1, a2) and B = R_theta diag(b1, b2) R_theta^T.
struct RotatedPair {
    double a1 = 1.0;
    double a2 = 1.0;
    double b1 = 1.0;
    double b2 = 1.0;
    double theta = 0.0;

    SymMatrix a() const;
    SymMatrix b() const;
    /// (A^{-1}, B^{-1}); requires all four eigenvalues positive.
    RotatedPair inverted() const;
};

/// A = diag(1, x), B_theta with eigenvalues {1, y}.
RotatedPair rotated_diagonal_pair(double x, double y, double theta);

/// A = diag(2, 0), B_theta the rank-one projection onto (cos, sin), both
/// shifted by epsilon * I.
RotatedPair projection_pair(double theta, double epsilon = 0.0);

/// M_q(A,B) - M_p(A,B).
SymMatrix mean_difference(const RotatedPair& pair, PowerExponent p, PowerExponent q, const ToleranceProfile& tol = {});

struct SearchOptions {
    ToleranceProfile tol{};
    /// Absolute bound the negative eigenvalue must beat; a rounding floor of
    /// 64 ulp * (||M_p|| + ||M_q||) applies on top.
    double cert_tol = 1e-12;
    int k_min = 4;             // x = 2^{-k}
    int k_max = 40;
    int j_max = 20;            // theta = theta0 * 2^{-j}
    double theta0 = 0.1;
    double projection_epsilon = 0.0;   // 0: exact PSD pair with 0^r = 0
    double dual_epsilon = 1e-6;        // smallest shift that makes the projection pair invertible
};

struct CounterexampleWitness {
    PowerExponent p;
    PowerExponent q;
    SymMatrix a;
    SymMatrix b;
    RotatedPair pair;
    double theta = 0.0;
    double x = 0.0;                 // 0 when the family has no x, y
    double y = 0.0;
    double epsilon = 0.0;
    double neg_eigenvalue = 0.0;    // lambda_min(M_q - M_p) < 0
    Vector witness;                 // unit eigenvector for neg_eigenvalue
    bool dual_applied = false;
    CaseLabel label;
    bool near_cap = false;          // search ended within two steps of a cap
};

/// Rotated-diagonal family: -1 < p < 1/2, p != 0, q > max(0, p).
CounterexampleWitness construct_rotated_diagonal(double p, double q, const SearchOptions& opts = {});
/// Log-Euclidean mean against M_q, q > 0.
CounterexampleWitness construct_log_euclidean(double q, const SearchOptions& opts = {});
/// Projection family: 0 < p < q < 1.
CounterexampleWitness construct_projection(double p, double q, const SearchOptions& opts = {});
/// p > q: A = I, B = 4I.
CounterexampleWitness construct_scalar_fail(double p, double q, const ToleranceProfile& tol = {});

/// Classifies pt and runs the matching construction. Dual cases search at
/// (-q,-p) and certify on the inverted pair at (p,q) directly. Throws
/// InRegion inside the sufficiency region.
CounterexampleWitness find_counterexample(RegionPoint pt, const SearchOptions& opts = {});

struct WitnessCheck {
    double min_eigenvalue = 0.0;
    double quadratic_form = 0.0;   // witness^T (M_q - M_p) witness
    bool certified = false;
};

/// Recomputes M_q - M_p from the stored (A, B, p, q).
WitnessCheck verify_witness(const CounterexampleWitness& w, const SearchOptions& opts = {});

/// [[2,0,1],[0,1,1],[1,1,2]].
SymMatrix choi_matrix();

struct ChoiRow {
    double p = 0.0;
    Vector eigenvalues;        // of Phi(B^p) - Phi(B)^p, ascending
    std::string signs;         // e.g. "-,+"; '0' when |lambda| <= 1e-12
};

/// Phi = compression to the top-left 2x2 corner; B = choi_matrix().
std::vector<ChoiRow> choi_sign_table(const std::vector<double>& p_values, const ToleranceProfile& tol = {});

}  // namespace powmean
