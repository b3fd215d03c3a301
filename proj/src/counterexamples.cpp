#include "powmean/counterexamples.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "powmean/errors.hpp"
#include "powmean/expansions.hpp"
#include "powmean/maps.hpp"

namespace powmean {

namespace {

struct Certificate {
    double neg_eigenvalue;
    Vector witness;
};

// Rounding floor for lambda_min(M_q - M_p): a few ulps of the means.
double noise_floor(const SymMatrix& mp, const SymMatrix& mq) {
    return 64.0 * std::numeric_limits<double>::epsilon() * (mp.norm_inf() + mq.norm_inf());
}

// Certified iff lambda_min(M_q - M_p) < -max(cert_tol, noise floor).
std::optional<Certificate> certify(const RotatedPair& pair, PowerExponent p, PowerExponent q,
                                   const SearchOptions& opts) {
    try {
        const SymMatrix a = pair.a();
        const SymMatrix b = pair.b();
        const SymMatrix mp = power_mean(p, a, b, 0.5, opts.tol);
        const SymMatrix mq = power_mean(q, a, b, 0.5, opts.tol);
        const OrderVerdict v = loewner_leq(mp, mq, opts.tol);
        if (!(v.min_eigenvalue < -std::max(opts.cert_tol, noise_floor(mp, mq)))) return std::nullopt;
        return Certificate{v.min_eigenvalue, v.witness};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DomainError) return std::nullopt;
        throw;
    }
}

CounterexampleWitness make_witness(PowerExponent p, PowerExponent q, const RotatedPair& pair, Certificate c,
                                   CaseLabel label) {
    CounterexampleWitness w;
    w.p = p;
    w.q = q;
    w.pair = pair;
    w.a = pair.a();
    w.b = pair.b();
    w.theta = pair.theta;
    w.neg_eigenvalue = c.neg_eigenvalue;
    w.witness = std::move(c.witness);
    w.dual_applied = label.via_dual;
    w.label = label;
    return w;
}

// Scans theta = theta0 2^{-j} on pair(theta) and certifies at (p, q).
template <class PairAt>
std::optional<CounterexampleWitness> scan_theta(PairAt pair_at, PowerExponent p, PowerExponent q, CaseLabel label,
                                                const SearchOptions& opts) {
    for (int j = 0; j <= opts.j_max; ++j) {
        const RotatedPair pair = pair_at(std::ldexp(opts.theta0, -j));
        if (auto c = certify(pair, p, q, opts)) {
            CounterexampleWitness w = make_witness(p, q, pair, std::move(*c), label);
            w.near_cap = j >= opts.j_max - 1;
            return w;
        }
    }
    return std::nullopt;
}

// Rotated-diagonal family (p_search == 0 selects the Log-Euclidean mean).
// The lemma coefficient at the search exponents picks x; the certificate is
// computed at (p, q), on the inverted pair for dual dispatch.
CounterexampleWitness search_rotated(double p_search, double q_search, PowerExponent p, PowerExponent q,
                                     CaseLabel label, const SearchOptions& opts) {
    for (int k = opts.k_min; k <= opts.k_max; ++k) {
        const double x = std::ldexp(1.0, -k);
        const double y = x * x;
        double coeff = 0.0;
        try {
            coeff = p_search == 0.0 ? det_coeff_log_euclidean(q_search, x, y, opts.tol).total
                                    : det_coeff_rotated(p_search, q_search, x, y, opts.tol).total;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateFrame) throw;
            continue;
        }
        if (!(coeff < 0.0)) continue;
        auto pair_at = [&](double theta) {
            const RotatedPair pair = rotated_diagonal_pair(x, y, theta);
            return label.via_dual ? pair.inverted() : pair;
        };
        if (auto w = scan_theta(pair_at, p, q, label, opts)) {
            w->x = x;
            w->y = y;
            w->near_cap = w->near_cap || k >= opts.k_max - 1;
            return *w;
        }
    }
    throw Error(ErrorKind::SearchExhausted, "no certified rotated-diagonal witness for (" + p.to_string() + ", " +
                                                q.to_string() + ")");
}

CounterexampleWitness search_projection(PowerExponent p, PowerExponent q, CaseLabel label, const SearchOptions& opts) {
    // The inverted pair has condition number ~1/eps, so the dual search
    // backs off to larger shifts when the smallest one is unusable.
    std::vector<double> shifts{opts.projection_epsilon};
    if (label.via_dual) {
        if (!(opts.dual_epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "dual projection needs epsilon > 0");
        shifts.clear();
        for (double e = opts.dual_epsilon; e <= 1e-2 * (1.0 + 1e-9); e *= 100.0) shifts.push_back(e);
    }
    for (double eps : shifts) {
        auto pair_at = [&](double theta) {
            const RotatedPair pair = projection_pair(theta, eps);
            return label.via_dual ? pair.inverted() : pair;
        };
        if (auto w = scan_theta(pair_at, p, q, label, opts)) {
            w->epsilon = eps;
            return *w;
        }
    }
    throw Error(ErrorKind::SearchExhausted, "no certified projection witness for (" + p.to_string() + ", " +
                                                q.to_string() + ")");
}

bool rotated_range(double p, double q) { return p > -1.0 && p < 0.5 && p != 0.0 && q > std::max(0.0, p); }

}  // namespace

SymMatrix RotatedPair::a() const { return SymMatrix::diagonal({a1, a2}); }

SymMatrix RotatedPair::b() const { return congruence(rotation(theta), SymMatrix::diagonal({b1, b2})); }

RotatedPair RotatedPair::inverted() const {
    if (!(a1 > 0.0 && a2 > 0.0 && b1 > 0.0 && b2 > 0.0)) {
        throw Error(ErrorKind::DomainError, "inverting a pair that is not positive definite");
    }
    return {1.0 / a1, 1.0 / a2, 1.0 / b1, 1.0 / b2, theta};
}

RotatedPair rotated_diagonal_pair(double x, double y, double theta) {
    if (!(x > 0.0 && y > 0.0)) throw Error(ErrorKind::InvalidArgument, "x and y must be positive");
    return {1.0, x, 1.0, y, theta};
}

RotatedPair projection_pair(double theta, double epsilon) {
    if (!(epsilon >= 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be nonnegative");
    return {2.0 + epsilon, epsilon, 1.0 + epsilon, epsilon, theta};
}

SymMatrix mean_difference(const RotatedPair& pair, PowerExponent p, PowerExponent q, const ToleranceProfile& tol) {
    const SymMatrix a = pair.a();
    const SymMatrix b = pair.b();
    return power_mean(q, a, b, 0.5, tol) - power_mean(p, a, b, 0.5, tol);
}

CounterexampleWitness construct_rotated_diagonal(double p, double q, const SearchOptions& opts) {
    if (!rotated_range(p, q)) {
        throw Error(ErrorKind::PreconditionViolation, "rotated-diagonal case needs -1<p<1/2, p!=0, q>max(0,p)");
    }
    return search_rotated(p, q, p, q, {CaseKind::RotatedDiagonal, false}, opts);
}

CounterexampleWitness construct_log_euclidean(double q, const SearchOptions& opts) {
    if (!(q > 0.0)) throw Error(ErrorKind::PreconditionViolation, "log-euclidean case needs q > 0");
    return search_rotated(0.0, q, PowerExponent::log_euclidean(), q, {CaseKind::LogEuclidean, false}, opts);
}

CounterexampleWitness construct_projection(double p, double q, const SearchOptions& opts) {
    if (!(p > 0.0 && p < q && q < 1.0)) throw Error(ErrorKind::PreconditionViolation, "projection case needs 0<p<q<1");
    return search_projection(p, q, {CaseKind::RankOneProjection, false}, opts);
}

CounterexampleWitness construct_scalar_fail(double p, double q, const ToleranceProfile& tol) {
    if (!(p > q)) throw Error(ErrorKind::PreconditionViolation, "scalar failure needs p > q");
    SearchOptions opts;
    opts.tol = tol;
    const RotatedPair pair{1.0, 1.0, 4.0, 4.0, 0.0};
    auto c = certify(pair, p, q, opts);
    if (!c) throw Error(ErrorKind::SearchExhausted, "scalar means did not separate");
    return make_witness(p, q, pair, std::move(*c), {CaseKind::ScalarFail, false});
}

CounterexampleWitness find_counterexample(RegionPoint pt, const SearchOptions& opts) {
    const CaseLabel label = classify(pt);
    const PowerExponent p(pt.p);
    const PowerExponent q(pt.q);
    const RegionPoint s = label.via_dual ? dual(pt) : pt;
    switch (label.kind) {
        case CaseKind::InRegion:
            throw Error(ErrorKind::InRegion, "(" + p.to_string() + ", " + q.to_string() + ") is in the sufficiency region");
        case CaseKind::ScalarFail: return construct_scalar_fail(pt.p, pt.q, opts.tol);
        case CaseKind::RotatedDiagonal:
        case CaseKind::LogEuclidean: return search_rotated(s.p, s.q, p, q, label, opts);
        case CaseKind::RankOneProjection: return search_projection(p, q, label, opts);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown case");
}

WitnessCheck verify_witness(const CounterexampleWitness& w, const SearchOptions& opts) {
    const SymMatrix diff = power_mean(w.q, w.a, w.b, 0.5, opts.tol) - power_mean(w.p, w.a, w.b, 0.5, opts.tol);
    WitnessCheck c;
    c.min_eigenvalue = eig_sym(diff, opts.tol).eigenvalues.front();
    c.quadratic_form = diff.quadratic_form(w.witness);
    c.certified = c.min_eigenvalue < -std::max(opts.cert_tol, noise_floor(power_mean(w.p, w.a, w.b, 0.5, opts.tol),
                                                                          power_mean(w.q, w.a, w.b, 0.5, opts.tol)));
    return c;
}

SymMatrix choi_matrix() { return SymMatrix::from_rows({{2, 0, 1}, {0, 1, 1}, {1, 1, 2}}); }

std::vector<ChoiRow> choi_sign_table(const std::vector<double>& p_values, const ToleranceProfile& tol) {
    const SymMatrix b = choi_matrix();
    const LinearMatrixMap phi = compression(3, {0, 1});
    std::vector<ChoiRow> rows;
    for (double p : p_values) {
        if (p == 0.0) throw Error(ErrorKind::InvalidArgument, "the sign table excludes p = 0");
        const ScalarFunction f = ScalarFunction::power(p);
        const SymMatrix diff = phi.apply(mat_fun(b, f, tol)) - mat_fun(phi.apply(b), f, tol);
        ChoiRow row{p, eig_sym(diff, tol).eigenvalues, {}};
        for (std::size_t i = 0; i < row.eigenvalues.size(); ++i) {
            const double l = row.eigenvalues[i];
            if (i > 0) row.signs += ',';
            row.signs += l > 1e-12 ? '+' : (l < -1e-12 ? '-' : '0');
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace powmean
