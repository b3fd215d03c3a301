#include "powmean/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "powmean/errors.hpp"
#include "powmean/expansions.hpp"
#include "powmean/maps.hpp"
#include "powmean/power_means.hpp"

namespace powmean {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double relative_gap(const SymMatrix& a, const SymMatrix& b) {
    return distance_inf(a, b) / std::max(1.0, b.norm_inf());
}

// One in-region point, cycling through the six defining conditions.
RegionPoint draw_region_point(int which, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto span = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    for (;;) {
        RegionPoint pt;
        switch (which % 6) {
            case 0: pt.p = pt.q = span(-4.0, 4.0); break;
            case 1: pt.p = span(1.0, 4.0); pt.q = span(pt.p, 4.0); break;
            case 2: pt.q = span(-4.0, -1.0); pt.p = span(-4.0, pt.q); break;
            case 3: pt.p = span(-4.0, -1.0); pt.q = span(1.0, 4.0); break;
            case 4: pt.p = span(0.5, 1.0); pt.q = span(1.0, 4.0); break;
            default: pt.p = span(-4.0, -1.0); pt.q = span(-1.0, -0.5); break;
        }
        if (in_sufficient_region(pt)) return pt;
    }
}

double draw_exponent(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    for (;;) {
        const double p = u(rng);
        if (std::abs(p) >= PowerExponent::kLogThreshold) return p;
    }
}

void fail(FuzzReport& r, double violation, const std::string& what) {
    ++r.failures;
    if (r.first_failure.empty()) r.first_failure = what;
    r.worst = std::max(r.worst, violation);
}

std::string describe(const char* what, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s at (%.17g, %.17g)", what, a, b);
    return buf;
}

FuzzReport fuzz_region(int trials, std::uint64_t seed, double tolerance, double spread) {
    std::mt19937_64 rng(seed);
    ToleranceProfile tol;
    tol.order_tol = tolerance;
    FuzzReport r;
    for (int t = 0; t < trials; ++t, ++r.trials) {
        const RegionPoint pt = draw_region_point(t, rng);
        const std::size_t dim = 2 + static_cast<std::size_t>(t % 2);
        const SymMatrix a = random_pd(dim, rng(), spread);
        const SymMatrix b = random_pd(dim, rng(), spread);
        const SymMatrix d = power_mean(pt.q, a, b, 0.5, tol) - power_mean(pt.p, a, b, 0.5, tol);
        const double margin = eig_sym(d, tol).eigenvalues.front() / (1.0 + d.norm_inf());
        r.worst = std::max(r.worst, -margin);
        if (margin < -tolerance) fail(r, -margin, describe("order violated", pt.p, pt.q));
        if (classify(pt).kind != CaseKind::InRegion) fail(r, 0.0, describe("classifier disagrees", pt.p, pt.q));
    }
    return r;
}

FuzzReport fuzz_unital_maps(int trials, std::uint64_t seed, double tolerance, double spread) {
    std::mt19937_64 rng(seed);
    ToleranceProfile tol;
    tol.order_tol = tolerance;
    FuzzReport r;
    for (int t = 0; t < trials; ++t, ++r.trials) {
        const std::size_t out = 2 + static_cast<std::size_t>(t % 3);
        const LinearMatrixMap phi = random_unital_kraus(2, out, 3, rng);
        const SymMatrix a = random_pd(2, rng(), spread);
        double p = draw_exponent(rng, -3.0, 3.0);
        double q = draw_exponent(rng, -3.0, 3.0);
        if (p > q) std::swap(p, q);
        if (p == q) continue;
        const OrderVerdict v = loewner_leq(map_power(phi, p, a, tol), map_power(phi, q, a, tol), tol);
        if (!v.holds) fail(r, -v.min_eigenvalue, describe("map power order violated", p, q));
        const SymMatrix direct = phi.apply(mat_fun(a, ScalarFunction::power(p), tol));
        const double gap = relative_gap(phi_power_affine_2x2(phi, p, a, tol), direct);
        r.worst = std::max(r.worst, gap);
        if (gap > tolerance) fail(r, gap, describe("affine route differs", p, gap));
    }
    return r;
}

FuzzReport fuzz_duality(int trials, std::uint64_t seed, double tolerance, double spread) {
    std::mt19937_64 rng(seed);
    FuzzReport r;
    for (int t = 0; t < trials; ++t, ++r.trials) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t % 3);
        const PowerExponent p = t % 10 == 0 ? PowerExponent::log_euclidean() : PowerExponent(draw_exponent(rng, -3.0, 3.0));
        const SymMatrix a = random_pd(dim, rng(), spread);
        const SymMatrix b = random_pd(dim, rng(), spread);
        const SymMatrix lhs = inverse(power_mean(p, a, b));
        const SymMatrix rhs = power_mean(p.negated(), inverse(a), inverse(b));
        const double gap = relative_gap(lhs, rhs);
        r.worst = std::max(r.worst, gap);
        if (gap > tolerance) fail(r, gap, describe("duality gap", p.value(), gap));
    }
    return r;
}

FuzzReport fuzz_limit(int trials, std::uint64_t seed, double spread) {
    std::mt19937_64 rng(seed);
    const std::vector<double> ps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    FuzzReport r;
    for (int t = 0; t < trials; ++t, ++r.trials) {
        const bool block = t % 2 == 0;
        const LinearMatrixMap phi = block ? block_average(2) : random_unital_kraus(3, 2, 3, rng);
        const SymMatrix a = random_pd(phi.in_dim(), rng(), spread);
        const LimitSlopeReport rep = limit_slope_check(phi, a, ps);
        // deviation ~ c p, so every ratio should stay near the first one
        const double growth = rep.max_ratio / std::max(rep.ratios.front(), 1e-300);
        r.worst = std::max(r.worst, growth);
        if (!rep.decreasing) fail(r, growth, describe("deviation not decreasing", static_cast<double>(t), 0.0));
        if (rep.max_ratio > 2.0 * rep.ratios.front() + 1e-3) {
            fail(r, growth, describe("deviation / p unbounded", static_cast<double>(t), rep.max_ratio));
        }
    }
    return r;
}

}  // namespace

void RunConfig::validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
    if (!(pmin <= pmax) || !(qmin <= qmax)) throw Error(ErrorKind::InvalidArgument, "empty grid range");
    if (!(order_tol > 0.0) || !(cert_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
    if (!(spread >= 1.0)) throw Error(ErrorKind::InvalidArgument, "spread must be at least 1");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::FuzzPass: return "fuzz-pass";
        case Verdict::FuzzFail: return "fuzz-fail";
        case Verdict::CertifiedCounterexample: return "certified-counterexample";
        case Verdict::ScalarFail: return "scalar-fail";
        case Verdict::SearchFailed: return "search-failed";
    }
    return "?";
}

bool ScanReportRow::consistent() const {
    switch (label.kind) {
        case CaseKind::InRegion: return verdict == Verdict::FuzzPass;
        case CaseKind::ScalarFail: return verdict == Verdict::ScalarFail;
        default: return verdict == Verdict::CertifiedCounterexample;
    }
}

std::vector<double> grid_values(double lo, double hi, double step) {
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> v;
    for (std::size_t i = 0; i <= n; ++i) {
        double x = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
        if (x == 0.0) x = 0.0;   // no negative zero
        v.push_back(x);
    }
    return v;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t i, std::size_t j) {
    return splitmix(splitmix(splitmix(master) ^ i) ^ (static_cast<std::uint64_t>(j) << 32));
}

double order_fuzz_margin(RegionPoint pt, int trials, std::uint64_t seed, double spread, const ToleranceProfile& tol) {
    std::mt19937_64 rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const std::size_t dim = 2 + static_cast<std::size_t>(t % 2);
        const SymMatrix a = random_pd(dim, rng(), spread);
        const SymMatrix b = random_pd(dim, rng(), spread);
        const SymMatrix d = power_mean(pt.q, a, b, 0.5, tol) - power_mean(pt.p, a, b, 0.5, tol);
        worst = std::min(worst, eig_sym(d, tol).eigenvalues.front() / (1.0 + d.norm_inf()));
    }
    return worst;
}

ScanReportRow counterexample_row(const CounterexampleWitness& w, std::uint64_t seed) {
    ScanReportRow row;
    row.label = w.label;
    row.verdict = w.label.kind == CaseKind::ScalarFail ? Verdict::ScalarFail : Verdict::CertifiedCounterexample;
    row.detail = w.neg_eigenvalue;
    row.x = w.x;
    row.y = w.y;
    row.theta = w.theta;
    row.seed = seed;
    return row;
}

std::vector<ScanReportRow> run_scan(const RunConfig& config) {
    config.validate();
    const std::vector<double> ps = grid_values(config.pmin, config.pmax, config.step);
    const std::vector<double> qs = grid_values(config.qmin, config.qmax, config.step);
    std::vector<ScanReportRow> rows(ps.size() * qs.size());

    ToleranceProfile tol;
    tol.order_tol = config.order_tol;
    SearchOptions opts;
    opts.cert_tol = config.cert_tol;

    auto evaluate = [&](std::size_t idx) {
        const std::size_t i = idx / qs.size();
        const std::size_t j = idx % qs.size();
        const RegionPoint pt{ps[i], qs[j]};
        const std::uint64_t seed = cell_seed(config.seed, i, j);
        ScanReportRow row;
        row.label = classify(pt);
        if (row.label.kind == CaseKind::InRegion) {
            row.detail = order_fuzz_margin(pt, config.trials, seed, config.spread, tol);
            row.verdict = row.detail >= -config.order_tol ? Verdict::FuzzPass : Verdict::FuzzFail;
            row.seed = seed;
        } else {
            try {
                row = counterexample_row(find_counterexample(pt, opts), seed);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SearchExhausted) throw;
                row.verdict = Verdict::SearchFailed;
                row.seed = seed;
            }
        }
        row.p = pt.p;
        row.q = pt.q;
        rows[idx] = row;
    };

    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t idx; (idx = next.fetch_add(1)) < rows.size();) evaluate(idx);
            } catch (...) {
                errors[w] = std::current_exception();
                next = rows.size();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<ScanReportRow>& rows) {
    out << kCsvHeader << '\n';
    for (const ScanReportRow& r : rows) {
        out << format_double(r.p) << ',' << format_double(r.q) << ',' << r.label.to_string() << ','
            << to_string(r.verdict) << ',' << format_double(r.detail) << ',' << format_double(r.x) << ','
            << format_double(r.y) << ',' << format_double(r.theta) << ',' << r.seed << '\n';
    }
}

FuzzTarget parse_fuzz_target(const std::string& name) {
    if (name == "region") return FuzzTarget::Region;
    if (name == "unital-maps" || name == "thm25") return FuzzTarget::UnitalMaps;
    if (name == "duality") return FuzzTarget::Duality;
    if (name == "limit") return FuzzTarget::Limit;
    throw Error(ErrorKind::InvalidArgument, "unknown fuzz target '" + name + "'");
}

FuzzReport run_fuzz(FuzzTarget target, int trials, std::uint64_t seed, double tolerance, double spread) {
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
    switch (target) {
        case FuzzTarget::Region: return fuzz_region(trials, seed, tolerance, spread);
        case FuzzTarget::UnitalMaps: return fuzz_unital_maps(trials, seed, tolerance, spread);
        case FuzzTarget::Duality: return fuzz_duality(trials, seed, tolerance, spread);
        case FuzzTarget::Limit: return fuzz_limit(trials, seed, spread);
    }
    return {};
}

LemmaKind parse_lemma(const std::string& name) {
    if (name == "rotated" || name == "3.1") return LemmaKind::Rotated;
    if (name == "log-euclidean" || name == "3.2") return LemmaKind::LogEuclidean;
    if (name == "projection" || name == "3.3") return LemmaKind::Projection;
    throw Error(ErrorKind::InvalidArgument, "unknown lemma '" + name + "'");
}

LemmaCheck verify_lemma(LemmaKind kind, double p, double q, double x, double y, const ToleranceProfile& tol) {
    LemmaCheck c;
    RichardsonOptions opts;
    std::vector<double> thetas = default_theta_sequence();
    std::function<SymMatrix(double)> diff;
    switch (kind) {
        case LemmaKind::Rotated:
            c.closed_form = det_coeff_rotated(p, q, x, y, tol).total;
            diff = [=](double t) { return mean_difference(rotated_diagonal_pair(x, y, t), p, q, tol); };
            break;
        case LemmaKind::LogEuclidean:
            c.closed_form = det_coeff_log_euclidean(q, x, y, tol).total;
            diff = [=](double t) {
                return mean_difference(rotated_diagonal_pair(x, y, t), PowerExponent::log_euclidean(), q, tol);
            };
            break;
        case LemmaKind::Projection:
            c.closed_form = det_coeff_projection(p, q);
            opts.exponents = projection_exponents(p, q);
            thetas = default_theta_sequence(12);
            diff = [=](double t) { return mean_difference(projection_pair(t), p, q, tol); };
            break;
    }
    const ExtrapolationResult r = numeric_det_coeff(diff, thetas, opts);
    c.oracle = r.value;
    c.oracle_error = r.error_estimate;
    c.gap = std::abs(c.closed_form - c.oracle) / (1.0 + std::abs(c.closed_form));
    c.passed = c.gap <= 1e-4;
    return c;
}

}  // namespace powmean
