#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "powmean/counterexamples.hpp"
#include "powmean/region.hpp"
#include "powmean/symmat.hpp"

namespace powmean {

struct RunConfig {
    double pmin = -2.0;
    double pmax = 2.0;
    double qmin = -2.0;
    double qmax = 2.0;
    double step = 0.5;
    int trials = 200;              // random pairs per in-region cell
    std::uint64_t seed = 20240607;
    double order_tol = 1e-9;       // relative slack of the fuzz order check
    double cert_tol = 1e-12;
    double spread = 4.0;           // eigenvalues of random inputs lie in [1/spread, spread]
    unsigned threads = 0;          // 0: hardware concurrency

    /// Throws InvalidArgument for step <= 0, trials < 1, empty ranges or
    /// non-positive tolerances.
    void validate() const;
};

enum class Verdict { FuzzPass, FuzzFail, CertifiedCounterexample, ScalarFail, SearchFailed };

std::string to_string(Verdict v);

struct ScanReportRow {
    double p = 0.0;
    double q = 0.0;
    CaseLabel label;
    Verdict verdict = Verdict::FuzzPass;
    double detail = 0.0;   // negative eigenvalue, or the worst fuzz margin
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
    std::uint64_t seed = 0;

    /// In-region rows must pass the fuzz; outside rows must be certified.
    bool consistent() const;
};

/// Grid values lo, lo + step, ..., hi, rounded to 12 decimals so that
/// boundary points such as 0 and -1/2 land exactly.
std::vector<double> grid_values(double lo, double hi, double step);

/// splitmix64 hash of (master, i, j).
std::uint64_t cell_seed(std::uint64_t master, std::size_t i, std::size_t j);

/// One row per grid point in (p, q) row-major order; cells are evaluated
/// on a worker pool but the output order never depends on scheduling.
std::vector<ScanReportRow> run_scan(const RunConfig& config);

inline constexpr const char* kCsvHeader = "p,q,label,verdict,detail,x,y,theta,seed";

/// Writes the header and rows, doubles with 17 significant digits, LF endings.
void write_csv(std::ostream& out, const std::vector<ScanReportRow>& rows);
std::string format_double(double v);

/// Worst value of lambda_min(M_q - M_p) / (1 + ||M_q - M_p||) over seeded
/// random positive definite pairs, alternating dimensions 2 and 3.
double order_fuzz_margin(RegionPoint pt, int trials, std::uint64_t seed, double spread,
                         const ToleranceProfile& tol = {});

ScanReportRow counterexample_row(const CounterexampleWitness& w, std::uint64_t seed);

enum class FuzzTarget { Region, UnitalMaps, Duality, Limit };

/// Parses "region", "unital-maps" (alias "thm25"), "duality", "limit".
/// Throws InvalidArgument.
FuzzTarget parse_fuzz_target(const std::string& name);

struct FuzzReport {
    int trials = 0;
    int failures = 0;
    double worst = 0.0;        // largest violation seen, target-specific scale
    std::string first_failure;

    bool passed() const { return failures == 0; }
};

/// Region:  in-region (p,q) drawn from all six conditions, M_p <= M_q.
/// UnitalMaps: random unital Kraus maps M_2 -> M_n, map_power ordered in p, and
///          the affine identity for Phi(A^p).
/// Duality: M_p(A,B)^{-1} = M_{-p}(A^{-1},B^{-1}).
/// Limit:   ||map_power(p) - map_power(0)|| / p bounded along p = 1e-2..1e-6.
/// `tolerance` is the relative slack (1e-9 by default).
FuzzReport run_fuzz(FuzzTarget target, int trials, std::uint64_t seed, double tolerance = 1e-9,
                    double spread = 4.0);

enum class LemmaKind { Rotated, LogEuclidean, Projection };

/// "rotated" | "log-euclidean" | "projection", or the aliases 3.1, 3.2, 3.3.
LemmaKind parse_lemma(const std::string& name);

struct LemmaCheck {
    double closed_form = 0.0;
    double oracle = 0.0;
    double oracle_error = 0.0;
    double gap = 0.0;          // |closed - oracle| / (1 + |closed|)
    bool passed = false;       // gap <= 1e-4
};

/// Closed-form determinant coefficient against the Richardson oracle.
/// Rotated uses (p, q, x, y); LogEuclidean uses (q, x, y); Projection uses (p, q).
LemmaCheck verify_lemma(LemmaKind kind, double p, double q, double x, double y, const ToleranceProfile& tol = {});

}  // namespace powmean
