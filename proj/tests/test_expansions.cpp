#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "powmean/counterexamples.hpp"
#include "powmean/expansions.hpp"
#include "powmean/power_means.hpp"
#include "test_util.hpp"

using namespace powmean;
using testutil::expect_kind;

namespace {

long double value_ld(const ScalarFunction& f, long double x) {
    switch (f.kind()) {
        case ScalarFunction::Kind::Power: return std::pow(x, static_cast<long double>(f.exponent()));
        case ScalarFunction::Kind::Log: return std::log(x);
        case ScalarFunction::Kind::Exp: return std::exp(x);
    }
    return 0;
}

double dd2_recursive(const ScalarFunction& f, double a, double b, double c) {
    const long double fa = value_ld(f, a), fb = value_ld(f, b), fc = value_ld(f, c);
    const long double la = a, lb = b, lc = c;
    return static_cast<double>(((fc - fb) / (lc - lb) - (fb - fa) / (lb - la)) / (lc - la));
}

double rotated_oracle(double p, double q, double x, double y) {
    return numeric_det_coeff([&](double t) { return mean_difference(rotated_diagonal_pair(x, y, t), p, q); },
                             default_theta_sequence())
        .value;
}

double log_oracle(double q, double x, double y) {
    return numeric_det_coeff(
               [&](double t) {
                   return mean_difference(rotated_diagonal_pair(x, y, t), PowerExponent::log_euclidean(), q);
               },
               default_theta_sequence())
        .value;
}

double projection_oracle(double p, double q) {
    RichardsonOptions opts;
    opts.exponents = projection_exponents(p, q);
    return numeric_det_coeff([&](double t) { return mean_difference(projection_pair(t), p, q); },
                             default_theta_sequence(12), opts)
        .value;
}

// Five-point central difference of g at 0.
SymMatrix central(const std::function<SymMatrix(double)>& g, double e = 1e-3) {
    return (1.0 / (12 * e)) * (8.0 * (g(e) - g(-e)) - (g(2 * e) - g(-2 * e)));
}

SymMatrix fd_d1(const ScalarFunction& f, const SymMatrix& a, const SymMatrix& h) {
    return central([&](double e) { return mat_fun(a + e * h, f); });
}

struct RotatedTuple {
    double p, q, x, y;
};

const RotatedTuple kRotated[] = {
    {0.25, 0.5, 0.1, 3.0}, {-0.5, 0.5, 0.2, 2.0}, {0.1, 0.3, 0.05, 4.0}, {-0.9, 0.2, 0.3, 5.0},
    {-0.25, 1.5, 0.01, 2.5}, {0.4, 2.0, 0.5, 3.0},
};

}  // namespace

TEST(DividedDifferences, Examples) {
    const ScalarFunction sq = ScalarFunction::power(2.0);
    EXPECT_DOUBLE_EQ(divided_diff_1(sq, 1.0, 3.0), 4.0);
    EXPECT_DOUBLE_EQ(divided_diff_1(sq, 2.0, 2.0), 4.0);
    EXPECT_DOUBLE_EQ(divided_diff_2(sq, 1.0, 2.0, 5.0), 1.0);
    EXPECT_DOUBLE_EQ(divided_diff_2(sq, 3.0, 3.0, 3.0), 1.0);
    const ScalarFunction cube = ScalarFunction::power(3.0);
    for (auto [a, b, c] : {std::array{1.0, 2.0, 4.0}, std::array{1.0, 1.001, 1.002}, std::array{2.0, 2.0, 2.0 + 1e-9}}) {
        EXPECT_NEAR(divided_diff_2(cube, a, b, c), a + b + c, 1e-12);
    }
    EXPECT_NEAR(divided_diff_1(ScalarFunction::log(), 1.0, std::exp(1.0)), 1.0 / (std::exp(1.0) - 1.0), 1e-15);
}

TEST(DividedDifferences, SymmetricInNodes) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (const ScalarFunction f : {ScalarFunction::power(-1.5), ScalarFunction::power(0.4), ScalarFunction::log(),
                                   ScalarFunction::exp()}) {
        for (int t = 0; t < 50; ++t) {
            const double a = u(rng), b = u(rng), c = t % 2 ? u(rng) : a * (1 + 1e-4);
            const double ref = divided_diff_2(f, a, b, c);
            EXPECT_NEAR(divided_diff_2(f, c, a, b), ref, 1e-13 * std::abs(ref) + 1e-15);
            EXPECT_NEAR(divided_diff_2(f, b, c, a), ref, 1e-13 * std::abs(ref) + 1e-15);
            const double d1 = divided_diff_1(f, a, b);
            EXPECT_NEAR(d1, divided_diff_1(f, b, a), 1e-14 * std::abs(d1) + 1e-15);
        }
    }
}

TEST(DividedDifferences, MatchesRecursionAcrossRegimes) {
    for (const ScalarFunction f : {ScalarFunction::power(-1.5), ScalarFunction::power(1.0 / 0.3),
                                   ScalarFunction::log(), ScalarFunction::exp()}) {
        // Well separated, quadrature band and nearly confluent.
        for (double h : {0.7, 5e-3, 1e-4}) {
            const double a = 1.3, b = a + h, c = a + 2.5 * h;
            const double got = divided_diff_2(f, a, b, c);
            const double ref = h > 1e-3 ? dd2_recursive(f, a, b, c) : 0.5 * f.second_derivative(b);
            const double tol = h > 1e-3 ? 1e-12 : 2 * h;
            EXPECT_NEAR(got, ref, tol * std::abs(ref)) << f.name() << " h=" << h;
        }
    }
}

TEST(DividedDifferences, DomainErrors) {
    expect_kind(ErrorKind::DomainError, [] { divided_diff_1(ScalarFunction::log(), 0.0, 1.0); });
    expect_kind(ErrorKind::DomainError, [] { divided_diff_2(ScalarFunction::power(0.5), 1.0, -1.0, 2.0); });
}

TEST(Frechet, SquareClosedForms) {
    const ScalarFunction sq = ScalarFunction::power(2.0);
    const SymMatrix a = random_pd(3, 2, 4.0);
    const SymMatrix h = random_pd(3, 3, 4.0) - SymMatrix::identity(3);
    const SymMatrix k = random_pd(3, 4, 4.0) - 2.0 * SymMatrix::identity(3);
    const SymMatrix d1 = SymMatrix::symmetrized(a.to_matrix() * h.to_matrix() + h.to_matrix() * a.to_matrix());
    const SymMatrix d2 = SymMatrix::symmetrized(h.to_matrix() * k.to_matrix() + k.to_matrix() * h.to_matrix());
    EXPECT_LE(distance_inf(frechet_d1(sq, a, h), d1), 1e-12);
    EXPECT_LE(distance_inf(frechet_d2(sq, a, h, k), d2), 1e-12);
}

TEST(Frechet, AgreesWithFiniteDifferences) {
    std::mt19937_64 rng(41);
    for (const ScalarFunction f : {ScalarFunction::power(2.0), ScalarFunction::power(-0.5),
                                   ScalarFunction::power(1.0 / 3.0), ScalarFunction::log(), ScalarFunction::exp()}) {
        for (int t = 0; t < 10; ++t) {
            const std::size_t n = 2 + static_cast<std::size_t>(t % 2);
            const SymMatrix a = random_pd(n, rng(), 4.0);
            const SymMatrix h = random_pd(n, rng(), 2.0) - SymMatrix::identity(n);
            const SymMatrix k = random_pd(n, rng(), 2.0) - SymMatrix::identity(n);
            const SymMatrix d1 = frechet_d1(f, a, h);
            EXPECT_LE(distance_inf(d1, fd_d1(f, a, h)), 1e-6 * (1.0 + d1.norm_inf())) << f.name();
            const SymMatrix fd2 = central([&](double e) { return frechet_d1(f, a + e * k, h); });
            const SymMatrix d2 = frechet_d2(f, a, h, k);
            EXPECT_LE(distance_inf(d2, fd2), 1e-6 * (1.0 + d2.norm_inf())) << f.name();
            EXPECT_LE(distance_inf(d2, frechet_d2(f, a, k, h)), 1e-12 * (1.0 + d2.norm_inf()));
        }
    }
}

TEST(Frechet, RepeatedEigenvalues) {
    const ScalarFunction f = ScalarFunction::power(0.5);
    const SymMatrix a = SymMatrix::diagonal({2.0, 2.0, 5.0});
    const SymMatrix h = SymMatrix::from_rows({{1, 0.5, 0.2}, {0.5, -1, 0.3}, {0.2, 0.3, 0.7}});
    EXPECT_LE(distance_inf(frechet_d1(f, a, h), fd_d1(f, a, h)), 1e-8);
}

TEST(TaylorFrame, RotatedMatchesInnerMatrix) {
    const double p = 0.3, x = 0.2, y = 3.0;
    const TaylorFrame fr = taylor_frame_rotated(p, x, y);
    for (double t : {1e-2, 1e-3}) {
        const RotatedPair pair = rotated_diagonal_pair(x, y, t);
        const SymMatrix inner = mat_fun(pair.a(), ScalarFunction::power(p)) + mat_fun(pair.b(), ScalarFunction::power(p));
        const SymMatrix model = fr.g + t * fr.h + (t * t) * fr.k;
        EXPECT_LE(distance_inf(inner, model), 5 * t * t * t);
    }
}

TEST(TaylorFrame, LogMatchesInnerMatrix) {
    const double x = 0.2, y = 3.0;
    const TaylorFrame fr = taylor_frame_log_euclidean(x, y);
    for (double t : {1e-2, 1e-3}) {
        const RotatedPair pair = rotated_diagonal_pair(x, y, t);
        const SymMatrix inner = mat_fun(pair.a(), ScalarFunction::log()) + mat_fun(pair.b(), ScalarFunction::log());
        EXPECT_LE(distance_inf(inner, fr.g + t * fr.h + (t * t) * fr.k), 5 * t * t * t);
    }
}

TEST(TaylorFrame, Degenerate) {
    expect_kind(ErrorKind::DegenerateFrame, [] { taylor_frame_rotated(0.5, 1.0, 1.0); });
    expect_kind(ErrorKind::DegenerateFrame, [] { taylor_frame_log_euclidean(0.5, 2.0); });
    expect_kind(ErrorKind::InvalidArgument, [] { taylor_frame_rotated(0.5, -1.0, 2.0); });
    expect_kind(ErrorKind::InvalidArgument, [] { taylor_frame_rotated(0.0, 0.5, 2.0); });
}

TEST(Alpha, ModelMatchesMeanToSecondOrder) {
    const std::tuple<double, double, double> tuples[] = {{0.25, 0.3, 0.09}, {-0.5, 0.1, 0.01}, {1.0, 0.5, 0.25},
                                                         {2.0, 0.4, 1.7},   {-1.0, 0.5, 3.0}};
    for (auto [p, x, y] : tuples) {
        const ExpansionCoefficients c = alpha_rotated(p, x, y);
        double prev = INFINITY;
        for (double t : {1e-2, 1e-3, 1e-4}) {
            const RotatedPair pair = rotated_diagonal_pair(x, y, t);
            const double r = distance_inf(power_mean(p, pair.a(), pair.b()), c.model(t)) / (t * t);
            EXPECT_LT(r, prev) << p << "," << x << "," << y;
            prev = r;
        }
        EXPECT_LT(prev, 1e-3);
    }
}

TEST(Alpha, LogModelMatchesMean) {
    const ExpansionCoefficients c = alpha_log_euclidean(0.3, 2.5);
    for (double t : {1e-2, 1e-3}) {
        const RotatedPair pair = rotated_diagonal_pair(0.3, 2.5, t);
        EXPECT_LE(distance_inf(power_mean(0.0, pair.a(), pair.b()), c.model(t)), 10 * t * t * t);
    }
}

TEST(Alpha, RotatedTendsToLogAsExponentVanishes) {
    const ExpansionCoefficients le = alpha_log_euclidean(0.3, 2.5);
    // Linear in p; much smaller p overflows x^{1/p} in the frame.
    for (double p : {1e-3, -5e-3, 1e-2}) {
        const ExpansionCoefficients r = alpha_rotated(p, 0.3, 2.5);
        const double tol = std::abs(p);
        EXPECT_NEAR(r.alpha11, le.alpha11, tol);
        EXPECT_NEAR(r.alpha12, le.alpha12, tol);
        EXPECT_NEAR(r.alpha22, le.alpha22, tol);
        EXPECT_NEAR(r.m22, le.m22, tol);
    }
}

TEST(DetCoefficient, DeltaFormEqualsAlphaForm) {
    for (const RotatedTuple& t : kRotated) {
        const ExpansionCoefficients cp = alpha_rotated(t.p, t.x, t.y);
        const ExpansionCoefficients cq = alpha_rotated(t.q, t.x, t.y);
        const double from_alpha =
            (cq.alpha11 - cp.alpha11) * (cq.m22 - cp.m22) - (cq.alpha12 - cp.alpha12) * (cq.alpha12 - cp.alpha12);
        const DetCoefficientBreakdown d = det_coeff_rotated(t.p, t.q, t.x, t.y);
        EXPECT_NEAR(d.total, from_alpha, 1e-12 * (1.0 + std::abs(from_alpha)));
        EXPECT_DOUBLE_EQ(d.total, d.delta1 + d.delta2);
    }
}

TEST(DetCoefficient, RotatedMatchesOracleAndFixesSign) {
    // delta2 carries a minus sign; the variant with +bracket^2 misses the oracle.
    for (const RotatedTuple& t : kRotated) {
        const DetCoefficientBreakdown d = det_coeff_rotated(t.p, t.q, t.x, t.y);
        const double oracle = rotated_oracle(t.p, t.q, t.x, t.y);
        EXPECT_LE(std::abs(d.total - oracle), 1e-6 * (1.0 + std::abs(d.total)));
        if (std::abs(d.delta2) > 1e-6) {
            EXPECT_GT(std::abs(d.delta1 - d.delta2 - oracle), 1e-4 * (1.0 + std::abs(oracle)));
        }
    }
}

TEST(DetCoefficient, RotatedEqualExponentsVanish) {
    const DetCoefficientBreakdown d = det_coeff_rotated(0.3, 0.3, 0.2, 2.0);
    EXPECT_EQ(d.total, 0.0);
    EXPECT_EQ(d.delta1, 0.0);
    EXPECT_EQ(d.delta2, 0.0);
    expect_kind(ErrorKind::DegenerateFrame, [] { det_coeff_rotated(0.3, 0.5, 1.0, 1.0); });
}

TEST(DetCoefficient, LogStatementBeatsProofDisplay) {
    // The proof display halves both terms of the first bracket; only the
    // stated form matches the numerical oracle.
    const std::tuple<double, double, double> tuples[] = {{0.5, 0.1, 3.0}, {1.0, 0.05, 4.0}, {2.0, 0.3, 1.5},
                                                         {3.0, 0.5, 0.25}};
    for (auto [q, x, y] : tuples) {
        const DetCoefficientBreakdown d = det_coeff_log_euclidean(q, x, y);
        const double oracle = log_oracle(q, x, y);
        const double proof_display = 0.5 * d.delta1 + d.delta2;
        EXPECT_LE(std::abs(d.total - oracle), 1e-6 * (1.0 + std::abs(oracle))) << q << "," << x << "," << y;
        EXPECT_GT(std::abs(proof_display - oracle), 1e-4 * (1.0 + std::abs(oracle))) << q << "," << x << "," << y;
    }
}

TEST(DetCoefficient, LogDegenerate) {
    expect_kind(ErrorKind::DegenerateFrame, [] { det_coeff_log_euclidean(0.5, 0.5, 2.0); });
    expect_kind(ErrorKind::DegenerateFrame, [] { det_coeff_log_euclidean(0.5, 0.7, 0.7); });
}

TEST(DetCoefficient, ProjectionClosedForm) {
    EXPECT_NEAR(det_coeff_projection(0.25, 0.5), -3.7912607362388e-3, 1e-15);
    EXPECT_DOUBLE_EQ(det_coeff_projection(0.3, 0.7), det_coeff_projection(0.7, 0.3));
    EXPECT_EQ(det_coeff_projection(0.4, 0.4), 0.0);
    EXPECT_LT(det_coeff_projection(0.1, 0.9), 0.0);
    expect_kind(ErrorKind::DomainError, [] { det_coeff_projection(0.0, 0.5); });
    expect_kind(ErrorKind::DomainError, [] { det_coeff_projection(0.5, 1.0); });
}

TEST(DetCoefficient, ProjectionMatchesOracle) {
    for (auto [p, q] : {std::pair{0.25, 0.5}, std::pair{0.1, 0.9}, std::pair{0.6, 0.8}, std::pair{0.3, 0.4}}) {
        const double closed = det_coeff_projection(p, q);
        EXPECT_LE(std::abs(closed - projection_oracle(p, q)), 1e-6 * (1.0 + std::abs(closed))) << p << "," << q;
    }
}

TEST(ProjectionExponents, SortedCappedDistinct) {
    const std::vector<double> e = projection_exponents(0.5, 0.8);
    EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
    EXPECT_LE(e.back(), 6.0);
    for (std::size_t i = 1; i < e.size(); ++i) EXPECT_GT(e[i] - e[i - 1], 1e-9);
    EXPECT_EQ(e.front(), 0.5);
    EXPECT_EQ(projection_exponents(0.1, 0.2), (std::vector<double>{2.0, 4.0}));
}

TEST(NumericDetCoeff, ExactQuadraticDeterminant) {
    const ExtrapolationResult r = numeric_det_coeff([](double t) { return SymMatrix::diagonal({-1.5 * t, t}); },
                                                    default_theta_sequence());
    EXPECT_NEAR(r.value, -1.5, 1e-13);
    EXPECT_LE(r.error_estimate, 1e-13);
    EXPECT_EQ(r.raw.size(), 8u);
}

TEST(NumericDetCoeff, EliminatesPolynomialCorrections) {
    const ExtrapolationResult r = numeric_det_coeff(
        [](double t) { return SymMatrix::diagonal({t * (2.0 + 3.0 * t * t - 7.0 * std::pow(t, 4)), t}); },
        default_theta_sequence());
    EXPECT_NEAR(r.value, 2.0, 1e-11);
}

TEST(NumericDetCoeff, Errors) {
    const auto osc = [](double t) { return SymMatrix::diagonal({t * std::sin(1.0 / t), t}); };
    expect_kind(ErrorKind::NoConvergence, [&] { numeric_det_coeff(osc, default_theta_sequence()); });
    const auto flat = [](double t) { return SymMatrix::diagonal({t, t}); };
    expect_kind(ErrorKind::InvalidArgument, [&] { numeric_det_coeff(flat, {0.1, 0.05, 0.025}); });
    expect_kind(ErrorKind::InvalidArgument, [&] { numeric_det_coeff(flat, {0.1, 0.2, 0.4, 0.8}); });
    expect_kind(ErrorKind::InvalidArgument, [&] { numeric_det_coeff(flat, {0.1, 0.05, 0.02, 0.01}); });
}
