#include "powmean/expansions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "powmean/errors.hpp"

namespace powmean {

namespace {

// 8-point Gauss-Legendre rule on [0,1].
constexpr std::array<double, 8> kGLNodes{
    0.019855071751231856, 0.10166676129318664, 0.2372337950418355, 0.4082826787521751,
    0.5917173212478249,   0.7627662049581645,  0.8983332387068134, 0.9801449282487681};
constexpr std::array<double, 8> kGLWeights{
    0.050614268145188129, 0.11119051722668724, 0.15685332293894364, 0.18134189168918099,
    0.18134189168918099,  0.15685332293894364, 0.11119051722668724, 0.050614268145188129};

void require_smooth(const ScalarFunction& f, double x) {
    if (!f.smooth_at(x)) throw Error(ErrorKind::DomainError, f.name() + " is not smooth at a node");
}

double node_scale(double a, double b, double c = 0.0) {
    return std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300});
}

// Hermite-Genocchi: f[a,b,c] = integral of f''(a + s(b-a) + t(c-a)) over the
// unit simplex, with the Duffy substitution t = (1-s) u.
double hermite_genocchi(const ScalarFunction& f, double a, double b, double c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < kGLNodes.size(); ++i) {
        const double s = kGLNodes[i];
        double inner = 0.0;
        for (std::size_t j = 0; j < kGLNodes.size(); ++j) {
            const double t = (1.0 - s) * kGLNodes[j];
            inner += kGLWeights[j] * f.second_derivative(a + s * (b - a) + t * (c - a));
        }
        acc += kGLWeights[i] * (1.0 - s) * inner;
    }
    return acc;
}

struct Eigenframe {
    SpectralDecomposition spec;
    Matrix vt;
};

Eigenframe eigenframe(const SymMatrix& base, const ToleranceProfile& tol) {
    Eigenframe e{eig_sym(base, tol), {}};
    e.vt = e.spec.basis.transpose();
    return e;
}

Matrix to_eigenbasis(const Eigenframe& e, const SymMatrix& h) {
    return e.vt * h.to_matrix() * e.spec.basis;
}

SymMatrix from_eigenbasis(const Eigenframe& e, const Matrix& m) {
    return SymMatrix::symmetrized(e.spec.basis * m * e.vt);
}

void check_degenerate_sum(double s, const ToleranceProfile& tol, const char* what) {
    if (std::abs(s - 2.0) <= tol.confluent_tol * 2.0) throw Error(ErrorKind::DegenerateFrame, what);
}

SymMatrix offdiag(double v) {
    SymMatrix m(2);
    m.set(0, 1, v);
    return m;
}

// Closed-form ingredients of the rotated-diagonal family at exponent r.
struct RotatedScalars {
    double xr, yr;   // x^r, y^r
    double mean;     // ((x^r + y^r)/2)^{1/r}
    double w;        // 1 - mean
    double denom;    // 2 - x^r - y^r
};

RotatedScalars rotated_scalars(double r, double x, double y) {
    RotatedScalars s{};
    s.xr = std::pow(x, r);
    s.yr = std::pow(y, r);
    s.mean = std::pow((s.xr + s.yr) / 2.0, 1.0 / r);
    s.w = 1.0 - s.mean;
    s.denom = 2.0 - s.xr - s.yr;
    return s;
}

void check_positive(double x, double y) {
    if (!(x > 0.0 && y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw Error(ErrorKind::InvalidArgument, "x and y must be positive and finite");
    }
}

}  // namespace

double divided_diff_1(const ScalarFunction& f, double a, double b, const ToleranceProfile& tol) {
    require_smooth(f, a);
    require_smooth(f, b);
    if (std::abs(a - b) <= tol.confluent_tol * node_scale(a, b)) return f.derivative(0.5 * (a + b));
    return f.secant(a, b);
}

double divided_diff_2(const ScalarFunction& f, double a, double b, double c, const ToleranceProfile& tol) {
    std::array<double, 3> n{a, b, c};
    for (double v : n) require_smooth(f, v);
    std::sort(n.begin(), n.end());
    const double spread = n[2] - n[0];
    const double scale = node_scale(a, b, c);
    if (spread <= tol.confluent_tol * scale) return 0.5 * f.second_derivative((n[0] + n[1] + n[2]) / 3.0);
    if (spread <= 1e-2 * scale) return hermite_genocchi(f, n[0], n[1], n[2]);
    return (divided_diff_1(f, n[1], n[2], tol) - divided_diff_1(f, n[0], n[1], tol)) / spread;
}

SymMatrix frechet_d1(const ScalarFunction& f, const SymMatrix& base, const SymMatrix& h, const ToleranceProfile& tol) {
    if (base.dim() != h.dim()) throw Error(ErrorKind::DimensionMismatch, "direction size");
    const Eigenframe e = eigenframe(base, tol);
    const Vector& l = e.spec.eigenvalues;
    Matrix ht = to_eigenbasis(e, h);
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < l.size(); ++j) ht(i, j) *= divided_diff_1(f, l[i], l[j], tol);
    return from_eigenbasis(e, ht);
}

SymMatrix frechet_d2(const ScalarFunction& f, const SymMatrix& base, const SymMatrix& h, const SymMatrix& k,
                     const ToleranceProfile& tol) {
    if (base.dim() != h.dim() || base.dim() != k.dim()) throw Error(ErrorKind::DimensionMismatch, "direction size");
    const Eigenframe e = eigenframe(base, tol);
    const Vector& l = e.spec.eigenvalues;
    const std::size_t n = l.size();
    const Matrix ht = to_eigenbasis(e, h);
    const Matrix kt = to_eigenbasis(e, k);
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
                acc += divided_diff_2(f, l[i], l[m], l[j], tol) * (ht(i, m) * kt(m, j) + kt(i, m) * ht(m, j));
            }
            out(i, j) = acc;
        }
    return from_eigenbasis(e, out);
}

TaylorFrame taylor_frame_rotated(double p, double x, double y, const ToleranceProfile& tol) {
    check_positive(x, y);
    if (p == 0.0) throw Error(ErrorKind::InvalidArgument, "rotated frame needs p != 0");
    const double xp = std::pow(x, p);
    const double yp = std::pow(y, p);
    check_degenerate_sum(xp + yp, tol, "x^p + y^p = 2");
    const double u = 1.0 - yp;
    return {SymMatrix::diagonal({2.0, xp + yp}), offdiag(u), SymMatrix::diagonal({-u, u})};
}

TaylorFrame taylor_frame_log_euclidean(double x, double y, const ToleranceProfile& tol) {
    check_positive(x, y);
    if (std::abs(x * y - 1.0) <= tol.confluent_tol) throw Error(ErrorKind::DegenerateFrame, "xy = 1");
    const double ly = std::log(y);
    return {SymMatrix::diagonal({0.0, std::log(x) + ly}), offdiag(-ly), SymMatrix::diagonal({ly, -ly})};
}

SymMatrix ExpansionCoefficients::model(double theta) const {
    SymMatrix m(2);
    m.set(0, 0, 1.0 + alpha11 * theta * theta);
    m.set(0, 1, alpha12 * theta);
    m.set(1, 1, m22 + alpha22 * theta * theta);
    return m;
}

ExpansionCoefficients alpha_rotated(double p, double x, double y, const ToleranceProfile& tol) {
    const TaylorFrame fr = taylor_frame_rotated(p, x, y, tol);
    const RotatedScalars s = rotated_scalars(p, x, y);
    const double u = 1.0 - s.yr;
    ExpansionCoefficients c;
    c.m22 = s.mean;
    c.alpha11 = -(1.0 - s.xr) * u / (2.0 * p * s.denom) - u * u * s.w / (s.denom * s.denom);
    c.alpha12 = u * s.w / s.denom;
    // mean = 2^{-1/p} f(G + tH + t^2 K) with f = x^{1/p}
    const ScalarFunction f = ScalarFunction::power(1.0 / p);
    const SymMatrix second = frechet_d1(f, fr.g, fr.k, tol) + 0.5 * frechet_d2(f, fr.g, fr.h, fr.h, tol);
    c.alpha22 = std::pow(2.0, -1.0 / p) * second(1, 1);
    return c;
}

ExpansionCoefficients alpha_log_euclidean(double x, double y, const ToleranceProfile& tol) {
    const TaylorFrame fr = taylor_frame_log_euclidean(x, y, tol);
    const double lx = std::log(x);
    const double ly = std::log(y);
    const double lxy = lx + ly;
    const double g = std::sqrt(x * y);
    ExpansionCoefficients c;
    c.m22 = g;
    c.alpha11 = lx * ly / (2.0 * lxy) - (1.0 - g) * ly * ly / (lxy * lxy);
    c.alpha12 = (1.0 - g) * ly / lxy;
    // mean = exp(G/2 + t H/2 + t^2 K/2)
    const ScalarFunction f = ScalarFunction::exp();
    const SymMatrix g2 = 0.5 * fr.g;
    const SymMatrix h2 = 0.5 * fr.h;
    const SymMatrix second = frechet_d1(f, g2, 0.5 * fr.k, tol) + 0.5 * frechet_d2(f, g2, h2, h2, tol);
    c.alpha22 = second(1, 1);
    return c;
}

DetCoefficientBreakdown det_coeff_rotated(double p, double q, double x, double y, const ToleranceProfile& tol) {
    check_positive(x, y);
    if (p == 0.0 || q == 0.0) throw Error(ErrorKind::InvalidArgument, "rotated coefficient needs p, q != 0");
    const RotatedScalars sp = rotated_scalars(p, x, y);
    const RotatedScalars sq = rotated_scalars(q, x, y);
    check_degenerate_sum(sp.xr + sp.yr, tol, "x^p + y^p = 2");
    check_degenerate_sum(sq.xr + sq.yr, tol, "x^q + y^q = 2");
    DetCoefficientBreakdown d;
    d.wp = sp.w;
    d.wq = sq.w;
    if (p == q) return d;
    if (std::abs(sq.mean - sp.mean) <= tol.confluent_tol * std::max(sp.mean, sq.mean)) {
        throw Error(ErrorKind::DegenerateFrame, "scalar means at p and q coincide");
    }
    const double tp = (1.0 - sp.xr) * (1.0 - sp.yr) / (p * sp.denom);
    const double tq = (1.0 - sq.xr) * (1.0 - sq.yr) / (q * sq.denom);
    const double bracket = (1.0 - sp.yr) / sp.denom - (1.0 - sq.yr) / sq.denom;
    d.delta1 = 0.5 * (tp - tq) * (sq.mean - sp.mean);
    d.delta2 = -bracket * bracket * sp.w * sq.w;
    d.total = d.delta1 + d.delta2;
    return d;
}

DetCoefficientBreakdown det_coeff_log_euclidean(double q, double x, double y, const ToleranceProfile& tol) {
    check_positive(x, y);
    if (q == 0.0) throw Error(ErrorKind::InvalidArgument, "log-euclidean coefficient needs q != 0");
    if (std::abs(x * y - 1.0) <= tol.confluent_tol) throw Error(ErrorKind::DegenerateFrame, "xy = 1");
    if (std::abs(x - y) <= tol.confluent_tol * std::max(x, y)) throw Error(ErrorKind::DegenerateFrame, "x = y");
    const RotatedScalars sq = rotated_scalars(q, x, y);
    check_degenerate_sum(sq.xr + sq.yr, tol, "x^q + y^q = 2");
    const double lx = std::log(x);
    const double ly = std::log(y);
    const double lxy = lx + ly;
    const double g = std::sqrt(x * y);
    DetCoefficientBreakdown d;
    d.wp = 1.0 - g;
    d.wq = sq.w;
    const double first = lx * ly / lxy + (1.0 - sq.xr) * (1.0 - sq.yr) / (q * sq.denom);
    const double bracket = ly / lxy - (1.0 - sq.yr) / sq.denom;
    d.delta1 = -0.5 * first * (sq.mean - g);
    d.delta2 = -bracket * bracket * d.wp * d.wq;
    d.total = d.delta1 + d.delta2;
    return d;
}

double det_coeff_projection(double p, double q) {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0)) throw Error(ErrorKind::DomainError, "p and q must lie in (0,1)");
    const double ap = std::pow(2.0, p) + 1.0;
    const double aq = std::pow(2.0, q) + 1.0;
    const double diff = 1.0 / ap - 1.0 / aq;
    return -std::pow(ap / 2.0, 1.0 / p) * std::pow(aq / 2.0, 1.0 / q) * diff * diff;
}

std::vector<double> projection_exponents(double p, double q) {
    std::vector<double> e{2.0 / p - 2.0, 2.0 / q - 2.0, 2.0, 2.0 / p, 2.0 / q, 4.0 / p - 2.0, 4.0 / q - 2.0,
                          2.0 / p + 2.0 / q - 2.0, 4.0};
    std::sort(e.begin(), e.end());
    std::vector<double> out;
    for (double v : e) {
        if (v > 6.0) break;
        if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
    }
    return out;
}

std::vector<double> default_theta_sequence(int count) {
    std::vector<double> t;
    for (int k = 0; k < count; ++k) t.push_back(std::ldexp(0.1, -k));
    return t;
}

ExtrapolationResult numeric_det_coeff(const std::function<SymMatrix(double)>& difference,
                                      const std::vector<double>& thetas, const RichardsonOptions& opts) {
    if (thetas.size() < 4) throw Error(ErrorKind::InvalidArgument, "need at least four theta values");
    const double ratio = thetas[0] / thetas[1];
    if (!(ratio > 1.0)) throw Error(ErrorKind::InvalidArgument, "thetas must be descending");
    for (std::size_t k = 1; k < thetas.size(); ++k) {
        if (!(thetas[k] > 0.0) || std::abs(thetas[k - 1] / thetas[k] - ratio) > 1e-12 * ratio) {
            throw Error(ErrorKind::InvalidArgument, "thetas must form a positive geometric sequence");
        }
    }
    ExtrapolationResult res;
    for (double t : thetas) {
        const SymMatrix d = difference(t);
        if (d.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "difference must be 2x2");
        res.raw.push_back((d(0, 0) * d(1, 1) - d(0, 1) * d(0, 1)) / (t * t));
    }
    // Column m eliminates exponents[m-1]; row k uses thetas up to k.
    std::vector<double> col = res.raw;
    double prev_last = col.back();
    double last = col.back();
    const std::size_t columns = std::min(opts.exponents.size(), col.size() - 1);
    for (std::size_t m = 0; m < columns; ++m) {
        const double f = std::pow(ratio, opts.exponents[m]);
        std::vector<double> next(col.size() - 1);
        for (std::size_t k = 1; k < col.size(); ++k) next[k - 1] = (f * col[k] - col[k - 1]) / (f - 1.0);
        prev_last = col.back();
        col = std::move(next);
        last = col.back();
    }
    res.value = last;
    res.error_estimate = std::abs(last - prev_last);
    const double target = std::max(opts.rel_tol * std::abs(last), opts.abs_tol);
    if (!(res.error_estimate <= 10.0 * target)) {
        throw Error(ErrorKind::NoConvergence, "Richardson tableau did not settle");
    }
    return res;
}

}  // namespace powmean
