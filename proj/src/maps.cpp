#include "powmean/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "powmean/errors.hpp"

namespace powmean {

namespace {

// Row selector S with S Z S^T = Z[indices].
Matrix selector(std::size_t in_dim, std::span<const std::size_t> indices) {
    Matrix s(indices.size(), in_dim);
    for (std::size_t r = 0; r < indices.size(); ++r) s(r, indices[r]) = 1.0;
    return s;
}

void check_pair(const IndexPair& pair) {
    if (pair[0] >= 3 || pair[1] >= 3 || pair[0] >= pair[1]) {
        throw Error(ErrorKind::IndexOutOfRange, "rotated pinch pairs must be increasing 2-subsets of {0,1,2}");
    }
}

}  // namespace

RotationAngle::RotationAngle(double radians) : radians_(radians) {
    if (!std::isfinite(radians)) throw Error(ErrorKind::InvalidArgument, "rotation angle must be finite");
}

LinearMatrixMap::LinearMatrixMap(std::size_t in_dim, std::size_t out_dim, Matrix action, MapTag tag)
    : in_dim_(in_dim), out_dim_(out_dim), action_(std::move(action)), tag_(std::move(tag)) {}

LinearMatrixMap LinearMatrixMap::general(std::size_t in_dim, std::size_t out_dim, Matrix action) {
    if (in_dim < 1 || in_dim > kMaxDim || out_dim < 1 || out_dim > kMaxDim) {
        throw Error(ErrorKind::InvalidArgument, "map dimensions outside 1..8");
    }
    if (action.rows() != out_dim * out_dim || action.cols() != in_dim * in_dim) {
        throw Error(ErrorKind::DimensionMismatch, "action matrix must be out^2 x in^2");
    }
    return LinearMatrixMap(in_dim, out_dim, std::move(action), GeneralTag{});
}

Matrix LinearMatrixMap::action_from_kraus(std::span<const Matrix> factors) {
    const std::size_t out = factors.front().rows();
    const std::size_t in = factors.front().cols();
    Matrix action(out * out, in * in);
    for (const Matrix& v : factors)
        for (std::size_t i = 0; i < out; ++i)
            for (std::size_t j = 0; j < out; ++j)
                for (std::size_t k = 0; k < in; ++k) {
                    const double vik = v(i, k);
                    if (vik == 0.0) continue;
                    for (std::size_t l = 0; l < in; ++l) action(i * out + j, k * in + l) += vik * v(j, l);
                }
    return action;
}

SymMatrix LinearMatrixMap::apply_via_action(const SymMatrix& z) const {
    if (z.dim() != in_dim_) throw Error(ErrorKind::DimensionMismatch, "map input dimension");
    Matrix out(out_dim_, out_dim_);
    for (std::size_t r = 0; r < out_dim_ * out_dim_; ++r) {
        double acc = 0.0;
        for (std::size_t k = 0; k < in_dim_; ++k)
            for (std::size_t l = 0; l < in_dim_; ++l) acc += action_(r, k * in_dim_ + l) * z(k, l);
        out(r / out_dim_, r % out_dim_) = acc;
    }
    return SymMatrix::symmetrized(out);
}

SymMatrix LinearMatrixMap::apply(const SymMatrix& z) const {
    if (z.dim() != in_dim_) throw Error(ErrorKind::DimensionMismatch, "map input dimension");
    struct Visitor {
        const LinearMatrixMap& self;
        const SymMatrix& z;

        SymMatrix operator()(const BlockAverageTag& t) const {
            const std::size_t n = t.block_dim;
            SymMatrix out(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) out.set(i, j, 0.5 * (z(i, j) + z(n + i, n + j)));
            return out;
        }
        SymMatrix operator()(const CompressionTag& t) const { return z.principal(t.indices); }
        SymMatrix operator()(const RotatedPinchTag& t) const {
            const SymMatrix first = z.principal(t.pair_a);
            const SymMatrix second = congruence(rotation(t.theta), z.principal(t.pair_b));
            return 0.5 * (first + second);
        }
        SymMatrix operator()(const KrausTag& t) const {
            SymMatrix out(self.out_dim_);
            for (const Matrix& v : t.factors) out += congruence(v, z);
            return out;
        }
        SymMatrix operator()(const GeneralTag&) const { return self.apply_via_action(z); }
    };
    return std::visit(Visitor{*this, z}, tag_);
}

double LinearMatrixMap::unitality_defect() const {
    return distance_inf(apply(SymMatrix::identity(in_dim_)), SymMatrix::identity(out_dim_));
}

bool LinearMatrixMap::is_unital(const ToleranceProfile& tol) const {
    return unitality_defect() <= tol.psd_tol;
}

double LinearMatrixMap::sampled_positivity(int trials, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 1.0;
    for (int t = 0; t < trials; ++t) {
        Vector eig(in_dim_);
        for (double& l : eig) l = unit(rng);
        // Every third sample is singular to probe the boundary of the cone.
        if (t % 3 == 0) eig[static_cast<std::size_t>(t / 3) % in_dim_] = 0.0;
        const SymMatrix z = SpectralDecomposition{eig, random_orthogonal(in_dim_, rng)}.reconstruct();
        const SymMatrix out = apply(z);
        const double scale = out.norm_inf();
        if (scale == 0.0) continue;
        worst = std::min(worst, eig_sym(out).eigenvalues.front() / scale);
    }
    return worst;
}

bool LinearMatrixMap::is_positive_sampled(int trials, std::uint64_t seed, const ToleranceProfile& tol) const {
    return sampled_positivity(trials, seed) >= -tol.psd_tol;
}

LinearMatrixMap block_average(std::size_t n) {
    if (n < 1 || 2 * n > kMaxDim) throw Error(ErrorKind::InvalidArgument, "block size outside 1..4");
    const double w = 1.0 / std::sqrt(2.0);
    std::vector<std::size_t> top(n), bottom(n);
    std::iota(top.begin(), top.end(), 0);
    std::iota(bottom.begin(), bottom.end(), n);
    const std::vector<Matrix> factors{selector(2 * n, top) * w, selector(2 * n, bottom) * w};
    return LinearMatrixMap(2 * n, n, LinearMatrixMap::action_from_kraus(factors), BlockAverageTag{n});
}

LinearMatrixMap compression(std::size_t in_dim, std::span<const std::size_t> indices) {
    if (in_dim < 1 || in_dim > kMaxDim) throw Error(ErrorKind::InvalidArgument, "input dimension outside 1..8");
    if (indices.empty()) throw Error(ErrorKind::IndexOutOfRange, "empty index set");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= in_dim || (i > 0 && indices[i] <= indices[i - 1])) {
            throw Error(ErrorKind::IndexOutOfRange, "compression indices must be strictly increasing and < in_dim");
        }
    }
    const std::vector<Matrix> factors{selector(in_dim, indices)};
    return LinearMatrixMap(in_dim, indices.size(), LinearMatrixMap::action_from_kraus(factors),
                           CompressionTag{{indices.begin(), indices.end()}});
}

LinearMatrixMap compression(std::size_t in_dim, std::initializer_list<std::size_t> indices) {
    return compression(in_dim, std::span<const std::size_t>(indices.begin(), indices.size()));
}

LinearMatrixMap identity_map(std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return compression(n, all);
}

LinearMatrixMap rotated_pinch(IndexPair pair_a, IndexPair pair_b, RotationAngle theta) {
    check_pair(pair_a);
    check_pair(pair_b);
    const double w = 1.0 / std::sqrt(2.0);
    const std::vector<Matrix> factors{selector(3, pair_a) * w, rotation(theta.radians()) * selector(3, pair_b) * w};
    return LinearMatrixMap(3, 2, LinearMatrixMap::action_from_kraus(factors),
                           RotatedPinchTag{pair_a, pair_b, theta.radians()});
}

LinearMatrixMap kraus_map(std::span<const Matrix> factors, const ToleranceProfile& tol) {
    if (factors.empty()) throw Error(ErrorKind::InvalidArgument, "at least one Kraus factor required");
    const std::size_t out = factors.front().rows();
    const std::size_t in = factors.front().cols();
    if (out < 1 || out > kMaxDim || in < 1 || in > kMaxDim) {
        throw Error(ErrorKind::InvalidArgument, "Kraus factor shape outside 1..8");
    }
    Matrix gram(out, out);
    for (const Matrix& v : factors) {
        if (v.rows() != out || v.cols() != in) throw Error(ErrorKind::DimensionMismatch, "Kraus factors differ in shape");
        gram += v * v.transpose();
    }
    if ((gram - Matrix::identity(out)).norm_inf() > tol.psd_tol) {
        throw Error(ErrorKind::NotUnital, "sum of V_i V_i^T differs from the identity");
    }
    return LinearMatrixMap(in, out, LinearMatrixMap::action_from_kraus(factors),
                           KrausTag{{factors.begin(), factors.end()}});
}

LinearMatrixMap random_unital_kraus(std::size_t in_dim, std::size_t out_dim, std::size_t count,
                                    std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Matrix> factors(count, Matrix(out_dim, in_dim));
    SymMatrix gram(out_dim);
    for (Matrix& v : factors) {
        for (std::size_t i = 0; i < out_dim; ++i)
            for (std::size_t j = 0; j < in_dim; ++j) v(i, j) = gauss(rng);
        gram += SymMatrix::symmetrized(v * v.transpose());
    }
    const Matrix normalizer = mat_fun(gram, ScalarFunction::power(-0.5)).to_matrix();
    for (Matrix& v : factors) v = normalizer * v;
    return kraus_map(factors);
}

SymMatrix phi_power_affine_2x2(const LinearMatrixMap& phi, double p, const SymMatrix& a,
                               const ToleranceProfile& tol) {
    if (phi.in_dim() != 2 || a.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "affine route needs 2x2 input");
    const SpectralDecomposition d = eig_sym(a, tol);
    const double lo = d.eigenvalues[0];
    const double hi = d.eigenvalues[1];
    if (!(lo > 0.0)) throw Error(ErrorKind::DomainError, "affine route needs a positive definite input");
    if (hi - lo <= tol.confluent_tol * hi) {
        return phi.apply(mat_fun(d, ScalarFunction::power(p), tol));
    }
    // A^p = slope * A - offset * I on the spectrum {lo, hi}.
    const double slope = ScalarFunction::power(p).secant(hi, lo);
    const double offset = lo * hi * ScalarFunction::power(p - 1.0).secant(hi, lo);
    return slope * phi.apply(a) - offset * phi.apply(SymMatrix::identity(2));
}

}  // namespace powmean
