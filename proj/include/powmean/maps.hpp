#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "powmean/symmat.hpp"

namespace powmean {

/// Finite rotation angle in radians.
class RotationAngle {
public:
    explicit RotationAngle(double radians);
    double radians() const noexcept { return radians_; }

private:
    double radians_;
};

using IndexPair = std::array<std::size_t, 2>;

struct BlockAverageTag {
    std::size_t block_dim;
};
struct CompressionTag {
    std::vector<std::size_t> indices;
};
/// Z -> (Z[pair_a] + U Z[pair_b] U^T) / 2 with U the plane rotation by theta.
struct RotatedPinchTag {
    IndexPair pair_a;
    IndexPair pair_b;
    double theta;
};
struct KrausTag {
    std::vector<Matrix> factors;
};
struct GeneralTag {};

using MapTag = std::variant<BlockAverageTag, CompressionTag, RotatedPinchTag, KrausTag, GeneralTag>;

/// Linear map from in_dim x in_dim to out_dim x out_dim matrices. The action
/// matrix (out_dim^2 x in_dim^2) acts on row-major vectorizations; the tag
/// selects an exact structural evaluation path where one exists.
class LinearMatrixMap {
public:
    static LinearMatrixMap general(std::size_t in_dim, std::size_t out_dim, Matrix action);

    std::size_t in_dim() const noexcept { return in_dim_; }
    std::size_t out_dim() const noexcept { return out_dim_; }
    const Matrix& action() const noexcept { return action_; }
    const MapTag& tag() const noexcept { return tag_; }

    SymMatrix apply(const SymMatrix& z) const;
    SymMatrix apply_via_action(const SymMatrix& z) const;

    /// ||apply(I) - I||_inf.
    double unitality_defect() const;
    bool is_unital(const ToleranceProfile& tol = {}) const;

    /// Smallest normalized output eigenvalue lambda_min(Phi(Z)) / ||Phi(Z)||
    /// over seeded random PSD inputs (some of them singular).
    double sampled_positivity(int trials, std::uint64_t seed) const;
    bool is_positive_sampled(int trials, std::uint64_t seed, const ToleranceProfile& tol = {}) const;

private:
    friend LinearMatrixMap block_average(std::size_t);
    friend LinearMatrixMap compression(std::size_t, std::span<const std::size_t>);
    friend LinearMatrixMap rotated_pinch(IndexPair, IndexPair, RotationAngle);
    friend LinearMatrixMap kraus_map(std::span<const Matrix>, const ToleranceProfile&);

    LinearMatrixMap(std::size_t in_dim, std::size_t out_dim, Matrix action, MapTag tag);
    static Matrix action_from_kraus(std::span<const Matrix> factors);

    std::size_t in_dim_;
    std::size_t out_dim_;
    Matrix action_;
    MapTag tag_;
};

/// [[A, X], [Y, B]] -> (A + B) / 2 on 2n x 2n inputs.
LinearMatrixMap block_average(std::size_t n);

/// Principal submatrix on strictly increasing 0-based indices of an
/// in_dim x in_dim input. Throws Error(IndexOutOfRange).
LinearMatrixMap compression(std::size_t in_dim, std::span<const std::size_t> indices);
LinearMatrixMap compression(std::size_t in_dim, std::initializer_list<std::size_t> indices);

/// Identity map on n x n matrices (compression onto every index).
LinearMatrixMap identity_map(std::size_t n);

/// Unital CP map M_3 -> M_2: Z -> (Z[pair_a] + U Z[pair_b] U^T) / 2 with
/// 0-based index pairs.
LinearMatrixMap rotated_pinch(IndexPair pair_a, IndexPair pair_b, RotationAngle theta);

/// Z -> sum_i V_i Z V_i^T. Requires sum_i V_i V_i^T = I within psd_tol,
/// otherwise throws Error(NotUnital).
LinearMatrixMap kraus_map(std::span<const Matrix> factors, const ToleranceProfile& tol = {});

/// Seeded unital CP map M_in -> M_out with `count` Gaussian Kraus factors
/// normalized by (sum V_i V_i^T)^{-1/2}.
LinearMatrixMap random_unital_kraus(std::size_t in_dim, std::size_t out_dim, std::size_t count,
                                    std::mt19937_64& rng);

/// Phi(A^p) for 2 x 2 positive definite A through the affine identity
/// A^p = a A - b I, where a, b are built from the eigenvalues of A. Falls
/// back to direct evaluation when the eigenvalues are confluent.
SymMatrix phi_power_affine_2x2(const LinearMatrixMap& phi, double p, const SymMatrix& a,
                               const ToleranceProfile& tol = {});

}  // namespace powmean
