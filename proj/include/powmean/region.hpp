#pragma once

#include <string>

namespace powmean {

struct RegionPoint {
    double p = 0.0;
    double q = 0.0;

    friend bool operator==(const RegionPoint&, const RegionPoint&) = default;
};

/// Which counterexample construction applies to a point.
///   RotatedDiagonal:   A = diag(1,x), B rotated diag(1,y); -1<p<1/2, p!=0, q>max(0,p)
///   LogEuclidean:      same family against the Log-Euclidean mean; p=0<q
///   RankOneProjection: A = diag(2,0), B a rotated rank-one projection; 0<p<q<1
enum class CaseKind { InRegion, ScalarFail, RotatedDiagonal, LogEuclidean, RankOneProjection };

struct CaseLabel {
    CaseKind kind = CaseKind::InRegion;
    bool via_dual = false;

    /// "in-region", "scalar-fail", "rotated-diagonal", "log-euclidean",
    /// "rank-one-projection", with "/dual" appended for dual dispatch.
    std::string to_string() const;

    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

/// The six closed conditions under which M_p(A,B) <= M_q(A,B) for all
/// positive definite A, B.
bool in_sufficient_region(RegionPoint pt) noexcept;

/// (p,q) -> (-q,-p).
RegionPoint dual(RegionPoint pt) noexcept;

/// First match of: in-region, p>q, the three direct cases, the three cases at
/// the dual point. Throws InvalidArgument for non-finite input.
CaseLabel classify(RegionPoint pt);

}  // namespace powmean
