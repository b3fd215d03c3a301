#include "powmean/region.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "powmean/errors.hpp"

namespace powmean {

namespace {

std::optional<CaseKind> direct_case(double p, double q) {
    if (p == 0.0 && q > 0.0) return CaseKind::LogEuclidean;
    if (p > -1.0 && p < 0.5 && p != 0.0 && q > std::max(0.0, p)) return CaseKind::RotatedDiagonal;
    if (p > 0.0 && p < q && q < 1.0) return CaseKind::RankOneProjection;
    return std::nullopt;
}

}  // namespace

std::string CaseLabel::to_string() const {
    std::string s;
    switch (kind) {
        case CaseKind::InRegion: return "in-region";
        case CaseKind::ScalarFail: return "scalar-fail";
        case CaseKind::RotatedDiagonal: s = "rotated-diagonal"; break;
        case CaseKind::LogEuclidean: s = "log-euclidean"; break;
        case CaseKind::RankOneProjection: s = "rank-one-projection"; break;
    }
    return via_dual ? s + "/dual" : s;
}

bool in_sufficient_region(RegionPoint pt) noexcept {
    const double p = pt.p;
    const double q = pt.q;
    return p == q
        || (1.0 <= p && p < q)
        || (p < q && q <= -1.0)
        || (p <= -1.0 && q >= 1.0)
        || (0.5 <= p && p < 1.0 && 1.0 <= q)
        || (p <= -1.0 && -1.0 < q && q <= -0.5);
}

RegionPoint dual(RegionPoint pt) noexcept { return {-pt.q, -pt.p}; }

CaseLabel classify(RegionPoint pt) {
    if (!std::isfinite(pt.p) || !std::isfinite(pt.q)) throw Error(ErrorKind::InvalidArgument, "non-finite exponent");
    if (in_sufficient_region(pt)) return {CaseKind::InRegion, false};
    if (pt.p > pt.q) return {CaseKind::ScalarFail, false};
    if (auto c = direct_case(pt.p, pt.q)) return {*c, false};
    const RegionPoint d = dual(pt);
    if (auto c = direct_case(d.p, d.q)) return {*c, true};
    // Unreachable: every p<q outside the region is covered by the cases above.
    throw Error(ErrorKind::InvalidArgument, "point escapes the case analysis");
}

}  // namespace powmean
