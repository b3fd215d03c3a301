#include <gtest/gtest.h>

#include <sstream>

#include "powmean/suites.hpp"
#include "test_util.hpp"

using namespace powmean;
using testutil::expect_kind;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.pmin = -1.0;
    c.pmax = 1.0;
    c.qmin = -1.0;
    c.qmax = 1.0;
    c.step = 0.5;
    c.trials = 20;
    return c;
}

std::string csv(const std::vector<ScanReportRow>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

}  // namespace

TEST(Grid, ValuesLandOnBoundaries) {
    const std::vector<double> g = grid_values(-1.0, 1.0, 0.1);
    ASSERT_EQ(g.size(), 21u);
    EXPECT_EQ(g[5], -0.5);
    EXPECT_EQ(g[10], 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_EQ(grid_values(0.0, 0.0, 0.5), (std::vector<double>{0.0}));
    expect_kind(ErrorKind::InvalidArgument, [] { grid_values(0.0, 1.0, 0.0); });
}

TEST(Grid, CellSeedsDiffer) {
    EXPECT_EQ(cell_seed(1, 2, 3), cell_seed(1, 2, 3));
    EXPECT_NE(cell_seed(1, 2, 3), cell_seed(1, 3, 2));
    EXPECT_NE(cell_seed(1, 2, 3), cell_seed(2, 2, 3));
}

TEST(RunConfig, Validation) {
    EXPECT_NO_THROW(RunConfig{}.validate());
    RunConfig c;
    c.step = 0.0;
    expect_kind(ErrorKind::InvalidArgument, [&] { c.validate(); });
    c = RunConfig{};
    c.trials = 0;
    expect_kind(ErrorKind::InvalidArgument, [&] { c.validate(); });
    c = RunConfig{};
    c.pmin = 3.0;
    expect_kind(ErrorKind::InvalidArgument, [&] { c.validate(); });
    c = RunConfig{};
    c.order_tol = -1.0;
    expect_kind(ErrorKind::InvalidArgument, [&] { c.validate(); });
}

TEST(Scan, DefaultGridIsConsistent) {
    const std::vector<ScanReportRow> rows = run_scan(RunConfig{});
    ASSERT_EQ(rows.size(), 81u);
    for (const ScanReportRow& r : rows) {
        EXPECT_TRUE(r.consistent()) << r.p << "," << r.q << " " << to_string(r.verdict);
        EXPECT_EQ(r.label, classify({r.p, r.q}));
    }
    EXPECT_EQ(rows[1].p, -2.0);
    EXPECT_EQ(rows[1].q, -1.5);
}

TEST(Scan, DeterministicAcrossThreadCounts) {
    RunConfig a = small_config();
    a.threads = 1;
    RunConfig b = small_config();
    b.threads = 4;
    EXPECT_EQ(csv(run_scan(a)), csv(run_scan(b)));
    EXPECT_EQ(csv(run_scan(a)), csv(run_scan(a)));
    RunConfig c = small_config();
    c.seed = 7;
    EXPECT_NE(csv(run_scan(a)), csv(run_scan(c)));
}

TEST(Scan, CsvFormat) {
    const std::string text = csv(run_scan(small_config()));
    EXPECT_EQ(text.rfind(std::string(kCsvHeader) + "\n", 0), 0u);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 26);
    EXPECT_NE(text.find(",in-region,fuzz-pass,"), std::string::npos);
    EXPECT_NE(text.find(",scalar-fail,scalar-fail,"), std::string::npos);
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(-2.0), "-2");
}

TEST(Verdicts, Consistency) {
    ScanReportRow r;
    r.label = {CaseKind::InRegion, false};
    r.verdict = Verdict::FuzzPass;
    EXPECT_TRUE(r.consistent());
    r.verdict = Verdict::FuzzFail;
    EXPECT_FALSE(r.consistent());
    r.label = {CaseKind::RotatedDiagonal, false};
    r.verdict = Verdict::CertifiedCounterexample;
    EXPECT_TRUE(r.consistent());
    r.verdict = Verdict::SearchFailed;
    EXPECT_FALSE(r.consistent());
    r.label = {CaseKind::ScalarFail, false};
    r.verdict = Verdict::ScalarFail;
    EXPECT_TRUE(r.consistent());
}

TEST(OrderFuzz, InRegionMarginIsNonNegative) {
    for (RegionPoint pt : {RegionPoint{1.0, 2.0}, RegionPoint{-3.0, -1.0}, RegionPoint{-1.0, 1.0},
                           RegionPoint{0.5, 1.0}, RegionPoint{-1.0, -0.5}}) {
        EXPECT_GE(order_fuzz_margin(pt, 100, 5, 4.0), -1e-9) << pt.p << "," << pt.q;
    }
    EXPECT_LT(order_fuzz_margin({0.0, 2.0}, 200, 5, 1e4), 1.0);
}

TEST(Parsers, FuzzTargetsAndLemmas) {
    EXPECT_EQ(parse_fuzz_target("region"), FuzzTarget::Region);
    EXPECT_EQ(parse_fuzz_target("unital-maps"), FuzzTarget::UnitalMaps);
    EXPECT_EQ(parse_fuzz_target("thm25"), FuzzTarget::UnitalMaps);
    EXPECT_EQ(parse_fuzz_target("duality"), FuzzTarget::Duality);
    EXPECT_EQ(parse_fuzz_target("limit"), FuzzTarget::Limit);
    expect_kind(ErrorKind::InvalidArgument, [] { parse_fuzz_target("bogus"); });
    EXPECT_EQ(parse_lemma("3.1"), LemmaKind::Rotated);
    EXPECT_EQ(parse_lemma("log-euclidean"), LemmaKind::LogEuclidean);
    EXPECT_EQ(parse_lemma("3.3"), LemmaKind::Projection);
    expect_kind(ErrorKind::InvalidArgument, [] { parse_lemma("3.4"); });
}

TEST(Fuzz, SmallRunsPass) {
    for (FuzzTarget t : {FuzzTarget::Region, FuzzTarget::UnitalMaps, FuzzTarget::Duality, FuzzTarget::Limit}) {
        const FuzzReport r = run_fuzz(t, 50, 11);
        EXPECT_EQ(r.trials, 50);
        EXPECT_TRUE(r.passed()) << r.first_failure;
    }
    expect_kind(ErrorKind::InvalidArgument, [] { run_fuzz(FuzzTarget::Region, 0, 1); });
}

TEST(Fuzz, Deterministic) {
    const FuzzReport a = run_fuzz(FuzzTarget::Duality, 40, 3);
    const FuzzReport b = run_fuzz(FuzzTarget::Duality, 40, 3);
    EXPECT_EQ(a.worst, b.worst);
}

TEST(VerifyLemma, AllThreeKinds) {
    const LemmaCheck proj = verify_lemma(LemmaKind::Projection, 0.25, 0.5, 0, 0);
    EXPECT_TRUE(proj.passed);
    EXPECT_NEAR(proj.closed_form, -3.791260736238831e-3, 1e-15);
    EXPECT_TRUE(verify_lemma(LemmaKind::Rotated, 0.25, 0.5, 0.1, 3.0).passed);
    EXPECT_TRUE(verify_lemma(LemmaKind::LogEuclidean, 0, 1.0, 0.05, 4.0).passed);
    const LemmaCheck same = verify_lemma(LemmaKind::Rotated, 0.3, 0.3, 0.2, 2.0);
    EXPECT_EQ(same.closed_form, 0.0);
    EXPECT_TRUE(same.passed);
    expect_kind(ErrorKind::DegenerateFrame, [] { verify_lemma(LemmaKind::LogEuclidean, 0, 1.0, 0.5, 2.0); });
}
