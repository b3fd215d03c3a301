#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "powmean/counterexamples.hpp"
#include "powmean/errors.hpp"
#include "powmean/suites.hpp"

using namespace powmean;

namespace {

constexpr int kUsage = 2;
constexpr int kInRegion = 3;
constexpr int kDegenerate = 4;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("POWMEAN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "ignoring malformed POWMEAN_SEED='" << env << "'\n";
        }
    }
    return RunConfig{}.seed;
}

void print_vector(const char* name, const Vector& v) {
    std::printf("%s = [", name);
    for (std::size_t i = 0; i < v.size(); ++i) std::printf("%s%.17g", i ? ", " : "", v[i]);
    std::printf("]\n");
}

int cmd_scan(const RunConfig& cfg, const std::string& out) {
    try {
        cfg.validate();
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    }
    const std::vector<ScanReportRow> rows = run_scan(cfg);
    if (out.empty() || out == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open " << out << '\n';
            return 1;
        }
        write_csv(f, rows);
    }
    int bad = 0;
    for (const auto& r : rows) {
        if (!r.consistent()) {
            ++bad;
            std::cerr << "inconsistent row: p=" << format_double(r.p) << " q=" << format_double(r.q) << ' '
                      << r.label.to_string() << ' ' << to_string(r.verdict) << '\n';
        }
    }
    std::cerr << rows.size() << " cells, " << bad << " inconsistent\n";
    return bad == 0 ? 0 : 1;
}

int cmd_counterexample(double p, double q, std::uint64_t seed, double cert_tol, const std::string& out) {
    SearchOptions opts;
    opts.cert_tol = cert_tol;
    CounterexampleWitness w;
    try {
        w = find_counterexample({p, q}, opts);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InRegion) {
            std::printf("(%.17g, %.17g) is in sufficiency region: no counterexample exists\n", p, q);
            return kInRegion;
        }
        std::cerr << e.what() << '\n';
        return 1;
    }
    std::printf("case      %s\n", w.label.to_string().c_str());
    std::printf("p, q      %s, %s\n", w.p.to_string().c_str(), w.q.to_string().c_str());
    std::printf("theta     %.17g\n", w.theta);
    if (w.x > 0.0) std::printf("x, y      %.17g, %.17g\n", w.x, w.y);
    if (w.epsilon > 0.0) std::printf("epsilon   %.17g\n", w.epsilon);
    std::printf("A =\n%s\n", w.a.to_string(17).c_str());
    std::printf("B =\n%s\n", w.b.to_string(17).c_str());
    std::printf("lambda_min(M_q - M_p) = %.17g\n", w.neg_eigenvalue);
    print_vector("witness", w.witness);
    if (w.near_cap) std::printf("note: search ended near its cap\n");
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open " << out << '\n';
            return 1;
        }
        ScanReportRow row = counterexample_row(w, seed);
        row.p = p;
        row.q = q;
        write_csv(f, {row});
    }
    return 0;
}

int cmd_choi_table() {
    const std::vector<double> ps{-2.0, -0.5, 0.5, 1.5, 3.0};
    std::printf("%8s  %24s  %24s  %s\n", "p", "lambda_1", "lambda_2", "signs");
    for (const ChoiRow& r : choi_sign_table(ps)) {
        std::printf("%8.3g  %24.17g  %24.17g  %s\n", r.p, r.eigenvalues[0], r.eigenvalues[1], r.signs.c_str());
    }
    return 0;
}

int cmd_verify_lemma(const std::string& lemma, double p, double q, double x, double y) {
    LemmaKind kind;
    try {
        kind = parse_lemma(lemma);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    }
    try {
        const LemmaCheck c = verify_lemma(kind, p, q, x, y);
        std::printf("closed form   %.17g\n", c.closed_form);
        std::printf("oracle        %.17g  (tableau error %.3g)\n", c.oracle, c.oracle_error);
        std::printf("relative gap  %.3g  %s\n", c.gap, c.passed ? "PASS" : "FAIL");
        return c.passed ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        if (e.kind() == ErrorKind::DegenerateFrame) return kDegenerate;
        if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::DomainError) return kUsage;
        return 1;
    }
}

int cmd_fuzz(const std::string& target, int trials, std::uint64_t seed, double tol) {
    FuzzTarget t;
    try {
        t = parse_fuzz_target(target);
        if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    }
    const FuzzReport r = run_fuzz(t, trials, seed, tol);
    std::printf("%s: %d trials, %d failures, worst %.3g  %s\n", target.c_str(), r.trials, r.failures, r.worst,
                r.passed() ? "PASS" : "FAIL");
    if (!r.passed()) std::printf("first failure: %s\n", r.first_failure.c_str());
    return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix power means: order region, counterexamples and expansion checks"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.seed = default_seed();
    std::string out;
    double p = 0.0, q = 0.0, x = 0.5, y = 0.25;
    std::string lemma = "rotated";
    std::string target = "region";
    int fuzz_trials = 1000;

    auto* scan = app.add_subcommand("scan", "classify a (p,q) grid and check every cell; CSV output");
    scan->add_option("--pmin", cfg.pmin);
    scan->add_option("--pmax", cfg.pmax);
    scan->add_option("--qmin", cfg.qmin);
    scan->add_option("--qmax", cfg.qmax);
    scan->add_option("--step", cfg.step);
    scan->add_option("--trials", cfg.trials, "random pairs per in-region cell");
    scan->add_option("--seed", cfg.seed);
    scan->add_option("--out", out, "CSV path (stdout if omitted)");
    scan->add_option("--tol-order", cfg.order_tol);
    scan->add_option("--tol-cert", cfg.cert_tol);
    scan->add_option("--threads", cfg.threads);

    auto* cex = app.add_subcommand("counterexample", "certified witness that M_p <= M_q fails");
    cex->add_option("--p", p)->required();
    cex->add_option("--q", q)->required();
    cex->add_option("--seed", cfg.seed);
    cex->add_option("--tol-cert", cfg.cert_tol);
    cex->add_option("--out", out, "also write the witness as a CSV row");

    auto* choi = app.add_subcommand("choi-table", "eigenvalue signs of Phi(B^p) - Phi(B)^p for the compression map");

    auto* lem = app.add_subcommand("verify-lemma", "closed-form determinant coefficient vs Richardson oracle");
    lem->add_option("--lemma", lemma, "rotated | log-euclidean | projection (or 3.1 | 3.2 | 3.3)");
    lem->add_option("--p", p);
    lem->add_option("--q", q);
    lem->add_option("--x", x);
    lem->add_option("--y", y);

    auto* fuzz = app.add_subcommand("fuzz", "randomized property suites");
    fuzz->add_option("--target", target, "region | unital-maps | duality | limit");
    fuzz->add_option("--trials", fuzz_trials);
    fuzz->add_option("--seed", cfg.seed);
    fuzz->add_option("--tol-order", cfg.order_tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*scan) return cmd_scan(cfg, out);
        if (*cex) return cmd_counterexample(p, q, cfg.seed, cfg.cert_tol, out);
        if (*choi) return cmd_choi_table();
        if (*lem) return cmd_verify_lemma(lemma, p, q, x, y);
        if (*fuzz) return cmd_fuzz(target, fuzz_trials, cfg.seed, cfg.order_tol);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return kUsage;
}
