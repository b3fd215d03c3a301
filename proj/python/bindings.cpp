#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "powmean/counterexamples.hpp"
#include "powmean/errors.hpp"
#include "powmean/expansions.hpp"
#include "powmean/power_means.hpp"
#include "powmean/region.hpp"
#include "powmean/suites.hpp"

namespace py = pybind11;
using namespace powmean;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SymMatrix to_sym(const Array& arr) {
    if (arr.ndim() != 2 || arr.shape(0) != arr.shape(1)) throw py::value_error("expected a square 2-d array");
    const auto n = static_cast<std::size_t>(arr.shape(0));
    auto r = arr.unchecked<2>();
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = r(i, j);
    return SymMatrix::from_matrix(m);
}

Array to_array(const SymMatrix& s) {
    const std::size_t n = s.dim();
    Array out({n, n});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w(i, j) = s(i, j);
    return out;
}

py::dict witness_dict(const CounterexampleWitness& w) {
    py::dict d;
    d["p"] = w.p.value();
    d["q"] = w.q.value();
    d["label"] = w.label.to_string();
    d["a"] = to_array(w.a);
    d["b"] = to_array(w.b);
    d["theta"] = w.theta;
    d["x"] = w.x;
    d["y"] = w.y;
    d["epsilon"] = w.epsilon;
    d["neg_eigenvalue"] = w.neg_eigenvalue;
    d["witness"] = w.witness;
    d["dual_applied"] = w.dual_applied;
    return d;
}

py::dict breakdown_dict(const DetCoefficientBreakdown& b) {
    py::dict d;
    d["delta1"] = b.delta1;
    d["delta2"] = b.delta2;
    d["wp"] = b.wp;
    d["wq"] = b.wq;
    d["total"] = b.total;
    return d;
}

}  // namespace

PYBIND11_MODULE(_powmean, m) {
    m.doc() = "Matrix power means, the order region and certified counterexamples";

    static py::exception<Error> error(m, "PowmeanError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            error(e.what());
        }
    });

    m.def(
        "power_mean",
        [](double p, const Array& a, const Array& b, double weight) {
            return to_array(power_mean(PowerExponent(p), to_sym(a), to_sym(b), weight));
        },
        py::arg("p"), py::arg("a"), py::arg("b"), py::arg("weight") = 0.5,
        "((1-w) A^p + w B^p)^{1/p}; p = 0 gives the Log-Euclidean mean.");

    m.def(
        "mat_power", [](const Array& a, double r) { return to_array(mat_fun(to_sym(a), ScalarFunction::power(r))); },
        py::arg("a"), py::arg("r"));

    m.def(
        "loewner_leq",
        [](const Array& a, const Array& b, double order_tol) {
            ToleranceProfile tol;
            tol.order_tol = order_tol;
            const OrderVerdict v = loewner_leq(to_sym(a), to_sym(b), tol);
            return py::make_tuple(v.holds, v.min_eigenvalue, v.witness);
        },
        py::arg("a"), py::arg("b"), py::arg("order_tol") = 1e-10, "(holds, min eigenvalue of B - A, witness)");

    m.def("in_sufficient_region", [](double p, double q) { return in_sufficient_region({p, q}); });
    m.def("classify", [](double p, double q) { return classify({p, q}).to_string(); });
    m.def("dual", [](double p, double q) {
        const RegionPoint d = dual({p, q});
        return py::make_tuple(d.p, d.q);
    });

    m.def(
        "find_counterexample",
        [](double p, double q, double cert_tol) {
            SearchOptions opts;
            opts.cert_tol = cert_tol;
            return witness_dict(find_counterexample({p, q}, opts));
        },
        py::arg("p"), py::arg("q"), py::arg("cert_tol") = 1e-12);

    m.def("det_coeff_rotated", [](double p, double q, double x, double y) {
        return breakdown_dict(det_coeff_rotated(p, q, x, y));
    });
    m.def("det_coeff_log_euclidean", [](double q, double x, double y) {
        return breakdown_dict(det_coeff_log_euclidean(q, x, y));
    });
    m.def("det_coeff_projection", &det_coeff_projection, py::arg("p"), py::arg("q"));

    m.def(
        "verify_lemma",
        [](const std::string& lemma, double p, double q, double x, double y) {
            const LemmaCheck c = verify_lemma(parse_lemma(lemma), p, q, x, y);
            py::dict d;
            d["closed_form"] = c.closed_form;
            d["oracle"] = c.oracle;
            d["gap"] = c.gap;
            d["passed"] = c.passed;
            return d;
        },
        py::arg("lemma"), py::arg("p") = 0.0, py::arg("q") = 0.0, py::arg("x") = 0.5, py::arg("y") = 0.25);

    m.def(
        "choi_sign_table",
        [](const std::vector<double>& ps) {
            py::list out;
            for (const ChoiRow& r : choi_sign_table(ps)) out.append(py::make_tuple(r.p, r.eigenvalues, r.signs));
            return out;
        },
        py::arg("p_values"));
}
