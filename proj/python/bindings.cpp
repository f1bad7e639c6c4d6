#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cenreg/centrality.hpp"
#include "cenreg/errors.hpp"
#include "cenreg/graph_model.hpp"
#include "cenreg/inference.hpp"
#include "cenreg/monte_carlo.hpp"
#include "cenreg/walk_coefficients.hpp"

namespace py = pybind11;
using namespace cenreg;

namespace {

// JSON crosses the boundary as text; small payloads only.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
nlohmann::json from_py(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::int_ big(const BigInt& b) { return py::module_::import("builtins").attr("int")(b.str()); }

ScalingPolicy scaling_of(const py::object& s) {
    if (py::isinstance<py::str>(s)) {
        const auto v = s.cast<std::string>();
        if (v == "sqrt-n") return ScalingPolicy::sqrt_n();
        if (v == "sqrt-lambda1") return ScalingPolicy::sqrt_lambda1();
        throw Error(ErrorKind::InvalidConfig, "unknown scaling " + v);
    }
    return ScalingPolicy::fixed(s.cast<double>());
}

RegressionFit fit(const SymmetricBinaryMatrix& g, const std::vector<double>& y, const std::string& centrality,
                  double delta, int T, const py::object& scaling, const std::string& mode) {
    if (centrality == "degree") return fit_degree(g, y);
    if (centrality == "diffusion") return fit_diffusion(g, y, {delta, T});
    if (centrality == "eigenvector") {
        const auto s = scaling_of(scaling);
        FitMode m = mode.empty() ? (s.kind == ScalingPolicy::Kind::SqrtLambda1 ? FitMode::NoisyEigenCorollary5
                                                                               : FitMode::NoisyEigenCaseA)
                                 : fit_mode_from_string(mode);
        return fit_eigenvector(g, y, s, m);
    }
    throw Error(ErrorKind::InvalidConfig, "unknown centrality " + centrality);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "OLS on network centralities with measurement-error corrections";

    py::register_exception<Error>(m, "CenregError", PyExc_ValueError);

    py::class_<SymmetricBinaryMatrix>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<Edge>& edges) {
                 return SymmetricBinaryMatrix::from_edges(n, edges);
             }),
             py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &SymmetricBinaryMatrix::size)
        .def_property_readonly("num_edges", &SymmetricBinaryMatrix::num_edges)
        .def("edges", &SymmetricBinaryMatrix::edges)
        .def("has_edge", &SymmetricBinaryMatrix::has_edge)
        .def("__repr__", [](const SymmetricBinaryMatrix& g) {
            return "<Graph n=" + std::to_string(g.size()) + " edges=" + std::to_string(g.num_edges()) + ">";
        });

    m.def(
        "sample_graph",
        [](const py::object& graphon, std::size_t n, double p, std::uint64_t seed) {
            const auto g = Graphon::from_json(from_py(graphon));
            const auto a = build_true_adjacency(g, sample_latent(n, derive_seed(seed, {0})), p);
            return observe(a, derive_seed(seed, {1}));
        },
        py::arg("graphon"), py::arg("n"), py::arg("p"), py::arg("seed") = 0,
        "Draw latent types, build A = p f(U_i, U_j) and observe a Bernoulli graph.");

    m.def("degree", [](const SymmetricBinaryMatrix& g) { return degree(g).values; });
    m.def(
        "diffusion", [](const SymmetricBinaryMatrix& g, double delta, int T) { return diffusion(g, {delta, T}).values; },
        py::arg("g"), py::arg("delta"), py::arg("T"));
    m.def(
        "eigenvector",
        [](const SymmetricBinaryMatrix& g, const py::object& scaling) {
            const auto c = eigenvector_centrality(g, scaling_of(scaling));
            return py::make_tuple(c.values, *c.lambda1);
        },
        py::arg("g"), py::arg("scaling") = "sqrt-lambda1", "Returns (values, lambda1).");
    m.def(
        "regularized_eigenvector",
        [](const SymmetricBinaryMatrix& g, const py::object& scaling, std::optional<double> p_n,
           std::optional<double> M) {
            if (!p_n && !M) throw Error(ErrorKind::InvalidBound, "give p_n (oracle) or M (plug-in)");
            const auto spec = p_n ? RegularizationSpec::oracle(*p_n) : RegularizationSpec::plug_in(*M);
            const auto c = regularized_eigenvector_centrality(g, scaling_of(scaling), spec);
            return py::make_tuple(c.values, c.node_weights);
        },
        py::arg("g"), py::arg("scaling") = "sqrt-n", py::arg("p_n") = py::none(), py::arg("M") = py::none());

    m.def(
        "regress",
        [](const SymmetricBinaryMatrix& g, const std::vector<double>& y, const std::string& centrality, double delta,
           int T, const py::object& scaling, const std::string& mode, const std::vector<double>& beta0, double alpha,
           const std::string& sided) {
            const auto f = fit(g, y, centrality, delta, T, scaling, mode);
            auto j = to_json(f);
            const auto sd = sided_from_string(sided);
            j["tests"] = nlohmann::json::array();
            for (double b : beta0) {
                auto t = to_json(test(f, b, sd, {alpha}));
                t["beta0"] = b;
                j["tests"].push_back(t);
            }
            j["interval"] = to_json(confidence(f, alpha, sd));
            return to_py(j);
        },
        py::arg("g"), py::arg("y"), py::arg("centrality") = "degree", py::arg("delta") = 1.0, py::arg("T") = 1,
        py::arg("scaling") = "sqrt-lambda1", py::arg("mode") = "", py::arg("beta0") = std::vector<double>{0.0},
        py::arg("alpha") = 0.05, py::arg("sided") = "two");

    m.def("derive_g", [](int t) {
        py::dict d;
        for (const auto& [r, c] : derive_g(t).coeffs) d[py::int_(r)] = big(c);
        return d;
    });
    m.def(
        "derive_b",
        [](int T, bool extended) {
            py::dict d;
            for (const auto& [k, c] : derive_b(T, extended ? DerivationBudget::extended() : DerivationBudget{}).coeffs)
                d[py::make_tuple(k.first, k.second)] = big(c);
            return d;
        },
        py::arg("T"), py::arg("extended") = false, "Keys are (t, power of delta).");
    m.def("reference_b", [](int T) {
        py::dict d;
        for (const auto& [k, c] : reference_b(T).coeffs) d[py::make_tuple(k.first, k.second)] = big(c);
        return d;
    });

    m.def(
        "simulate",
        [](const py::object& config, int threads) {
            const auto cfg = ExperimentConfig::from_json(from_py(config));
            std::vector<CellResult> cells;
            {
                py::gil_scoped_release release;
                cells = run_experiment(cfg, threads);
            }
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& cell : cells)
                for (const auto& er : cell.estimators)
                    for (double b0 : cfg.beta0_grid)
                        for (double al : cfg.alpha_grid) {
                            const auto ours = rejection_rate(er, b0, al, TestVariant::Ours);
                            const auto rob = rejection_rate(er, b0, al, TestVariant::Robust);
                            rows.push_back({{"n", cell.n},
                                            {"p", cell.p},
                                            {"estimator", er.spec.name},
                                            {"beta0", b0},
                                            {"alpha", al},
                                            {"ours", ours.rate},
                                            {"robust", rob.rate},
                                            {"ok", er.ok_count()}});
                        }
            return to_py(rows);
        },
        py::arg("config"), py::arg("threads") = 1, "Run a Monte Carlo config; returns rejection-rate rows.");

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
