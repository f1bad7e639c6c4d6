#include "cenreg/monte_carlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "cenreg/errors.hpp"
#include "cenreg/stats.hpp"

namespace cenreg {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::InvalidConfig, path + ": " + what);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& path) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        bad(path + "/" + key, j.contains(key) ? "wrong type" : "missing");
    }
}

template <class T>
T get_or(const json& j, const std::string& key, const std::string& path, T fallback) {
    return j.contains(key) ? get<T>(j, key, path) : fallback;
}

ScalingPolicy scaling_from_json(const json& j, const std::string& path) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "sqrt-n") return ScalingPolicy::sqrt_n();
        if (s == "sqrt-lambda1") return ScalingPolicy::sqrt_lambda1();
        bad(path, "unknown scaling \"" + s + "\"");
    }
    if (j.is_number()) return ScalingPolicy::fixed(j.get<double>());
    if (j.is_object() && j.contains("fixed")) return ScalingPolicy::fixed(get<double>(j, "fixed", path));
    bad(path, "scaling must be \"sqrt-n\", \"sqrt-lambda1\" or a positive number");
}

json scaling_to_json(const ScalingPolicy& s) {
    switch (s.kind) {
        case ScalingPolicy::Kind::SqrtN: return "sqrt-n";
        case ScalingPolicy::Kind::SqrtLambda1: return "sqrt-lambda1";
        case ScalingPolicy::Kind::Fixed: return {{"fixed", s.a}};
    }
    return nullptr;
}

}  // namespace

EstimatorSpec EstimatorSpec::degree() {
    EstimatorSpec e;
    e.kind = CentralityKind::Degree;
    e.name = "degree";
    return e;
}

EstimatorSpec EstimatorSpec::diffusion_with(double delta, int T) {
    EstimatorSpec e;
    e.kind = CentralityKind::Diffusion;
    e.name = "diffusion";
    e.diffusion = {delta, T, DiffusionParams::DeltaRule::Fixed};
    return e;
}

EstimatorSpec EstimatorSpec::eigenvector(ScalingPolicy s) {
    EstimatorSpec e;
    e.kind = CentralityKind::Eigenvector;
    e.name = "eigenvector";
    e.scaling = s;
    e.eigen_mode = s.kind == ScalingPolicy::Kind::SqrtLambda1 ? FitMode::NoisyEigenCorollary5 : FitMode::NoisyEigenCaseA;
    return e;
}

EstimatorSpec EstimatorSpec::from_json(const json& j, const std::string& path) {
    if (!j.is_object()) bad(path, "estimator must be an object");
    const auto kind = get<std::string>(j, "kind", path);
    EstimatorSpec e;
    if (kind == "degree") {
        e = degree();
    } else if (kind == "diffusion") {
        e = diffusion_with(get_or<double>(j, "delta", path, 1.0), get_or<int>(j, "T", path, 2));
        if (e.diffusion.T < 1) bad(path + "/T", "must be at least 1");
        if (j.contains("delta_rule")) {
            const auto r = get<std::string>(j, "delta_rule", path);
            if (r == "inverse-lambda1")
                e.diffusion.rule = DiffusionParams::DeltaRule::InverseLambda1;
            else if (r == "inverse-sqrt-lambda1")
                e.diffusion.rule = DiffusionParams::DeltaRule::InverseSqrtLambda1;
            else if (r != "fixed")
                bad(path + "/delta_rule", "unknown rule \"" + r + "\"");
        }
        if (e.diffusion.rule == DiffusionParams::DeltaRule::Fixed && !(e.diffusion.delta >= 0 && e.diffusion.delta <= 1))
            bad(path + "/delta", "must lie in [0,1]");
    } else if (kind == "eigenvector" || kind == "regularized-eigenvector") {
        e = eigenvector(j.contains("scaling") ? scaling_from_json(j.at("scaling"), path + "/scaling")
                                               : ScalingPolicy::sqrt_lambda1());
        if (j.contains("mode")) {
            try {
                e.eigen_mode = fit_mode_from_string(get<std::string>(j, "mode", path));
            } catch (const Error&) {
                bad(path + "/mode", "expected case-a, case-b or sqrt-lambda1");
            }
        }
        if (kind == "regularized-eigenvector") {
            e.kind = CentralityKind::RegularizedEigenvector;
            e.name = "regularized-eigenvector";
            if (j.contains("M")) {
                e.plug_in_M = get<double>(j, "M", path);
                if (!(*e.plug_in_M > 0.0 && *e.plug_in_M <= 1.0)) bad(path + "/M", "must lie in (0,1]");
            }
        }
    } else {
        bad(path + "/kind", "unknown estimator \"" + kind + "\"");
    }
    e.name = get_or<std::string>(j, "name", path, e.name);
    return e;
}

json EstimatorSpec::to_json() const {
    json j{{"kind", cenreg::to_string(kind)}, {"name", name}};
    if (kind == CentralityKind::Diffusion) {
        j["delta"] = diffusion.delta;
        j["T"] = diffusion.T;
        j["delta_rule"] = diffusion.rule == DiffusionParams::DeltaRule::Fixed            ? "fixed"
                          : diffusion.rule == DiffusionParams::DeltaRule::InverseLambda1 ? "inverse-lambda1"
                                                                                          : "inverse-sqrt-lambda1";
    }
    if (kind == CentralityKind::Eigenvector || kind == CentralityKind::RegularizedEigenvector) {
        j["scaling"] = scaling_to_json(scaling);
        j["mode"] = cenreg::to_string(eigen_mode);
    }
    if (plug_in_M) j["M"] = *plug_in_M;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) bad("", "config must be a JSON object");
    ExperimentConfig c;
    if (j.contains("graphon")) {
        try {
            c.graphon = Graphon::from_json(j.at("graphon"));
        } catch (const Error& e) {
            bad("/graphon", e.what());
        } catch (const json::exception& e) {
            bad("/graphon", e.what());
        }
    }
    c.n_grid = get_or<std::vector<std::size_t>>(j, "n_grid", "", c.n_grid);
    if (c.n_grid.empty()) bad("/n_grid", "must not be empty");
    for (std::size_t k = 0; k < c.n_grid.size(); ++k)
        if (c.n_grid[k] < 2) bad("/n_grid/" + std::to_string(k), "must be at least 2");
    if (j.contains("sparsity")) {
        try {
            c.sparsity = SparsityRule::from_json(j.at("sparsity"));
        } catch (const Error& e) {
            bad("/sparsity", e.what());
        }
    }
    for (std::size_t k = 0; k < c.n_grid.size(); ++k) {
        try {
            c.sparsity.evaluate(c.n_grid[k]);
        } catch (const Error& e) {
            bad("/sparsity", e.what());
        }
    }
    c.beta_true = get_or<double>(j, "beta_true", "", c.beta_true);
    c.beta0_grid = get_or<std::vector<double>>(j, "beta0_grid", "", c.beta0_grid);
    if (j.contains("estimators")) {
        const auto& arr = j.at("estimators");
        if (!arr.is_array() || arr.empty()) bad("/estimators", "must be a non-empty array");
        c.estimators.clear();
        for (std::size_t k = 0; k < arr.size(); ++k)
            c.estimators.push_back(EstimatorSpec::from_json(arr[k], "/estimators/" + std::to_string(k)));
    }
    if (j.contains("error_model")) {
        const auto& em = j.at("error_model");
        if (!em.is_object()) bad("/error_model", "must be an object");
        if (get_or<std::string>(em, "kind", "/error_model", "gaussian") != "gaussian")
            bad("/error_model/kind", "only \"gaussian\" is available from JSON");
        c.error.sigma = get_or<double>(em, "sigma", "/error_model", 1.0);
        if (!(c.error.sigma >= 0.0)) bad("/error_model/sigma", "must be nonnegative");
    }
    const long long reps = get_or<long long>(j, "replications", "", static_cast<long long>(c.replications));
    if (reps < 1) bad("/replications", "must be at least 1");
    c.replications = static_cast<std::size_t>(reps);
    c.master_seed = get_or<std::uint64_t>(j, "master_seed", "", c.master_seed);
    c.alpha_grid = get_or<std::vector<double>>(j, "alpha_grid", "", c.alpha_grid);
    for (std::size_t k = 0; k < c.alpha_grid.size(); ++k)
        if (!(c.alpha_grid[k] > 0.0 && c.alpha_grid[k] < 1.0)) bad("/alpha_grid/" + std::to_string(k), "must lie in (0,1)");
    if (j.contains("eigen")) {
        const auto& e = j.at("eigen");
        c.eigen.max_iter = get_or<int>(e, "max_iter", "/eigen", c.eigen.max_iter);
        c.eigen.tol = get_or<double>(e, "tol", "/eigen", c.eigen.tol);
    }
    return c;
}

json ExperimentConfig::to_json() const {
    json est = json::array();
    for (const auto& e : estimators) est.push_back(e.to_json());
    return {{"graphon", graphon.to_json()},
            {"n_grid", n_grid},
            {"sparsity", sparsity.to_json()},
            {"beta_true", beta_true},
            {"beta0_grid", beta0_grid},
            {"estimators", est},
            {"error_model", {{"kind", error.custom ? "custom" : "gaussian"}, {"sigma", error.sigma}}},
            {"replications", replications},
            {"master_seed", master_seed},
            {"alpha_grid", alpha_grid},
            {"eigen", {{"max_iter", eigen.max_iter}, {"tol", eigen.tol}}}};
}

std::size_t EstimatorResult::ok_count() const {
    std::size_t k = 0;
    for (const auto& d : draws) k += d.ok;
    return k;
}

double draw_statistic(const Draw& d, double beta0, TestVariant v) {
    if (!d.ok) return std::nan("");
    if (v == TestVariant::Robust) return (d.fit.beta_hat - beta0) / std::sqrt(d.fit.V0_hat);
    try {
        return test(d.fit, beta0).statistic;
    } catch (const Error&) {
        return std::nan("");
    }
}

std::vector<double> statistics(const EstimatorResult& r, double beta0, TestVariant v) {
    std::vector<double> out;
    for (const auto& d : r.draws) {
        const double s = draw_statistic(d, beta0, v);
        if (!std::isnan(s)) out.push_back(s);
    }
    return out;
}

RejectionRate rejection_rate(const EstimatorResult& r, double beta0, double alpha, TestVariant v) {
    const double z = normal_quantile(1.0 - alpha / 2.0);
    RejectionRate out;
    std::size_t rej = 0;
    for (const auto& d : r.draws) {
        const double s = draw_statistic(d, beta0, v);
        if (std::isnan(s)) continue;
        ++out.count;
        rej += std::abs(s) >= z;
    }
    if (out.count) {
        out.rate = static_cast<double>(rej) / out.count;
        out.se = std::sqrt(out.rate * (1.0 - out.rate) / out.count);
    } else {
        out.rate = out.se = std::nan("");
    }
    return out;
}

SimulatedData simulate_replication(const ExperimentConfig& cfg, std::size_t cell, std::size_t rep) {
    const std::size_t n = cfg.n_grid.at(cell);
    const double p = cfg.sparsity.evaluate(n);
    SimulatedData d;
    d.latent = sample_latent(n, derive_seed(cfg.master_seed, {cell, rep, 0}));
    d.a = build_true_adjacency(cfg.graphon, d.latent, p);
    d.a_hat = observe(d.a, derive_seed(cfg.master_seed, {cell, rep, 1}));
    Rng rng(derive_seed(cfg.master_seed, {cell, rep, 2}));
    d.eps.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        d.eps[i] = cfg.error.custom ? cfg.error.custom(rng, d.latent.u[i]) : cfg.error.sigma * rng.normal();
    return d;
}

namespace {

Draw run_estimator(const ExperimentConfig& cfg, const EstimatorSpec& e, const SimulatedData& d, double p) {
    Draw out;
    try {
        std::vector<double> c_true;
        RegressionFit fit;
        std::vector<double> y(d.eps.size());
        auto make_y = [&] {
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = cfg.beta_true * c_true[i] + d.eps[i];
        };
        switch (e.kind) {
            case CentralityKind::Degree:
                c_true = degree(d.a).values;
                make_y();
                fit = fit_degree(d.a_hat, y);
                break;
            case CentralityKind::Diffusion: {
                // The delta rule is resolved once, on the observed graph, and shared.
                const auto params = e.diffusion.resolved(d.a_hat);
                c_true = diffusion(d.a, params).values;
                make_y();
                fit = fit_diffusion(d.a_hat, y, params);
                break;
            }
            case CentralityKind::Eigenvector:
                c_true = eigenvector_centrality(d.a, e.scaling, cfg.eigen).values;
                make_y();
                fit = fit_eigenvector(d.a_hat, y, e.scaling, e.eigen_mode, cfg.eigen);
                break;
            case CentralityKind::RegularizedEigenvector: {
                c_true = eigenvector_centrality(d.a, e.scaling, cfg.eigen).values;
                make_y();
                const auto spec = e.plug_in_M ? RegularizationSpec::plug_in(*e.plug_in_M) : RegularizationSpec::oracle(p);
                const auto c = regularized_eigenvector_centrality(d.a_hat, e.scaling, spec, cfg.eigen);
                // No bias or variance theory for this estimator: robust inference only.
                fit = ols(y, c, FitMode::NoError);
                break;
            }
        }
        out.beta_tilde = ols(y, c_true).beta_hat;
        fit.regressor.clear();
        fit.regressor.shrink_to_fit();
        fit.residuals.clear();
        fit.residuals.shrink_to_fit();
        out.fit = std::move(fit);
        out.ok = true;
    } catch (const Error& err) {
        out.ok = false;
        out.failure = to_string(err.kind());
    }
    return out;
}

template <class F>
void parallel_for(std::size_t begin, std::size_t end, int threads, F&& f) {
    const std::size_t count = end - begin;
    const int k = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (k == 1) {
        for (std::size_t r = begin; r < end; ++r) f(r);
        return;
    }
    std::atomic<std::size_t> next{begin};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int t = 0; t < k; ++t)
        pool.emplace_back([&] {
            for (std::size_t r; (r = next.fetch_add(1)) < end;) {
                try {
                    f(r);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

CellResult run_cell(const ExperimentConfig& cfg, std::size_t cell, std::size_t rep_begin, std::size_t rep_end,
                    int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    CellResult out;
    out.cell = cell;
    out.n = cfg.n_grid.at(cell);
    out.p = cfg.sparsity.evaluate(out.n);
    out.rep_begin = rep_begin;
    out.rep_end = rep_end;
    out.estimators.resize(cfg.estimators.size());
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
        out.estimators[e].spec = cfg.estimators[e];
        out.estimators[e].draws.resize(rep_end - rep_begin);
    }
    parallel_for(rep_begin, rep_end, threads, [&](std::size_t r) {
        const auto data = simulate_replication(cfg, cell, r);
        for (std::size_t e = 0; e < cfg.estimators.size(); ++e)
            out.estimators[e].draws[r - rep_begin] = run_estimator(cfg, cfg.estimators[e], data, out.p);
    });
    for (auto& er : out.estimators)
        for (const auto& d : er.draws)
            if (!d.ok) ++er.failures[d.failure];
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg, int threads) {
    std::vector<CellResult> cells;
    for (std::size_t c = 0; c < cfg.n_grid.size(); ++c) cells.push_back(run_cell(cfg, c, 0, cfg.replications, threads));
    return cells;
}

std::vector<std::pair<double, RejectionRate>> power_curve(const CellResult& cell, std::size_t estimator,
                                                          const std::vector<double>& beta0_grid, double alpha,
                                                          TestVariant v) {
    std::vector<std::pair<double, RejectionRate>> out;
    for (double b0 : beta0_grid) out.emplace_back(b0, rejection_rate(cell.estimators.at(estimator), b0, alpha, v));
    return out;
}

std::vector<AttenuationRow> attenuation_study(const ExperimentConfig& cfg, int threads) {
    ExperimentConfig c = cfg;
    c.estimators = {EstimatorSpec::degree()};
    std::vector<AttenuationRow> rows;
    for (std::size_t k = 0; k < c.n_grid.size(); ++k) {
        const auto cell = run_cell(c, k, 0, c.replications, threads);
        AttenuationRow row;
        row.n = cell.n;
        row.p = cell.p;
        double sb = 0.0, st = 0.0;
        for (const auto& d : cell.estimators[0].draws) {
            if (!d.ok) continue;
            sb += d.fit.beta_hat;
            st += d.beta_tilde;
            ++row.count;
        }
        row.mean_beta_hat = row.count ? sb / row.count : std::nan("");
        row.mean_beta_tilde = row.count ? st / row.count : std::nan("");
        const double np = static_cast<double>(cell.n) * cell.p;
        row.plim = np / (np + 1.0);
        rows.push_back(row);
    }
    return rows;
}

void write_outputs(const std::string& dir, const ExperimentConfig& cfg, const std::vector<CellResult>& cells,
                   int threads) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const std::string& name) {
        std::ofstream f(fs::path(dir) / name);
        if (!f) throw Error(ErrorKind::IoError, "cannot write " + (fs::path(dir) / name).string());
        f.precision(10);
        return f;
    };
    const char* header = "n,p,estimator,beta0,alpha,reject_rate,se,failures\n";
    auto size_csv = open("size.csv");
    auto power_csv = open("power.csv");
    size_csv << header;
    power_csv << header;
    for (const auto& cell : cells) {
        for (const auto& er : cell.estimators) {
            std::size_t fails = 0;
            for (const auto& [k, v] : er.failures) fails += v;
            for (double b0 : cfg.beta0_grid)
                for (double a : cfg.alpha_grid)
                    for (auto v : {TestVariant::Ours, TestVariant::Robust}) {
                        const auto rr = rejection_rate(er, b0, a, v);
                        auto& out = b0 == cfg.beta_true ? size_csv : power_csv;
                        out << cell.n << ',' << cell.p << ',' << er.spec.name << (v == TestVariant::Ours ? ":ours" : ":robust")
                            << ',' << b0 << ',' << a << ',' << rr.rate << ',' << rr.se << ',' << fails << '\n';
                    }
        }
    }
    for (std::size_t e = 0; e < cfg.estimators.size(); ++e) {
        auto f = open("dist_" + cfg.estimators[e].name + ".csv");
        f << "n,rep,ok,beta_hat,beta_check,beta_tilde,B_hat,V_hat,V0_hat,stat_ours,stat_robust\n";
        for (const auto& cell : cells) {
            const auto& er = cell.estimators[e];
            for (std::size_t k = 0; k < er.draws.size(); ++k) {
                const auto& d = er.draws[k];
                f << cell.n << ',' << cell.rep_begin + k << ',' << (d.ok ? 1 : 0);
                if (!d.ok) {
                    f << ",,,,,,,,\n";
                    continue;
                }
                auto o = [](const std::optional<double>& x) { return x ? std::to_string(*x) : std::string(); };
                f << ',' << d.fit.beta_hat << ',' << o(d.fit.beta_check) << ',' << d.beta_tilde << ',' << o(d.fit.B_hat)
                  << ',' << o(d.fit.V_hat) << ',' << d.fit.V0_hat << ',' << draw_statistic(d, cfg.beta_true, TestVariant::Ours)
                  << ',' << draw_statistic(d, cfg.beta_true, TestVariant::Robust) << '\n';
            }
        }
    }
    json manifest;
    manifest["config"] = cfg.to_json();
    manifest["threads"] = threads;
    manifest["seed_scheme"] = "stream seed = derive_seed(master_seed, {cell, replication, purpose}); purpose 0 latent, 1 observation, 2 errors";
    json jc = json::array();
    for (const auto& cell : cells) {
        json fails = json::object();
        for (const auto& er : cell.estimators) fails[er.spec.name] = er.failures;
        jc.push_back({{"cell", cell.cell},
                      {"n", cell.n},
                      {"p", cell.p},
                      {"replications", cell.rep_end - cell.rep_begin},
                      {"failures", fails},
                      {"seconds", cell.seconds}});
    }
    manifest["cells"] = jc;
    auto mf = open("manifest.json");
    mf << manifest.dump(2) << '\n';
}

}  // namespace cenreg
