#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cenreg/centrality.hpp"
#include "cenreg/errors.hpp"
#include "cenreg/inference.hpp"
#include "cenreg/monte_carlo.hpp"
#include "cenreg/walk_coefficients.hpp"

namespace cenreg::cli {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json_file(const std::string& path) {
    const std::string text = slurp(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorKind::ParseError,
                    path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" + e.what() + ")");
    }
}

std::vector<double> read_outcomes(const std::string& path, std::size_t min_n) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::vector<std::pair<std::size_t, double>> rows;
    std::set<std::size_t> ids;
    while (std::getline(in, line)) {
        ++lineno;
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::ParseError, path + " line " + std::to_string(lineno) + ": expected id,y");
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        if (!header) {
            if (a != "id" || b != "y") throw Error(ErrorKind::ParseError, path + " must start with header id,y");
            header = true;
            continue;
        }
        std::size_t id = 0;
        double y = 0.0;
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(a, &pos);
            if (pos != a.size() || v < 0) throw std::invalid_argument("id");
            id = static_cast<std::size_t>(v);
            y = std::stod(b, &pos);
            if (pos != b.size()) throw std::invalid_argument("y");
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, path + " line " + std::to_string(lineno) + ": cannot parse \"" + line + "\"");
        }
        if (!ids.insert(id).second)
            throw Error(ErrorKind::IdMismatch, path + " line " + std::to_string(lineno) + ": id " + std::to_string(id) + " repeats");
        rows.emplace_back(id, y);
    }
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorKind::IdMismatch, path + " lists no nodes");
    if (*ids.rbegin() != n - 1)
        throw Error(ErrorKind::IdMismatch, "outcome ids must be exactly 0.." + std::to_string(n - 1));
    if (min_n > n)
        throw Error(ErrorKind::IdMismatch,
                    "edge list references node " + std::to_string(min_n - 1) + " which has no outcome");
    std::vector<double> y(n);
    for (auto [id, v] : rows) y[id] = v;
    return y;
}

std::size_t node_bound(const std::vector<Edge>& edges) {
    std::size_t m = 0;
    for (auto [i, j] : edges) m = std::max({m, i + 1, j + 1});
    return m;
}

ScalingPolicy parse_scaling(const std::string& s) {
    if (s == "sqrt-n") return ScalingPolicy::sqrt_n();
    if (s == "sqrt-lambda1") return ScalingPolicy::sqrt_lambda1();
    try {
        return ScalingPolicy::fixed(std::stod(s));
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidConfig, "scaling must be sqrt-n, sqrt-lambda1 or a number");
    }
}

DiffusionParams parse_diffusion(const EstimatorArgs& a) {
    DiffusionParams p{a.delta, a.T, DiffusionParams::DeltaRule::Fixed};
    if (a.delta_rule == "inverse-lambda1")
        p.rule = DiffusionParams::DeltaRule::InverseLambda1;
    else if (a.delta_rule == "inverse-sqrt-lambda1")
        p.rule = DiffusionParams::DeltaRule::InverseSqrtLambda1;
    else if (a.delta_rule != "fixed")
        throw Error(ErrorKind::InvalidConfig, "unknown delta rule " + a.delta_rule);
    return p;
}

RegularizationSpec parse_regularization(const EstimatorArgs& a) {
    if (a.M) return RegularizationSpec::plug_in(*a.M);
    if (a.p_n) return RegularizationSpec::oracle(*a.p_n);
    throw Error(ErrorKind::InvalidBound, "regularized eigenvector centrality needs --M (plug-in) or --p-n (oracle)");
}

CentralityVector compute_centrality(const std::string& kind, const SymmetricBinaryMatrix& m, const EstimatorArgs& a) {
    EigenOptions opt;
    opt.seed = a.seed;
    if (kind == "degree") return degree(m);
    if (kind == "diffusion") return diffusion(m, parse_diffusion(a));
    if (kind == "eigenvector") return eigenvector_centrality(m, parse_scaling(a.scaling), opt);
    if (kind == "regularized-eigenvector")
        return regularized_eigenvector_centrality(m, parse_scaling(a.scaling), parse_regularization(a), opt);
    throw Error(ErrorKind::InvalidConfig, "unknown centrality " + kind);
}

RegressionFit fit_one(const std::string& kind, const SymmetricBinaryMatrix& m, const std::vector<double>& y,
                      const EstimatorArgs& a) {
    EigenOptions opt;
    opt.seed = a.seed;
    if (kind == "degree") return fit_degree(m, y);
    if (kind == "diffusion") return fit_diffusion(m, y, parse_diffusion(a));
    if (kind == "eigenvector") {
        const auto s = parse_scaling(a.scaling);
        FitMode mode = s.kind == ScalingPolicy::Kind::SqrtLambda1 ? FitMode::NoisyEigenCorollary5 : FitMode::NoisyEigenCaseA;
        if (!a.mode.empty()) mode = fit_mode_from_string(a.mode);
        return fit_eigenvector(m, y, s, mode, opt);
    }
    if (kind == "regularized-eigenvector") return ols(y, compute_centrality(kind, m, a), FitMode::NoError);
    throw Error(ErrorKind::InvalidConfig, "unknown centrality " + kind);
}

json big_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
    f << text;
}

template <class F>
int guarded(std::ostream& err, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto cfg = ExperimentConfig::from_json(parse_json_file(a.config));
        if (a.seed) cfg.master_seed = *a.seed;
        const auto cells = run_experiment(cfg, a.threads);
        write_outputs(a.out_dir, cfg, cells, a.threads);

        if (a.dump_graph) {
            std::filesystem::create_directories(*a.dump_graph);
            for (std::size_t c = 0; c < cfg.n_grid.size(); ++c) {
                const auto data = simulate_replication(cfg, c, 0);
                const std::string stem = (std::filesystem::path(*a.dump_graph) / ("n" + std::to_string(cfg.n_grid[c]))).string();
                std::ofstream ef(stem + "_edges.csv");
                write_edge_list(ef, data.a_hat);
                std::ofstream yf(stem + "_outcomes.csv");
                yf.precision(17);
                yf << "id,y\n";
                const auto c_true = degree(data.a).values;
                for (std::size_t i = 0; i < c_true.size(); ++i) yf << i << ',' << cfg.beta_true * c_true[i] + data.eps[i] << '\n';
                std::ofstream af(stem + "_true.csv");
                write_weighted_csv(af, data.a);
            }
        }

        bool fully_failed = false;
        json summary = json::array();
        for (const auto& cell : cells) {
            for (const auto& er : cell.estimators) {
                if (er.ok_count() == 0) fully_failed = true;
                for (double b0 : cfg.beta0_grid)
                    for (double al : cfg.alpha_grid) {
                        const auto ours = rejection_rate(er, b0, al, TestVariant::Ours);
                        const auto rob = rejection_rate(er, b0, al, TestVariant::Robust);
                        summary.push_back({{"n", cell.n}, {"p", cell.p}, {"estimator", er.spec.name}, {"beta0", b0},
                                           {"alpha", al}, {"ours", ours.rate}, {"robust", rob.rate},
                                           {"ok", er.ok_count()}});
                    }
            }
        }
        if (a.format == "json") {
            out << summary.dump(2) << '\n';
        } else {
            out << "n,p,estimator,beta0,alpha,ours,robust,ok\n";
            for (const auto& r : summary)
                out << r["n"] << ',' << r["p"] << ',' << r["estimator"].get<std::string>() << ',' << r["beta0"] << ','
                    << r["alpha"] << ',' << r["ours"] << ',' << r["robust"] << ',' << r["ok"] << '\n';
        }
        if (fully_failed) {
            err << "error: at least one cell failed on every replication\n";
            return static_cast<int>(kUsage);
        }
        return static_cast<int>(kOk);
    });
}

int cmd_regress(const RegressArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto edges = read_edge_list(a.edges);
        auto y = read_outcomes(a.outcomes, node_bound(edges));
        const auto m = SymmetricBinaryMatrix::from_edges(y.size(), edges);
        if (a.demean) {
            double mean = 0.0;
            for (double v : y) mean += v;
            mean /= static_cast<double>(y.size());
            for (auto& v : y) v -= mean;
        }
        const Sided sided = sided_from_string(a.sided);
        const C0Policy policy = a.c0 == "zero" ? C0Policy::SingletonZero : C0Policy::Interval;
        json result = json::object();
        std::ostringstream csv;
        csv << "estimator,beta_hat,B_hat,attenuation,beta_check,V_hat,V0_hat,n,mode\n";
        csv.precision(17);
        for (const auto& kind : a.est.centrality) {
            const auto fit = fit_one(kind, m, y, a.est);
            json j = to_json(fit);
            json tests = json::array(), intervals = json::array();
            for (double b0 : a.beta0) tests.push_back(to_json(test(fit, b0, sided, a.alpha)));
            for (double al : a.alpha) intervals.push_back(to_json(confidence(fit, al, sided, policy)));
            j["tests"] = tests;
            j["intervals"] = intervals;
            result[kind] = j;
            auto cell = [](const json& v) { return v.is_null() ? std::string() : v.dump(); };
            csv << kind << ',' << cell(j["beta_hat"]) << ',' << cell(j["B_hat"]) << ',' << cell(j["attenuation"]) << ','
                << cell(j["beta_check"]) << ',' << cell(j["V_hat"]) << ',' << cell(j["V0_hat"]) << ',' << fit.n << ','
                << to_string(fit.mode) << '\n';
        }
        emit(a.out, a.format == "csv" ? csv.str() : result.dump(2) + "\n", out);
        return static_cast<int>(kOk);
    });
}

int cmd_centrality(const CentralityArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto edges = read_edge_list(a.edges);
        const std::size_t bound = node_bound(edges);
        if (a.n && *a.n < bound) throw Error(ErrorKind::IdMismatch, "--n is smaller than the largest node id + 1");
        const auto m = SymmetricBinaryMatrix::from_edges(a.n.value_or(bound), edges);
        json result = json::object();
        std::ostringstream csv;
        csv.precision(17);
        csv << "id";
        std::vector<CentralityVector> cs;
        for (const auto& kind : a.est.centrality) {
            cs.push_back(compute_centrality(kind, m, a.est));
            csv << ',' << kind;
            json j{{"kind", kind}, {"values", cs.back().values}};
            if (cs.back().lambda1) {
                j["lambda1"] = *cs.back().lambda1;
                j["a_n"] = cs.back().a_n;
            }
            if (kind == "diffusion") {
                j["delta"] = cs.back().diffusion.delta;
                j["T"] = cs.back().diffusion.T;
            }
            result[kind] = j;
        }
        csv << '\n';
        for (std::size_t i = 0; i < m.size(); ++i) {
            csv << i;
            for (const auto& c : cs) csv << ',' << c.values[i];
            csv << '\n';
        }
        emit(a.out, a.format == "json" ? result.dump(2) + "\n" : csv.str(), out);
        return static_cast<int>(kOk);
    });
}

int cmd_derive(const DeriveArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        DerivationBudget budget = a.extended ? DerivationBudget::extended() : DerivationBudget{};
        if (a.literal) budget.expansion = BiasExpansion::Literal;
        if (a.max < 1) throw Error(ErrorKind::InvalidConfig, "--max must be at least 1");
        std::ostringstream text;
        json j = json::object();
        std::vector<Mismatch> bad;
        if (a.what == "g") {
            if (a.max > budget.g_cap)
                throw Error(ErrorKind::BudgetExceeded, "g derivation is capped at t = " + std::to_string(budget.g_cap));
            text << "t,r,coeff\n";
            for (int t = 1; t <= a.max; ++t) {
                const auto g = derive_g(t, budget);
                for (const auto& [r, c] : g.coeffs) {
                    text << t << ',' << r << ',' << c << '\n';
                    j[std::to_string(t)][std::to_string(r)] = big_to_json(c);
                }
            }
            if (a.verify) bad = verify_g(std::min(a.max, 20), budget);
        } else if (a.what == "b") {
            if (a.max > budget.b_cap)
                throw Error(ErrorKind::BudgetExceeded,
                            "b derivation is capped at T = " + std::to_string(budget.b_cap) +
                                (a.extended ? "" : " (use --extended for more)"));
            text << "T,t,delta_power,coeff\n";
            for (int T = 1; T <= a.max; ++T) {
                const auto b = derive_b(T, budget);
                for (const auto& [key, c] : b.coeffs) {
                    text << T << ',' << key.first << ',' << key.second << ',' << c << '\n';
                    j[std::to_string(T)][std::to_string(key.first)][std::to_string(key.second)] = big_to_json(c);
                }
            }
            if (a.verify) bad = verify_b(std::min(a.max, 10), budget);
        } else {
            throw Error(ErrorKind::InvalidConfig, "--what must be g or b");
        }
        emit(a.out, a.format == "json" ? j.dump(2) + "\n" : text.str(), out);
        if (a.verify) {
            for (const auto& m : bad) err << "mismatch at " << (a.what == "g" ? "t=" : "T=") << m.index << ": " << m.detail << '\n';
            if (!bad.empty()) return static_cast<int>(kMismatch);
            err << "verified against reference tables\n";
        }
        return static_cast<int>(kOk);
    });
}

}  // namespace cenreg::cli
