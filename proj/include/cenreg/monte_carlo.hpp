#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cenreg/centrality.hpp"
#include "cenreg/graph_model.hpp"
#include "cenreg/inference.hpp"
#include "cenreg/rng.hpp"

namespace cenreg {

struct EstimatorSpec {
    CentralityKind kind = CentralityKind::Degree;
    std::string name;  // column label in outputs
    DiffusionParams diffusion{1.0, 2, DiffusionParams::DeltaRule::Fixed};
    ScalingPolicy scaling = ScalingPolicy::sqrt_lambda1();
    FitMode eigen_mode = FitMode::NoisyEigenCorollary5;
    // Regularized kind: plug-in bound M if set, otherwise the oracle with the true p_n.
    std::optional<double> plug_in_M;

    static EstimatorSpec degree();
    static EstimatorSpec diffusion_with(double delta, int T);
    static EstimatorSpec eigenvector(ScalingPolicy s);
    static EstimatorSpec from_json(const nlohmann::json& j, const std::string& path);
    nlohmann::json to_json() const;
};

struct ErrorModel {
    double sigma = 1.0;
    // Optional replacement for N(0, sigma^2); receives the node's latent type.
    std::function<double(Rng&, double u)> custom;
};

struct ExperimentConfig {
    Graphon graphon = Graphon::constant(1.0);
    std::vector<std::size_t> n_grid{500};
    SparsityRule sparsity = SparsityRule::of(SparsityRule::Kind::InverseSqrtN);
    double beta_true = 1.0;
    std::vector<double> beta0_grid{0.0, 1.0};
    std::vector<EstimatorSpec> estimators{EstimatorSpec::degree()};
    ErrorModel error;
    std::size_t replications = 1000;
    std::uint64_t master_seed = 20240601;
    std::vector<double> alpha_grid{0.05};
    EigenOptions eigen;

    // Schema problems are reported as InvalidConfig with a JSON pointer.
    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// One replication of one estimator. Vectors are dropped; only the scalars needed
// for tests and summaries are kept.
struct Draw {
    bool ok = false;
    std::string failure;  // ErrorKind name when !ok
    RegressionFit fit;
    double beta_tilde = 0.0;  // OLS on the true centrality
};

struct EstimatorResult {
    EstimatorSpec spec;
    std::vector<Draw> draws;
    std::map<std::string, std::size_t> failures;
    std::size_t ok_count() const;
};

struct CellResult {
    std::size_t cell = 0;
    std::size_t n = 0;
    double p = 0.0;
    std::size_t rep_begin = 0, rep_end = 0;
    std::vector<EstimatorResult> estimators;
    double seconds = 0.0;
};

enum class TestVariant { Ours, Robust };

// Ours follows the fit mode (bias-corrected where the theory provides it);
// Robust is (beta_hat - beta0) / sqrt(V0_hat).
double draw_statistic(const Draw& d, double beta0, TestVariant v);
std::vector<double> statistics(const EstimatorResult& r, double beta0, TestVariant v);

struct RejectionRate {
    double rate = 0.0;
    double se = 0.0;
    std::size_t count = 0;
};
RejectionRate rejection_rate(const EstimatorResult& r, double beta0, double alpha, TestVariant v);

CellResult run_cell(const ExperimentConfig& cfg, std::size_t cell, std::size_t rep_begin, std::size_t rep_end,
                    int threads = 1);
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg, int threads = 1);

std::vector<std::pair<double, RejectionRate>> power_curve(const CellResult& cell, std::size_t estimator,
                                                          const std::vector<double>& beta0_grid, double alpha,
                                                          TestVariant v = TestVariant::Ours);

struct AttenuationRow {
    std::size_t n = 0;
    double p = 0.0;
    double mean_beta_hat = 0.0;
    double mean_beta_tilde = 0.0;
    double plim = 0.0;  // np / (np + 1), the constant-graphon limit
    std::size_t count = 0;
};
// Degree estimator over cfg.n_grid.
std::vector<AttenuationRow> attenuation_study(const ExperimentConfig& cfg, int threads = 1);

// size.csv, power.csv, dist_<estimator>.csv and manifest.json.
void write_outputs(const std::string& dir, const ExperimentConfig& cfg, const std::vector<CellResult>& cells,
                   int threads);

// One simulated data set, for dumping or round trips.
struct SimulatedData {
    LatentSample latent;
    SymmetricWeightedMatrix a;
    SymmetricBinaryMatrix a_hat;
    std::vector<double> eps;
};
SimulatedData simulate_replication(const ExperimentConfig& cfg, std::size_t cell, std::size_t rep);

}  // namespace cenreg
