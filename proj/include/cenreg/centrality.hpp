#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cenreg/graph_model.hpp"

namespace cenreg {

struct DiffusionParams {
    enum class DeltaRule { Fixed, InverseLambda1, InverseSqrtLambda1 };

    double delta = 1.0;
    int T = 1;
    DeltaRule rule = DeltaRule::Fixed;

    // Returns a copy with rule = Fixed and delta filled in. Needs lambda1 for the
    // eigenvalue-based rules.
    DiffusionParams resolved(const SymmetricMatrix& m) const;
};

struct ScalingPolicy {
    enum class Kind { Fixed, SqrtN, SqrtLambda1 };

    Kind kind = Kind::SqrtN;
    double a = 1.0;

    static ScalingPolicy fixed(double a) { return {Kind::Fixed, a}; }
    static ScalingPolicy sqrt_n() { return {Kind::SqrtN, 0.0}; }
    static ScalingPolicy sqrt_lambda1() { return {Kind::SqrtLambda1, 0.0}; }
};

struct RegularizationSpec {
    enum class Mode { Oracle, PlugIn };

    Mode mode = Mode::Oracle;
    double p_n = 0.0;  // oracle mode
    double M = 0.0;    // plug-in mode: lower bound on the graphon integral

    static RegularizationSpec oracle(double p_n) { return {Mode::Oracle, p_n, 0.0}; }
    static RegularizationSpec plug_in(double M) { return {Mode::PlugIn, 0.0, M}; }
};

struct Regularized {
    SymmetricWeightedMatrix matrix;
    std::vector<double> node_weights;  // lambda_i
    double tau = 0.0;
    double rho_hat = 0.0;  // edge density, plug-in mode only
};

enum class CentralityKind { Degree, Diffusion, Eigenvector, RegularizedEigenvector };

struct CentralityVector {
    std::vector<double> values;
    CentralityKind kind = CentralityKind::Degree;
    DiffusionParams diffusion;  // resolved; Diffusion only
    ScalingPolicy scaling;      // eigenvector kinds only
    double a_n = 0.0;           // resolved scale, eigenvector kinds only
    std::optional<double> lambda1;
    std::vector<double> node_weights;  // regularized kind only
};

struct EigenOptions {
    int max_iter = 200000;
    double tol = 1e-10;  // relative to the Frobenius norm
    std::uint64_t seed = 0x5eed;
    bool gap_check = false;
    int gap_iter = 2000;
};

struct EigenPair {
    double lambda1 = 0.0;
    std::vector<double> v;
    double residual = 0.0;  // ||M v - lambda1 v||_2
    int iterations = 0;
    // Filled when EigenOptions::gap_check is set.
    std::optional<double> lambda2_abs;
    bool degenerate_gap = false;
};

CentralityVector degree(const SymmetricMatrix& m);
// T products with the all-ones vector, never forming M^t.
CentralityVector diffusion(const SymmetricMatrix& m, const DiffusionParams& p);
// Power iteration for the eigenvalue of largest magnitude of a nonnegative symmetric matrix.
EigenPair leading_eigenpair(const SymmetricMatrix& m, const EigenOptions& opt = {});
double resolve_scale(const ScalingPolicy& s, std::size_t n, double lambda1);
CentralityVector eigenvector_centrality(const SymmetricMatrix& m, const ScalingPolicy& s, const EigenOptions& opt = {});
Regularized regularize(const SymmetricBinaryMatrix& m, const RegularizationSpec& spec);
CentralityVector regularized_eigenvector_centrality(const SymmetricBinaryMatrix& m, const ScalingPolicy& s,
                                                    const RegularizationSpec& spec, const EigenOptions& opt = {});

// iota' M^k iota for k = 0..kmax.
std::vector<double> walk_moments(const SymmetricMatrix& m, int kmax);

std::string to_string(CentralityKind k);

}  // namespace cenreg
