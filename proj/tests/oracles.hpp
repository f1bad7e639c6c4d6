#pragma once

// Slow, independent reference computations used only by the tests.

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cenreg/graph_model.hpp"

namespace oracle {

Eigen::MatrixXd dense(const cenreg::SymmetricMatrix& m);

// sum_t delta^t A^t iota with explicit matrix powers.
Eigen::VectorXd diffusion_by_powers(const Eigen::MatrixXd& a, double delta, int T);

// The Hadamard-product form of the diffusion variance, before any edge-local rewriting:
// 0.5 * ssq^-2 * delta^k * iota' [A o (sum_t (A^{2T-t} iota)(iota' A^{t-1}))^{o2}] iota
double diffusion_variance_hadamard(const Eigen::MatrixXd& a, const Eigen::VectorXd& c_hat, double delta, int T,
                                   int delta_power);

struct DenseEigen {
    double lambda1;
    Eigen::VectorXd v1;
    double lambda2_abs;
};
DenseEigen dense_leading(const Eigen::MatrixXd& a);

// gamma~_s(t) by brute force over labelled walks on t+1 labels: every walk is kept
// or dropped by checking its edge multigraph directly, then the count is divided by
// the number of labellings of each shape.
std::map<int, long long> walk_counts_labelled(int t);

// Erdos-Renyi style test graph.
cenreg::SymmetricBinaryMatrix random_graph(std::size_t n, double p, std::uint64_t seed);

}  // namespace oracle
