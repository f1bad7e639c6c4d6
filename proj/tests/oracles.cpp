#include "oracles.hpp"

#include <cmath>
#include <set>

#include <Eigen/Eigenvalues>

#include "cenreg/rng.hpp"

namespace oracle {

Eigen::MatrixXd dense(const cenreg::SymmetricMatrix& m) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m.size(), m.size());
    m.for_each_entry([&](std::size_t i, std::size_t j, double w) { d(i, j) = w; });
    return d;
}

Eigen::VectorXd diffusion_by_powers(const Eigen::MatrixXd& a, double delta, int T) {
    const auto n = a.rows();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n), power = Eigen::MatrixXd::Identity(n, n);
    for (int t = 1; t <= T; ++t) {
        power = power * a;
        acc += std::pow(delta, t) * power;
    }
    return acc * Eigen::VectorXd::Ones(n);
}

double diffusion_variance_hadamard(const Eigen::MatrixXd& a, const Eigen::VectorXd& c_hat, double delta, int T,
                                   int delta_power) {
    const auto n = a.rows();
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(n);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (int t = 1; t <= 2 * T; ++t) {
        Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n), right = Eigen::MatrixXd::Identity(n, n);
        for (int k = 0; k < 2 * T - t; ++k) left = left * a;
        for (int k = 0; k < t - 1; ++k) right = right * a;
        sum += (left * one) * (one.transpose() * right);
    }
    const Eigen::MatrixXd inner = a.cwiseProduct(sum.cwiseProduct(sum));
    const double ssq = c_hat.squaredNorm();
    return 0.5 * std::pow(delta, delta_power) * (one.transpose() * inner * one)(0, 0) / (ssq * ssq);
}

DenseEigen dense_leading(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const auto& ev = es.eigenvalues();
    const auto n = a.rows();
    // eigenvalues come sorted ascending; for a nonnegative matrix the last is the Perron root
    const Eigen::Index best = n - 1;
    double second = 0.0;
    for (Eigen::Index k = 0; k < n - 1; ++k) second = std::max(second, std::abs(ev(k)));
    Eigen::VectorXd v = es.eigenvectors().col(best);
    if (v.sum() < 0) v = -v;
    return {ev(best), v, second};
}

std::map<int, long long> walk_counts_labelled(int t) {
    const int labels = t + 1;
    std::map<int, long long> raw;
    std::vector<int> w(t + 1, 0);
    // Odometer over all label sequences with no immediate repeats.
    long long total = 1;
    for (int k = 0; k <= t; ++k) total *= labels;
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        bool ok = true;
        for (int k = 0; k <= t; ++k) {
            w[k] = static_cast<int>(c % labels);
            c /= labels;
            if (k > 0 && w[k] == w[k - 1]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::map<std::pair<int, int>, int> mult;
        for (int k = 0; k < t; ++k) ++mult[{std::min(w[k], w[k + 1]), std::max(w[k], w[k + 1])}];
        std::map<int, int> deg;
        for (const auto& [e, m] : mult) {
            if (m < 2) ok = false;
            ++deg[e.first];
            ++deg[e.second];
        }
        if (!ok) continue;
        for (const auto& [v, d] : deg)
            if (d > 2) ok = false;
        const std::set<int> verts(w.begin(), w.end());
        // A walk's edge set is connected; with max degree 2 it is a path iff it is acyclic.
        if (!ok || mult.size() + 1 != verts.size()) continue;
        ++raw[static_cast<int>(mult.size())];
    }
    std::map<int, long long> out;
    for (const auto& [s, cnt] : raw) {
        long long falling = 1;
        for (int k = 0; k < s + 1; ++k) falling *= labels - k;
        out[s] = cnt / falling;
    }
    return out;
}

cenreg::SymmetricBinaryMatrix random_graph(std::size_t n, double p, std::uint64_t seed) {
    cenreg::Rng rng(seed);
    std::vector<cenreg::Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < p) edges.emplace_back(i, j);
    return cenreg::SymmetricBinaryMatrix::from_edges(n, edges);
}

}  // namespace oracle
