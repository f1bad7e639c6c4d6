#include "cenreg/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cenreg/errors.hpp"
#include "cenreg/rng.hpp"

namespace cenreg {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

std::string to_string(CentralityKind k) {
    switch (k) {
        case CentralityKind::Degree: return "degree";
        case CentralityKind::Diffusion: return "diffusion";
        case CentralityKind::Eigenvector: return "eigenvector";
        case CentralityKind::RegularizedEigenvector: return "regularized-eigenvector";
    }
    return "unknown";
}

DiffusionParams DiffusionParams::resolved(const SymmetricMatrix& m) const {
    if (T < 1) throw Error(ErrorKind::InvalidConfig, "diffusion horizon T must be at least 1");
    DiffusionParams out = *this;
    out.rule = DeltaRule::Fixed;
    if (rule != DeltaRule::Fixed) {
        const double l1 = leading_eigenpair(m).lambda1;
        if (!(l1 > 0.0)) throw Error(ErrorKind::DegenerateSpectrum, "delta rule needs lambda1 > 0");
        out.delta = rule == DeltaRule::InverseLambda1 ? 1.0 / l1 : 1.0 / std::sqrt(l1);
        if (out.delta > 1.0)
            throw Error(ErrorKind::DegenerateSpectrum, "lambda1 < 1 puts the resolved delta above 1");
    }
    if (!(out.delta >= 0.0 && out.delta <= 1.0)) throw Error(ErrorKind::InvalidConfig, "delta must lie in [0,1]");
    return out;
}

CentralityVector degree(const SymmetricMatrix& m) {
    CentralityVector c;
    c.kind = CentralityKind::Degree;
    c.values = m.row_sums();
    return c;
}

CentralityVector diffusion(const SymmetricMatrix& m, const DiffusionParams& p) {
    CentralityVector c;
    c.kind = CentralityKind::Diffusion;
    c.diffusion = p.resolved(m);
    const std::size_t n = m.size();
    std::vector<double> s(n, 1.0), next(n);
    c.values.assign(n, 0.0);
    double w = 1.0;
    for (int t = 1; t <= c.diffusion.T; ++t) {
        m.multiply(s, next);
        s.swap(next);
        w *= c.diffusion.delta;
        for (std::size_t i = 0; i < n; ++i) c.values[i] += w * s[i];
    }
    return c;
}

EigenPair leading_eigenpair(const SymmetricMatrix& m, const EigenOptions& opt) {
    const std::size_t n = m.size();
    const double fro = m.frobenius_norm();
    if (n == 0 || fro == 0.0) throw Error(ErrorKind::EmptyGraph, "leading eigenpair of a zero matrix");

    // Shift by the RMS row norm. For a nonnegative matrix this keeps lambda1 + sigma
    // strictly dominant even when -lambda1 is also an eigenvalue (bipartite pieces).
    const double sigma = fro / std::sqrt(static_cast<double>(n));
    const double tol = opt.tol * fro;

    Rng rng(opt.seed);
    std::vector<double> v(n), y(n);
    for (auto& x : v) x = 0.5 + rng.uniform();
    double nv = norm(v);
    for (auto& x : v) x /= nv;

    EigenPair out;
    double lambda = 0.0, resid = 0.0;
    // Once the residual test passes, keep polishing for a bounded number of steps:
    // the residual bounds the vector error only up to the gap, so a few more digits are cheap insurance.
    std::vector<double> best;
    double best_lambda = 0.0, best_resid = std::numeric_limits<double>::infinity();
    int it = 0, polish_end = -1;
    for (; it < opt.max_iter; ++it) {
        m.multiply(v, y);
        lambda = dot(v, y);
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) r2 += (y[i] - lambda * v[i]) * (y[i] - lambda * v[i]);
        resid = std::sqrt(r2);
        if (resid <= tol) {
            if (polish_end < 0) polish_end = it + std::max(20, it / 4);
            if (resid >= best_resid) break;
            best = v, best_lambda = lambda, best_resid = resid;
            if (resid <= 1e-4 * tol || it >= polish_end) break;
        }
        for (std::size_t i = 0; i < n; ++i) y[i] += sigma * v[i];
        nv = norm(y);
        for (std::size_t i = 0; i < n; ++i) v[i] = y[i] / nv;
    }
    if (!best.empty()) {
        v = std::move(best);
        lambda = best_lambda;
        resid = best_resid;
    }
    if (resid > tol)
        throw Error(ErrorKind::NoConvergence,
                    "power iteration stopped after " + std::to_string(it) + " steps, residual " + std::to_string(resid),
                    resid);
    if (lambda < 0.0) throw Error(ErrorKind::DegenerateSpectrum, "leading eigenvalue is negative");
    if (std::accumulate(v.begin(), v.end(), 0.0) < 0.0)
        for (auto& x : v) x = -x;
    out.lambda1 = lambda;
    out.v = std::move(v);
    out.residual = resid;
    out.iterations = it + 1;

    if (opt.gap_check) {
        // Unshifted power iteration on the complement of v1 estimates the next largest |eigenvalue|.
        std::vector<double> x(n), z(n);
        for (auto& e : x) e = rng.uniform() - 0.5;
        double est = 0.0;
        for (int k = 0; k < opt.gap_iter; ++k) {
            const double proj = dot(x, out.v);
            for (std::size_t i = 0; i < n; ++i) x[i] -= proj * out.v[i];
            const double nx = norm(x);
            if (nx == 0.0) break;
            for (auto& e : x) e /= nx;
            m.multiply(x, z);
            const double pz = dot(z, out.v);
            for (std::size_t i = 0; i < n; ++i) z[i] -= pz * out.v[i];
            est = norm(z);
            x.swap(z);
        }
        out.lambda2_abs = est;
        out.degenerate_gap = std::abs(lambda) - est < 1e-8 * std::abs(lambda);
    }
    return out;
}

double resolve_scale(const ScalingPolicy& s, std::size_t n, double lambda1) {
    switch (s.kind) {
        case ScalingPolicy::Kind::Fixed:
            if (!(s.a > 0.0)) throw Error(ErrorKind::InvalidConfig, "fixed scale must be positive");
            return s.a;
        case ScalingPolicy::Kind::SqrtN: return std::sqrt(static_cast<double>(n));
        case ScalingPolicy::Kind::SqrtLambda1:
            if (!(lambda1 > 0.0)) throw Error(ErrorKind::DegenerateSpectrum, "sqrt-lambda1 scaling needs lambda1 > 0");
            return std::sqrt(lambda1);
    }
    return 0.0;
}

CentralityVector eigenvector_centrality(const SymmetricMatrix& m, const ScalingPolicy& s, const EigenOptions& opt) {
    auto ep = leading_eigenpair(m, opt);
    CentralityVector c;
    c.kind = CentralityKind::Eigenvector;
    c.scaling = s;
    c.lambda1 = ep.lambda1;
    c.a_n = resolve_scale(s, m.size(), ep.lambda1);
    c.values = std::move(ep.v);
    for (auto& x : c.values) x *= c.a_n;
    return c;
}

Regularized regularize(const SymmetricBinaryMatrix& m, const RegularizationSpec& spec) {
    const std::size_t n = m.size();
    Regularized out;
    if (spec.mode == RegularizationSpec::Mode::Oracle) {
        if (!(spec.p_n > 0.0 && spec.p_n <= 1.0)) throw Error(ErrorKind::InvalidSparsity, "oracle p_n must lie in (0,1]");
        out.tau = 2.0 * static_cast<double>(n) * spec.p_n;
    } else {
        if (!(spec.M > 0.0 && spec.M <= 1.0)) throw Error(ErrorKind::InvalidBound, "plug-in bound M must lie in (0,1]");
        const double nn = static_cast<double>(n);
        out.rho_hat = n > 1 ? 2.0 * static_cast<double>(m.num_edges()) / (nn * (nn - 1.0)) : 0.0;
        out.tau = 3.0 * nn * out.rho_hat / spec.M;
    }
    out.node_weights.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = static_cast<double>(m.degree(i));
        if (d > 0.0) out.node_weights[i] = std::min(out.tau / d, 1.0);
    }
    out.matrix = SymmetricWeightedMatrix(n);
    for (auto [i, j] : m.edges()) out.matrix.set(i, j, std::sqrt(out.node_weights[i] * out.node_weights[j]));
    return out;
}

CentralityVector regularized_eigenvector_centrality(const SymmetricBinaryMatrix& m, const ScalingPolicy& s,
                                                    const RegularizationSpec& spec, const EigenOptions& opt) {
    auto reg = regularize(m, spec);
    auto c = eigenvector_centrality(reg.matrix, s, opt);
    c.kind = CentralityKind::RegularizedEigenvector;
    c.node_weights = std::move(reg.node_weights);
    return c;
}

std::vector<double> walk_moments(const SymmetricMatrix& m, int kmax) {
    const std::size_t n = m.size();
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
    std::vector<double> s(n, 1.0), next(n);
    out[0] = static_cast<double>(n);
    for (int k = 1; k <= kmax; ++k) {
        m.multiply(s, next);
        s.swap(next);
        out[k] = std::accumulate(s.begin(), s.end(), 0.0);
    }
    return out;
}

}  // namespace cenreg
