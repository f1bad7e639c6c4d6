#include "cenreg/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cenreg/errors.hpp"
#include "cenreg/stats.hpp"

namespace cenreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

void require_length(const RegressionFit& fit, std::size_t n) {
    if (fit.regressor.size() != n)
        throw Error(ErrorKind::ConfigMismatch, "fit regressor length does not match the graph");
}

}  // namespace

std::string to_string(FitMode m) {
    switch (m) {
        case FitMode::NoError: return "no-error";
        case FitMode::NoisyDegree: return "noisy-degree";
        case FitMode::NoisyDiffusion: return "noisy-diffusion";
        case FitMode::NoisyEigenCaseA: return "noisy-eigenvector-case-a";
        case FitMode::NoisyEigenCaseB: return "noisy-eigenvector-case-b";
        case FitMode::NoisyEigenCorollary5: return "noisy-eigenvector-sqrt-lambda1";
    }
    return "unknown";
}

FitMode fit_mode_from_string(const std::string& s) {
    for (auto m : {FitMode::NoError, FitMode::NoisyDegree, FitMode::NoisyDiffusion, FitMode::NoisyEigenCaseA,
                   FitMode::NoisyEigenCaseB, FitMode::NoisyEigenCorollary5})
        if (to_string(m) == s) return m;
    if (s == "case-a") return FitMode::NoisyEigenCaseA;
    if (s == "case-b") return FitMode::NoisyEigenCaseB;
    if (s == "sqrt-lambda1") return FitMode::NoisyEigenCorollary5;
    throw Error(ErrorKind::InvalidConfig, "unknown inference mode \"" + s + "\"");
}

std::string to_string(Sided s) {
    switch (s) {
        case Sided::Two: return "two";
        case Sided::Left: return "left";
        case Sided::Right: return "right";
    }
    return "two";
}

Sided sided_from_string(const std::string& s) {
    if (s == "two") return Sided::Two;
    if (s == "left") return Sided::Left;
    if (s == "right") return Sided::Right;
    throw Error(ErrorKind::InvalidConfig, "sided must be two, left or right");
}

RegressionFit ols(const std::vector<double>& y, const std::vector<double>& c, FitMode mode) {
    if (y.size() != c.size()) throw Error(ErrorKind::InvalidSize, "outcome and centrality lengths differ");
    RegressionFit f;
    f.n = y.size();
    f.mode = mode;
    f.regressor = c;
    double yc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        f.ssq_c += c[i] * c[i];
        yc += y[i] * c[i];
    }
    if (!(f.ssq_c > 0.0)) throw Error(ErrorKind::ZeroRegressor, "centrality vector is identically zero");
    f.beta_hat = yc / f.ssq_c;
    f.residuals.resize(f.n);
    double meat = 0.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        f.residuals[i] = y[i] - f.beta_hat * c[i];
        meat += sq(c[i] * f.residuals[i]);
    }
    f.V0_hat = meat / sq(f.ssq_c);
    return f;
}

RegressionFit ols(const std::vector<double>& y, const CentralityVector& c, FitMode mode) { return ols(y, c.values, mode); }

BiasVariance degree_bias_variance(const SymmetricBinaryMatrix& a_hat, const RegressionFit& fit) {
    require_length(fit, a_hat.size());
    const auto& c = fit.regressor;
    double acc = 0.0;
    for (std::size_t i = 0; i < a_hat.size(); ++i)
        for (auto j : a_hat.neighbors(i)) acc += sq(c[i] + c[j]);
    BiasVariance bv;
    bv.B_hat = 2.0 * static_cast<double>(a_hat.num_edges()) / fit.ssq_c;
    bv.V_hat = 0.5 * acc / sq(fit.ssq_c);
    return bv;
}

BiasVariance diffusion_bias_variance(const SymmetricBinaryMatrix& a_hat, const DiffusionParams& p,
                                     const RegressionFit& fit, const BiasPolynomial& coeffs,
                                     DiffusionVarianceScale scale) {
    require_length(fit, a_hat.size());
    if (coeffs.T != p.T) throw Error(ErrorKind::ConfigMismatch, "bias coefficients are for a different horizon");
    const auto pr = p.resolved(a_hat);
    const int T = pr.T;
    const std::size_t n = a_hat.size();

    // powers[k] = Ahat^k iota, k = 0..2T-1
    std::vector<std::vector<double>> powers(2 * T, std::vector<double>(n, 1.0));
    std::vector<double> moments(2 * T);
    moments[0] = static_cast<double>(n);
    for (int k = 1; k < 2 * T; ++k) {
        a_hat.multiply(powers[k - 1], powers[k]);
        double s = 0.0;
        for (double x : powers[k]) s += x;
        moments[k] = s;
    }

    BiasVariance bv;
    bv.B_hat = evaluate(coeffs, pr.delta, moments) / fit.ssq_c;

    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (auto j : a_hat.neighbors(i)) {
            double s = 0.0;
            for (int t = 1; t <= 2 * T; ++t) s += powers[2 * T - t][i] * powers[t - 1][j];
            acc += s * s;
        }
    }
    const double dpow = std::pow(pr.delta, scale == DiffusionVarianceScale::Squared ? 4 * T : 2 * T);
    bv.V_hat = 0.5 * dpow * acc / sq(fit.ssq_c);
    return bv;
}

BiasVariance eigen_bias_variance(double lambda1, const std::vector<double>& c_hat, const SymmetricBinaryMatrix& a_hat,
                                 const RegressionFit& fit) {
    if (!(lambda1 > 0.0)) throw Error(ErrorKind::DegenerateSpectrum, "eigenvector bias needs lambda1 > 0");
    if (c_hat.size() != a_hat.size()) throw Error(ErrorKind::ConfigMismatch, "centrality length does not match the graph");
    (void)fit;
    double ssq = 0.0, acc = 0.0;
    for (double x : c_hat) ssq += x * x;
    for (std::size_t i = 0; i < a_hat.size(); ++i)
        for (auto j : a_hat.neighbors(i)) acc += sq(c_hat[i]) + sq(c_hat[j]);
    BiasVariance bv;
    bv.B_hat = 1.0 / lambda1;
    bv.V_hat = 2.0 * acc / sq(lambda1 * ssq);
    return bv;
}

void attach(RegressionFit& fit, const BiasVariance& bv) {
    fit.B_hat = bv.B_hat;
    fit.V_hat = bv.V_hat;
    if (1.0 - bv.B_hat > 1e-12)
        fit.beta_check = fit.beta_hat / (1.0 - bv.B_hat);
    else
        fit.beta_check.reset();
}

RegressionFit fit_degree(const SymmetricBinaryMatrix& a_hat, const std::vector<double>& y) {
    auto fit = ols(y, degree(a_hat), FitMode::NoisyDegree);
    attach(fit, degree_bias_variance(a_hat, fit));
    return fit;
}

RegressionFit fit_diffusion(const SymmetricBinaryMatrix& a_hat, const std::vector<double>& y, const DiffusionParams& p,
                            DiffusionVarianceScale scale) {
    const auto c = diffusion(a_hat, p);
    auto fit = ols(y, c, FitMode::NoisyDiffusion);
    attach(fit, diffusion_bias_variance(a_hat, c.diffusion, fit, reference_b(c.diffusion.T), scale));
    return fit;
}

RegressionFit fit_eigenvector(const SymmetricBinaryMatrix& a_hat, const std::vector<double>& y, const ScalingPolicy& s,
                              FitMode mode, const EigenOptions& opt) {
    if (mode != FitMode::NoisyEigenCaseA && mode != FitMode::NoisyEigenCaseB && mode != FitMode::NoisyEigenCorollary5)
        throw Error(ErrorKind::ConfigMismatch, "eigenvector fits need an eigenvector inference mode");
    const auto c = eigenvector_centrality(a_hat, s, opt);
    auto fit = ols(y, c, mode);
    attach(fit, eigen_bias_variance(*c.lambda1, c.values, a_hat, fit));
    return fit;
}

double p_value(double statistic, Sided sided) {
    if (std::isnan(statistic)) return std::nan("");
    switch (sided) {
        case Sided::Two: return std::min(1.0, 2.0 * normal_cdf(-std::abs(statistic)));
        case Sided::Right: return normal_cdf(-statistic);
        case Sided::Left: return normal_cdf(statistic);
    }
    return 1.0;
}

TestResult test(const RegressionFit& fit, double beta0, Sided sided, const std::vector<double>& alphas, Denominator den) {
    TestResult r;
    r.null_value = beta0;
    r.sided = sided;
    auto need = [&](bool b, bool v) {
        if ((b && !fit.B_hat) || (v && !fit.V_hat))
            throw Error(ErrorKind::MissingComponents, "this test needs the bias and variance estimates");
    };
    if (beta0 == 0.0) {
        r.branch = Branch::NullZero;
        r.statistic = fit.beta_hat / std::sqrt(fit.V0_hat);
    } else {
        r.branch = Branch::NullNonzero;
        switch (fit.mode) {
            case FitMode::NoError: r.statistic = (fit.beta_hat - beta0) / std::sqrt(fit.V0_hat); break;
            case FitMode::NoisyDegree:
            case FitMode::NoisyDiffusion:
                need(true, true);
                r.statistic = (fit.beta_hat - beta0 * (1.0 - *fit.B_hat)) / (beta0 * std::sqrt(*fit.V_hat));
                break;
            case FitMode::NoisyEigenCaseA:
            case FitMode::NoisyEigenCaseB: {
                const bool use_v = den == Denominator::NonNull ||
                                   (den == Denominator::Auto && fit.mode == FitMode::NoisyEigenCaseB);
                need(true, use_v);
                r.statistic = (fit.beta_hat - beta0 * (1.0 - *fit.B_hat)) / std::sqrt(use_v ? *fit.V_hat : fit.V0_hat);
                break;
            }
            case FitMode::NoisyEigenCorollary5: {
                const bool use_v = den == Denominator::NonNull;
                need(false, use_v);
                r.statistic = (fit.beta_hat - beta0) / std::sqrt(use_v ? *fit.V_hat : fit.V0_hat);
                break;
            }
        }
    }
    r.p_value = p_value(r.statistic, sided);
    for (double a : alphas) {
        if (!(a > 0.0 && a < 1.0)) throw Error(ErrorKind::InvalidLevel, "alpha must lie in (0,1)");
        r.reject_at[a] = r.p_value <= a * (1.0 + 1e-12);  // boundary inclusive, with rounding slack
    }
    return r;
}

bool IntervalUnion::contains(double x) const {
    return std::any_of(c_star.begin(), c_star.end(), [x](const Interval& i) { return i.contains(x); });
}

namespace {

// { beta : |beta_hat - a*beta| <= z*s*|beta| }, the acceptance region of the
// self-normalised statistic. Lines through the origin with slopes a - zs and a + zs
// bracket beta_hat; the roots are beta_hat/(a + zs) and beta_hat/(a - zs).
std::vector<Interval> ratio_region(double beta_hat, double a, double zs, bool& wraps) {
    double dm = a - zs, dp = a + zs;
    // a denominator that is zero up to rounding gets the half-line convention
    const double eps = 1e-12 * std::max(std::abs(a), std::abs(zs));
    if (std::abs(dm) <= eps) dm = 0.0;
    if (std::abs(dp) <= eps) dp = 0.0;
    wraps = false;
    const double prod = dm * dp;
    if (prod > 0.0) {
        const double r1 = beta_hat / dp, r2 = beta_hat / dm;
        return {{std::min(r1, r2), std::max(r1, r2)}};
    }
    if (prod < 0.0) {
        const double r1 = beta_hat / dp, r2 = beta_hat / dm;
        if (beta_hat == 0.0) return {{-kInf, kInf}};
        wraps = true;
        return {{-kInf, std::min(r1, r2)}, {std::max(r1, r2), kInf}};
    }
    // One slope is zero: the quadratic degenerates to beta_hat * d * beta >= beta_hat^2.
    const double d = dm == 0.0 ? dp : dm;
    if (d == 0.0) return beta_hat == 0.0 ? std::vector<Interval>{{-kInf, kInf}} : std::vector<Interval>{};
    if (beta_hat == 0.0) return {{-kInf, kInf}};
    const double root = beta_hat / d;
    if (beta_hat * d > 0.0) return {{root, kInf}};
    return {{-kInf, root}};
}

// { beta : |beta_hat - a*beta| <= zs }
std::vector<Interval> linear_region(double beta_hat, double a, double zs) {
    if (a == 0.0) return std::abs(beta_hat) <= zs ? std::vector<Interval>{{-kInf, kInf}} : std::vector<Interval>{};
    const double r1 = (beta_hat - zs) / a, r2 = (beta_hat + zs) / a;
    return {{std::min(r1, r2), std::max(r1, r2)}};
}

std::vector<Interval> merge(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& i : v) {
        if (!out.empty() && i.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, i.hi);
        else
            out.push_back(i);
    }
    return out;
}

}  // namespace

IntervalUnion confidence(const RegressionFit& fit, double alpha, Sided sided, C0Policy policy) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidLevel, "alpha must lie in (0,1)");
    IntervalUnion ci;
    ci.alpha = alpha;
    ci.sided = sided;
    const double z = normal_quantile(sided == Sided::Two ? 1.0 - alpha / 2.0 : 1.0 - alpha);
    const double h0 = z * std::sqrt(fit.V0_hat);

    if (policy == C0Policy::SingletonZero)
        ci.c0 = {0.0, 0.0};
    else if (sided == Sided::Two)
        ci.c0 = {fit.beta_hat - h0, fit.beta_hat + h0};
    else if (sided == Sided::Left)
        ci.c0 = {-kInf, fit.beta_hat + h0};
    else
        ci.c0 = {fit.beta_hat - h0, kInf};

    switch (fit.mode) {
        case FitMode::NoError:
        case FitMode::NoisyEigenCorollary5:
            ci.c = linear_region(fit.beta_hat, 1.0, h0);
            break;
        case FitMode::NoisyDegree:
        case FitMode::NoisyDiffusion:
            if (!fit.B_hat || !fit.V_hat) throw Error(ErrorKind::MissingComponents, "interval needs B_hat and V_hat");
            ci.c = ratio_region(fit.beta_hat, 1.0 - *fit.B_hat, z * std::sqrt(*fit.V_hat), ci.wraps);
            break;
        case FitMode::NoisyEigenCaseA:
        case FitMode::NoisyEigenCaseB: {
            if (!fit.B_hat) throw Error(ErrorKind::MissingComponents, "interval needs B_hat");
            const bool use_v = fit.mode == FitMode::NoisyEigenCaseB;
            if (use_v && !fit.V_hat) throw Error(ErrorKind::MissingComponents, "interval needs V_hat");
            ci.c = linear_region(fit.beta_hat, 1.0 - *fit.B_hat, z * std::sqrt(use_v ? *fit.V_hat : fit.V0_hat));
            break;
        }
    }
    if (sided != Sided::Two && !ci.c.empty()) {
        // One-sided: keep the binding end, open the other.
        Interval hull{ci.c.front().lo, ci.c.back().hi};
        if (ci.wraps) hull = {-kInf, kInf};
        if (sided == Sided::Left)
            hull.lo = -kInf;
        else
            hull.hi = kInf;
        ci.c = {hull};
        ci.wraps = false;
    }
    std::vector<Interval> all = ci.c;
    all.push_back(ci.c0);
    ci.c_star = merge(all);
    return ci;
}

double bias_correct(const RegressionFit& fit) {
    if (!fit.B_hat) throw Error(ErrorKind::MissingComponents, "bias correction needs B_hat");
    if (1.0 - *fit.B_hat <= 1e-12) throw Error(ErrorKind::NonpositiveAttenuation, "1 - B_hat is not positive");
    return fit.beta_hat / (1.0 - *fit.B_hat);
}

namespace {
nlohmann::json endpoint(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}
nlohmann::json opt(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); }
nlohmann::json interval_json(const Interval& i) { return nlohmann::json::array({endpoint(i.lo), endpoint(i.hi)}); }
}  // namespace

nlohmann::json to_json(const RegressionFit& fit) {
    nlohmann::json j;
    j["beta_hat"] = fit.beta_hat;
    j["B_hat"] = opt(fit.B_hat);
    j["attenuation"] = fit.B_hat ? nlohmann::json(1.0 - *fit.B_hat) : nlohmann::json(nullptr);
    j["beta_check"] = opt(fit.beta_check);
    j["V_hat"] = opt(fit.V_hat);
    j["V0_hat"] = fit.V0_hat;
    j["n"] = fit.n;
    j["mode"] = to_string(fit.mode);
    return j;
}

nlohmann::json to_json(const TestResult& t) {
    nlohmann::json rej = nlohmann::json::object();
    for (const auto& [a, r] : t.reject_at) rej[std::to_string(a)] = r;
    return {{"beta0", t.null_value},
            {"statistic", endpoint(t.statistic)},
            {"p_value", t.p_value},
            {"sided", to_string(t.sided)},
            {"branch", t.branch == Branch::NullZero ? "null-zero" : "null-nonzero"},
            {"reject_at", rej}};
}

nlohmann::json to_json(const IntervalUnion& ci) {
    nlohmann::json c = nlohmann::json::array(), cs = nlohmann::json::array();
    for (const auto& i : ci.c) c.push_back(interval_json(i));
    for (const auto& i : ci.c_star) cs.push_back(interval_json(i));
    return {{"alpha", ci.alpha}, {"sided", to_string(ci.sided)}, {"c0", interval_json(ci.c0)},
            {"c", c},           {"wraps", ci.wraps},             {"c_star", cs}};
}

}  // namespace cenreg
