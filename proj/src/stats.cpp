#include "cenreg/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "cenreg/errors.hpp"

namespace cenreg {

double normal_cdf(double x) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return boost::math::cdf(boost::math::normal_distribution<double>(), x);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::InvalidLevel, "normal quantile needs p in (0,1)");
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.3) {
        // Small-lambda form converges where the alternating series does not.
        const double c = std::sqrt(2.0 * M_PI) / lambda;
        double s = 0.0;
        for (int k = 1; k <= 50; ++k) {
            const double a = (2 * k - 1) * M_PI / (2.0 * lambda);
            s += std::exp(-0.5 * a * a);
        }
        return std::clamp(1.0 - c * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 ? 2.0 : -2.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(s, 0.0, 1.0);
}

KsResult ks_test_normal(std::vector<double> sample) {
    KsResult r;
    const std::size_t n = sample.size();
    if (n == 0) return r;
    std::sort(sample.begin(), sample.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = normal_cdf(sample[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    r.statistic = d;
    const double sn = std::sqrt(static_cast<double>(n));
    r.p_value = kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
    return r;
}

namespace {
double quantile_sorted(const std::vector<double>& x, double q) {
    if (x.empty()) return std::nan("");
    const double pos = q * static_cast<double>(x.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (pos - static_cast<double>(lo)) * (x[hi] - x[lo]);
}
}  // namespace

Summary summarize(std::vector<double> x, double truth) {
    Summary s;
    s.count = x.size();
    if (x.empty()) {
        s.mean = s.sd = s.rmse = s.q05 = s.q25 = s.median = s.q75 = s.q95 = std::nan("");
        return s;
    }
    double sum = 0.0, sq = 0.0;
    for (double v : x) {
        sum += v;
        sq += (v - truth) * (v - truth);
    }
    s.mean = sum / x.size();
    double var = 0.0;
    for (double v : x) var += (v - s.mean) * (v - s.mean);
    s.sd = x.size() > 1 ? std::sqrt(var / (x.size() - 1)) : 0.0;
    s.rmse = std::sqrt(sq / x.size());
    std::sort(x.begin(), x.end());
    s.q05 = quantile_sorted(x, 0.05);
    s.q25 = quantile_sorted(x, 0.25);
    s.median = quantile_sorted(x, 0.5);
    s.q75 = quantile_sorted(x, 0.75);
    s.q95 = quantile_sorted(x, 0.95);
    return s;
}

}  // namespace cenreg
