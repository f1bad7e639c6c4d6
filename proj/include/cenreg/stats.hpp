#pragma once

#include <vector>

namespace cenreg {

double normal_cdf(double x);
double normal_quantile(double p);

struct KsResult {
    double statistic = 0.0;  // sup |F_n - Phi|
    double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov test against N(0,1). The p-value uses the
// asymptotic Kolmogorov law with the Stephens small-sample correction.
KsResult ks_test_normal(std::vector<double> sample);
double kolmogorov_survival(double lambda);

struct Summary {
    double mean = 0.0, sd = 0.0, rmse = 0.0;
    double q05 = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, q95 = 0.0;
    std::size_t count = 0;
};

// rmse is measured against `truth`.
Summary summarize(std::vector<double> x, double truth);

}  // namespace cenreg
