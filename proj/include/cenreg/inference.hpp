#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cenreg/centrality.hpp"
#include "cenreg/graph_model.hpp"
#include "cenreg/walk_coefficients.hpp"

namespace cenreg {

enum class FitMode {
    NoError,
    NoisyDegree,
    NoisyDiffusion,
    NoisyEigenCaseA,
    NoisyEigenCaseB,
    // sqrt(lambda1) scaling: no bias correction in the test.
    NoisyEigenCorollary5,
};

std::string to_string(FitMode m);
FitMode fit_mode_from_string(const std::string& s);

struct RegressionFit {
    double beta_hat = 0.0;
    double ssq_c = 0.0;
    std::vector<double> regressor;
    std::vector<double> residuals;
    double V0_hat = 0.0;
    std::optional<double> B_hat;
    std::optional<double> V_hat;
    std::optional<double> beta_check;
    FitMode mode = FitMode::NoError;
    std::size_t n = 0;
};

struct BiasVariance {
    double B_hat = 0.0;
    double V_hat = 0.0;
};

// How the delta factor enters the diffusion variance. The printed display carries
// delta^(2T) outside the squared Hadamard term; squaring the leading noise term
// gives delta^(4T), which is also what makes the statistic invariant to delta at T = 1.
enum class DiffusionVarianceScale { Squared, AsPrinted };

RegressionFit ols(const std::vector<double>& y, const std::vector<double>& c, FitMode mode = FitMode::NoError);
RegressionFit ols(const std::vector<double>& y, const CentralityVector& c, FitMode mode = FitMode::NoError);

BiasVariance degree_bias_variance(const SymmetricBinaryMatrix& a_hat, const RegressionFit& fit);
BiasVariance diffusion_bias_variance(const SymmetricBinaryMatrix& a_hat, const DiffusionParams& p,
                                     const RegressionFit& fit, const BiasPolynomial& coeffs,
                                     DiffusionVarianceScale scale = DiffusionVarianceScale::Squared);
BiasVariance eigen_bias_variance(double lambda1, const std::vector<double>& c_hat, const SymmetricBinaryMatrix& a_hat,
                                 const RegressionFit& fit);

// Stores B_hat, V_hat and, when 1 - B_hat > 1e-12, beta_check.
void attach(RegressionFit& fit, const BiasVariance& bv);

// One-call fits on the observed graph.
RegressionFit fit_degree(const SymmetricBinaryMatrix& a_hat, const std::vector<double>& y);
RegressionFit fit_diffusion(const SymmetricBinaryMatrix& a_hat, const std::vector<double>& y, const DiffusionParams& p,
                            DiffusionVarianceScale scale = DiffusionVarianceScale::Squared);
RegressionFit fit_eigenvector(const SymmetricBinaryMatrix& a_hat, const std::vector<double>& y, const ScalingPolicy& s,
                              FitMode mode, const EigenOptions& opt = {});

enum class Sided { Two, Left, Right };
std::string to_string(Sided s);
Sided sided_from_string(const std::string& s);

enum class Branch { NullZero, NullNonzero };

// Robust uses V0_hat, NonNull uses V_hat; Auto picks per mode.
enum class Denominator { Auto, Robust, NonNull };

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double null_value = 0.0;
    Sided sided = Sided::Two;
    std::map<double, bool> reject_at;
    Branch branch = Branch::NullZero;
};

double p_value(double statistic, Sided sided);
TestResult test(const RegressionFit& fit, double beta0, Sided sided = Sided::Two,
                const std::vector<double>& alphas = {0.05}, Denominator den = Denominator::Auto);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
};

enum class C0Policy { Interval, SingletonZero };

struct IntervalUnion {
    Interval c0;
    std::vector<Interval> c;  // zero, one or two pieces
    bool wraps = false;       // c is two half-lines
    std::vector<Interval> c_star;
    double alpha = 0.05;
    Sided sided = Sided::Two;
    bool contains(double x) const;
};

// Left gives sets bounded above, Right sets bounded below.
IntervalUnion confidence(const RegressionFit& fit, double alpha, Sided sided = Sided::Two,
                         C0Policy policy = C0Policy::Interval);

double bias_correct(const RegressionFit& fit);

nlohmann::json to_json(const RegressionFit& fit);
nlohmann::json to_json(const TestResult& t);
nlohmann::json to_json(const IntervalUnion& ci);

}  // namespace cenreg
