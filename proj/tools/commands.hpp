#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cenreg::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

struct SimulateArgs {
    std::string config;
    std::string out_dir = ".";
    int threads = 1;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> dump_graph;
    std::string format = "csv";
};

struct EstimatorArgs {
    std::vector<std::string> centrality{"degree"};
    double delta = 1.0;
    int T = 1;
    std::string delta_rule = "fixed";
    std::string scaling = "sqrt-lambda1";
    std::string mode;  // eigenvector inference mode; empty picks from scaling
    std::optional<double> M;
    std::optional<double> p_n;
    std::uint64_t seed = 0x5eed;
};

struct RegressArgs {
    std::string edges;
    std::string outcomes;
    EstimatorArgs est;
    std::vector<double> beta0{0.0};
    std::vector<double> alpha{0.05};
    std::string sided = "two";
    std::string c0 = "interval";
    bool demean = false;
    std::string out;
    std::string format = "json";
};

struct CentralityArgs {
    std::string edges;
    std::optional<std::size_t> n;
    EstimatorArgs est;
    std::string out;
    std::string format = "csv";
};

struct DeriveArgs {
    std::string what = "g";
    int max = 10;
    std::string format = "csv";
    bool verify = false;
    bool extended = false;
    bool literal = false;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err);
int cmd_regress(const RegressArgs& a, std::ostream& out, std::ostream& err);
int cmd_centrality(const CentralityArgs& a, std::ostream& out, std::ostream& err);
int cmd_derive(const DeriveArgs& a, std::ostream& out, std::ostream& err);

}  // namespace cenreg::cli
