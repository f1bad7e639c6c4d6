#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../tools/commands.hpp"
#include "cenreg/centrality.hpp"
#include "cenreg/monte_carlo.hpp"

using namespace cenreg;
using namespace cenreg::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {
const std::string kData = CENREG_TEST_DATA;

fs::path scratch(const std::string& name) {
    auto d = fs::temp_directory_path() / ("cenreg_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

RegressArgs k3_job() {
    RegressArgs a;
    a.edges = kData + "/k3_edges.csv";
    a.outcomes = kData + "/k3_outcomes.csv";
    return a;
}
}  // namespace

TEST_CASE("regress on K3") {
    std::ostringstream out, err;
    auto a = k3_job();
    a.est.centrality = {"degree", "diffusion"};
    REQUIRE(cmd_regress(a, out, err) == kOk);
    auto j = json::parse(out.str());
    CHECK(j["degree"]["beta_hat"].get<double>() == doctest::Approx(1.0));
    CHECK(j["degree"]["attenuation"].get<double>() == doctest::Approx(0.5));
    CHECK(j["degree"]["beta_check"].get<double>() == doctest::Approx(2.0));
    for (const char* k : {"beta_hat", "B_hat", "attenuation", "beta_check", "V_hat", "V0_hat"})
        CHECK(j["degree"][k] == j["diffusion"][k]);
    CHECK(j["degree"]["intervals"] == j["diffusion"]["intervals"]);
    CHECK(j["degree"]["tests"] == j["diffusion"]["tests"]);
}

TEST_CASE("regress rejects inconsistent ids and duplicates") {
    auto d = scratch("ids");
    write(d / "y.csv", "id,y\n0,1\n1,2\n");
    std::ostringstream out, err;
    auto a = k3_job();
    a.outcomes = (d / "y.csv").string();
    CHECK(cmd_regress(a, out, err) == kUsage);
    CHECK(err.str().find("IdMismatch") != std::string::npos);

    write(d / "dup.csv", "i,j\n0,1\n1,2\n2,1\n");
    std::ostringstream out2, err2;
    auto b = k3_job();
    b.edges = (d / "dup.csv").string();
    CHECK(cmd_regress(b, out2, err2) == kUsage);
    CHECK(err2.str().find("DuplicateEdge") != std::string::npos);
    CHECK(err2.str().find("row 4") != std::string::npos);

    std::ostringstream out3, err3;
    auto c = k3_job();
    c.est.centrality = {"regularized-eigenvector"};
    CHECK(cmd_regress(c, out3, err3) == kUsage);
    fs::remove_all(d);
}

TEST_CASE("regress allows listed isolated nodes") {
    auto d = scratch("isolated");
    write(d / "y.csv", "id,y\n0,1\n1,2\n2,3\n3,0.5\n");
    std::ostringstream out, err;
    auto a = k3_job();
    a.outcomes = (d / "y.csv").string();
    CHECK(cmd_regress(a, out, err) == kOk);
    CHECK(json::parse(out.str())["degree"]["n"] == 4);
    fs::remove_all(d);
}

TEST_CASE("derive commands") {
    std::ostringstream out, err;
    DeriveArgs b;
    b.what = "b";
    b.max = 2;
    b.verify = true;
    CHECK(cmd_derive(b, out, err) == kOk);
    CHECK(out.str().find("T,t,delta_power,coeff") != std::string::npos);
    CHECK(out.str().find("2,1,3,-3") != std::string::npos);

    DeriveArgs g;
    g.max = 4;
    g.verify = true;
    std::ostringstream out2, err2;
    CHECK(cmd_derive(g, out2, err2) == kOk);

    DeriveArgs big;
    big.what = "b";
    big.max = 99;
    std::ostringstream out3, err3;
    CHECK(cmd_derive(big, out3, err3) == kUsage);
    CHECK(err3.str().find("BudgetExceeded") != std::string::npos);

    DeriveArgs lit;
    lit.what = "b";
    lit.max = 3;
    lit.verify = true;
    lit.literal = true;
    std::ostringstream out4, err4;
    CHECK(cmd_derive(lit, out4, err4) == kMismatch);
}

TEST_CASE("simulate writes outputs and reports parse locations") {
    auto d = scratch("sim");
    write(d / "cfg.json", R"({"n_grid": [100], "replications": 10, "sparsity": "inverse-n"})");
    SimulateArgs a;
    a.config = (d / "cfg.json").string();
    a.out_dir = (d / "out").string();
    a.dump_graph = (d / "graphs").string();
    std::ostringstream out, err;
    REQUIRE(cmd_simulate(a, out, err) == kOk);
    std::ifstream size(d / "out" / "size.csv");
    std::string header;
    std::getline(size, header);
    CHECK(header == "n,p,estimator,beta0,alpha,reject_rate,se,failures");
    std::ifstream mf(d / "out" / "manifest.json");
    auto m = json::parse(mf);
    CHECK(m["cells"][0]["p"].get<double>() == doctest::Approx(0.01));

    // round trip: the dumped graph gives the same centralities as the in-memory draw
    auto cfg = ExperimentConfig::from_json(json::parse(R"({"n_grid": [100], "replications": 10, "sparsity": "inverse-n"})"));
    const auto data = simulate_replication(cfg, 0, 0);
    CentralityArgs c;
    c.edges = (d / "graphs" / "n100_edges.csv").string();
    c.n = 100;
    c.format = "json";
    c.est.centrality = {"degree", "diffusion"};
    c.est.T = 2;
    std::ostringstream cout_, cerr_;
    REQUIRE(cmd_centrality(c, cout_, cerr_) == kOk);
    auto cj = json::parse(cout_.str());
    CHECK(cj["degree"]["values"].get<std::vector<double>>() == degree(data.a_hat).values);
    CHECK(cj["diffusion"]["values"].get<std::vector<double>>() == diffusion(data.a_hat, {1.0, 2}).values);

    write(d / "bad.json", "{\"n_grid\": [100],\n  \"replications\": }");
    SimulateArgs bad = a;
    bad.config = (d / "bad.json").string();
    std::ostringstream out2, err2;
    CHECK(cmd_simulate(bad, out2, err2) == kUsage);
    CHECK(err2.str().find("bad.json:2:") != std::string::npos);
    fs::remove_all(d);
}

TEST_CASE("simulate is reproducible under a seed override") {
    auto d = scratch("seed");
    write(d / "cfg.json", R"({"n_grid": [80], "replications": 8})");
    auto run = [&](const std::string& sub, int threads) {
        SimulateArgs a;
        a.config = (d / "cfg.json").string();
        a.out_dir = (d / sub).string();
        a.seed = 42;
        a.threads = threads;
        std::ostringstream out, err;
        REQUIRE(cmd_simulate(a, out, err) == kOk);
        std::ifstream in(d / sub / "dist_degree.csv");
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(run("a", 1) == run("b", 2));
    fs::remove_all(d);
}
