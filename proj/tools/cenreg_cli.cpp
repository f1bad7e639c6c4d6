#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

int default_threads() {
    if (const char* env = std::getenv("CENREG_THREADS")) {
        const int k = std::atoi(env);
        if (k > 0) return k;
    }
    return 1;
}

void add_estimator_options(CLI::App* cmd, cenreg::cli::EstimatorArgs& e) {
    cmd->add_option("--centrality,-c", e.centrality, "degree, diffusion, eigenvector, regularized-eigenvector")
        ->delimiter(',');
    cmd->add_option("--delta", e.delta, "diffusion decay");
    cmd->add_option("--T", e.T, "diffusion horizon");
    cmd->add_option("--delta-rule", e.delta_rule, "fixed, inverse-lambda1, inverse-sqrt-lambda1");
    cmd->add_option("--scaling", e.scaling, "sqrt-lambda1, sqrt-n or a positive number");
    cmd->add_option("--mode", e.mode, "eigenvector inference: case-a, case-b, sqrt-lambda1");
    cmd->add_option("--M", e.M, "plug-in regularization bound on the graphon integral");
    cmd->add_option("--p-n", e.p_n, "oracle regularization sparsity");
    cmd->add_option("--seed", e.seed, "power iteration start seed");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace cenreg::cli;
    CLI::App app{"Regression on network centrality under sparsity and measurement error"};
    app.require_subcommand(1);

    SimulateArgs sim;
    sim.threads = default_threads();
    auto* s = app.add_subcommand("simulate", "run a Monte Carlo experiment from a JSON config");
    s->add_option("config", sim.config, "experiment config (JSON)")->required();
    s->add_option("--out,-o", sim.out_dir, "output directory");
    s->add_option("--threads,-j", sim.threads, "worker threads (default $CENREG_THREADS or 1)");
    s->add_option("--seed", sim.seed, "override master_seed");
    s->add_option("--dump-graph", sim.dump_graph, "write replication 0 of each cell to this directory");
    s->add_option("--format", sim.format, "stdout summary format")->check(CLI::IsMember({"csv", "json"}));

    RegressArgs reg;
    auto* r = app.add_subcommand("regress", "fit centrality regressions on an edge list");
    r->add_option("--edges", reg.edges, "edge list CSV (i,j)")->required();
    r->add_option("--outcomes", reg.outcomes, "outcomes CSV (id,y)")->required();
    add_estimator_options(r, reg.est);
    r->add_option("--beta0", reg.beta0, "null values")->delimiter(',');
    r->add_option("--alpha", reg.alpha, "levels")->delimiter(',');
    r->add_option("--sided", reg.sided)->check(CLI::IsMember({"two", "left", "right"}));
    r->add_option("--c0", reg.c0, "interval or zero")->check(CLI::IsMember({"interval", "zero"}));
    r->add_flag("--demean", reg.demean, "subtract the mean outcome first (outside the theory)");
    r->add_option("--out,-o", reg.out, "output file (default stdout)");
    r->add_option("--format", reg.format)->check(CLI::IsMember({"csv", "json"}));

    CentralityArgs cen;
    auto* c = app.add_subcommand("centrality", "compute centralities of an edge list");
    c->add_option("--edges", cen.edges, "edge list CSV (i,j)")->required();
    c->add_option("--n", cen.n, "node count, for trailing isolated nodes");
    add_estimator_options(c, cen.est);
    c->add_option("--out,-o", cen.out, "output file (default stdout)");
    c->add_option("--format", cen.format)->check(CLI::IsMember({"csv", "json"}));

    DeriveArgs der;
    auto* d = app.add_subcommand("derive-coefficients", "derive walk-count coefficient tables");
    d->alias("derive");
    d->add_option("what_positional", der.what, "g or b")->check(CLI::IsMember({"g", "b"}));
    d->add_option("--what", der.what, "g or b")->check(CLI::IsMember({"g", "b"}));
    d->add_option("--max", der.max, "largest t (g) or T (b)");
    d->add_option("--format", der.format)->check(CLI::IsMember({"csv", "json"}));
    d->add_flag("--verify", der.verify, "compare with the embedded reference tables");
    d->add_flag("--extended", der.extended, "raise the b derivation cap");
    d->add_flag("--literal", der.literal, "expand b without the reference-table exclusion");
    d->add_option("--out,-o", der.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    if (*s) return cmd_simulate(sim, std::cout, std::cerr);
    if (*r) return cmd_regress(reg, std::cout, std::cerr);
    if (*c) return cmd_centrality(cen, std::cout, std::cerr);
    if (*d) return cmd_derive(der, std::cout, std::cerr);
    return kUsage;
}
