#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace anomalab::cli;

namespace {

void target_options(CLI::App* app, RunConfig& c) {
    app->add_option("--target", c.target, "kp1, kp2, kp3 or quintic");
    app->add_option("--weights", c.weights, "comma-separated torus weights, e.g. 1,2,5 or 1/2,3");
    app->add_flag("--solve-constraint", c.solve_constraint, "solve the specialization constraint for the remaining weights");
    app->add_option("--fix", c.fix, "weights held fixed by --solve-constraint");
    app->add_option("--solution", c.solution, "index of the constraint solution to use");
    app->add_flag("--roots-of-unity", c.roots_of_unity, "weights at roots of unity");
    app->add_option("--order,-N", c.order, "q-order of every series");
    app->add_option("--ztrunc,-K", c.ztrunc, "number of asymptotic coefficients R_0..R_{K-1}");
    app->add_option("--format", c.format, "json, csv or pretty");
    app->add_option("--out,-o", c.out, "write output to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant higher-genus invariants of local projective spaces"};
    app.require_subcommand(1);
    RunConfig c;

    auto* compute = app.add_subcommand("compute", "compute series, asymptotics and graph sums");
    target_options(compute, c);
    compute->add_option("--series", c.series, "series names (L, C1, A2, X, ..., L0..Ln)")->delimiter(',');
    compute->add_flag("--asymptotics", c.asymptotics, "asymptotic expansion at every fixed point");
    compute->add_flag("--graph-sum", c.graph_sum, "stable-graph sum at --genus");
    compute->add_option("--genus", c.genus);
    compute->add_option("--insert", c.insertions, "insertions: 1 for H, 2 for H^2")->delimiter(',');
    compute->add_flag("--ledger", c.ledger, "per-graph contribution ledger");
    compute->add_flag("--lift", c.lift, "express the graph sum as a polynomial in the generators");
    compute->add_option("--cache", c.cache, "cache directory (ANOMALAB_CACHE overrides)");

    auto* verify = app.add_subcommand("verify", "run check suites; exit 3 on the first failure");
    target_options(verify, c);
    verify->add_option("suites", c.suites, "relations, pf, wdvv, admissible, correlators, hae");
    verify->add_option("--suite", c.suites)->delimiter(',');
    verify->add_option("--genus", c.genus);

    auto* weights = app.add_subcommand("weights", "resolve torus weights and report constraint residuals");
    target_options(weights, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::ostringstream buf;
    try {
        if (*compute) cmd_compute(c, buf);
        else if (*verify) cmd_verify(c, buf);
        else cmd_weights(c, buf);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantFailure& e) {
        std::cout << buf.str();
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 3;
    }
    if (c.out.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(c.out);
        if (!f) {
            std::cerr << "error: cannot write " << c.out << "\n";
            return 2;
        }
        f << buf.str();
    }
    return 0;
}
