#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "itexp/cli.hpp"

using namespace itexp;

int main(int argc, char** argv) {
    CLI::App app{"Expansions of iterated stochastic integrals"};
    app.require_subcommand(1);
    RunConfig config;
    std::string basis;
    std::string out_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--basis", basis, "legendre or trig")->check(CLI::IsMember({"legendre", "trig"}));
        cmd->add_option("--q", config.qs, "truncation list")->delimiter(',');
        cmd->add_option("--seed", config.seed, "64-bit seed");
        cmd->add_option("--trials", config.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        cmd->add_option("--grid", config.grid_N, "grid steps per path")->check(CLI::PositiveNumber);
        cmd->add_option("--t0", config.t0, "interval start");
        cmd->add_option("--t1", config.t1, "interval end");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--threads", config.threads, "worker threads; 1 is deterministic, 0 uses all cores");
    };
    struct Entry {
        const char* name;
        Command command;
        const char* help;
    };
    const Entry entries[] = {
        {"tables", Command::tables, "reproduce the five error tables"},
        {"coeffs", Command::coeffs, "dump a coefficient table"},
        {"compare", Command::compare, "smallest truncation per basis meeting a target error"},
        {"mc-verify", Command::mc_verify, "Monte Carlo check of the closed-form errors"},
        {"identities", Command::identities, "double-sum and trace identity residuals"},
    };
    for (const Entry& e : entries) {
        CLI::App* cmd = app.add_subcommand(e.name, e.help);
        add_common(cmd);
        if (e.command == Command::coeffs || e.command == Command::compare) {
            cmd->add_option("--kernel", config.kernel, "catalog name or weight exponents such as 1,0");
        }
        if (e.command == Command::compare) {
            cmd->add_option("--target", config.target, "target error in units of (T - t)^(k + 2 sum l)")
                ->check(CLI::PositiveNumber);
        }
        const Command c = e.command;
        cmd->callback([&config, c] { config.command = c; });
    }
    CLI11_PARSE(app, argc, argv);

    try {
        if (!basis.empty()) {
            config.basis = parse_basis(basis);
        }
        if (out_path.empty()) {
            run_command(config, std::cout);
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                std::cerr << "cannot open " << out_path << '\n';
                return 2;
            }
            run_command(config, file);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
