#include "cli_io.hpp"

#include "ckwork/errors.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace ckw::cli;

namespace {

struct Common {
    std::string config;
    KeyValues flags;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "flat key = value settings file");
    auto opt = [&](const std::string& flag, const std::string& key, const std::string& help) {
        app->add_option_function<std::string>(flag, [&c, key](const std::string& v) { c.flags[key] = v; }, help);
    };
    opt("--preset", "preset", "UO, OO, harmonic, drag or custom");
    opt("--omega-over-lambda", "omega_over_lambda", "omega/lambda");
    opt("--epsilon", "epsilon", "elastic fraction of the mean energy");
    opt("--epsilon-delta", "epsilon_delta", "elastic fraction of the fluctuation energy");
    opt("--theta", "theta", "fluctuation-to-mean energy ratio");
    opt("--E0", "E0", "reference mean energy");
    opt("--mu", "mu", "mixture parameter of the two-Gaussian state");
    opt("--grid", "grid", "start:end:count in omega*t");
    opt("--seed", "seed", "Monte Carlo seed");
    opt("--out", "out", "output directory");
    opt("--engines", "engines", "comma list: classical,quantum,alicki,proposed,liouville,mu_state");
    opt("--oracle", "oracle", "on/off");
    opt("--oracle-tolerance", "oracle_tolerance", "relative tolerance of the grid oracle");
}

RunConfig build(const Common& c, const KeyValues& defaults = {}) {
    std::vector<KeyValues> layers{defaults};
    if (!c.config.empty()) layers.push_back(read_config_file(c.config));
    layers.push_back(c.flags);
    return resolve(merge(layers));
}

void announce(const Artifact& a) {
    std::cout << a.csv_path << " (" << a.table.rows.size() << " rows)\n" << a.meta_path << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energetics of the Caldirola-Kanai damped oscillator"};
    app.require_subcommand(1);

    Common sim_c, fig_c, orc_c, swp_c;

    auto* sim = app.add_subcommand("simulate", "evaluate the selected engines on a time grid");
    add_common(sim, sim_c);

    auto* fig = app.add_subcommand("figure", "write the series behind one figure");
    std::string fig_id;
    fig->add_option("id", fig_id, "4.2 ... 4.9")->required();
    add_common(fig, fig_c);

    auto* orc = app.add_subcommand("oracle-check", "compare closed forms against the numerical oracles");
    add_common(orc, orc_c);
    OracleOptions oopt;
    bool no_cn = false, no_mc = false;
    orc->add_option("--mc-samples", oopt.mc_samples, "Monte Carlo sample count");
    orc->add_flag("--no-cn", no_cn, "skip the Crank-Nicolson propagation");
    orc->add_flag("--no-mc", no_mc, "skip the Monte Carlo sampler");
    orc->add_flag_function(
        "--k2-as-printed", [&](std::int64_t) { orc_c.flags["k2_as_printed"] = "on"; },
        "use the printed k2 prefactor in the <P^2> route");

    auto* swp = app.add_subcommand("sweep", "scan one parameter and report end-of-grid values");
    add_common(swp, swp_c);
    std::string sw_param, sw_range;
    swp->add_option("--param", sw_param, "omega_over_lambda, epsilon, epsilon_delta, theta or mu")->required();
    swp->add_option("--range", sw_range, "from:to:count")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            announce(run_simulate(build(sim_c)));
        } else if (*fig) {
            const auto cfg = build(fig_c, figure_defaults(fig_id));
            announce(run_figure(fig_id, cfg));
        } else if (*swp) {
            const auto cfg = build(swp_c);
            announce(run_sweep(cfg, parse_sweep(sw_param, sw_range)));
        } else if (*orc) {
            const auto cfg = build(orc_c);
            oopt.run_cn = !no_cn;
            oopt.run_mc = !no_mc;
            const auto rep = oracle_check(cfg, oopt);
            const std::string text = report_json(rep);
            std::cout << text;
            if (orc_c.flags.count("out")) {
                std::filesystem::create_directories(cfg.out);
                std::ofstream(std::filesystem::path(cfg.out) / ("oracle_" + to_string(cfg.preset) + ".json"),
                              std::ios::binary)
                    << text;
            }
            return rep.passed() ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ckw::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
