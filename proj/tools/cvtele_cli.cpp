// cvtele: command-line front end for the lossy-EPR teleportation and Bell
// calculations. Exit status 0 on success, 2 on invalid arguments, 1 when an
// `oracle` run disagrees with the analytic fidelity.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cvtele/parallel.hpp"
#include "cvtele/report.hpp"

namespace {

using namespace cvtele;

constexpr int kExitBadArgs = 2;

struct ParamOpts {
    EprParams params;
};

void add_param_options(CLI::App* cmd, ParamOpts& o) {
    cmd->add_option("--r", o.params.r, "squeezing parameter (>= 0)")->required();
    cmd->add_option("--eta", o.params.eta, "transmission in [0, 1]")->required();
    cmd->add_option("--nbar", o.params.nbar, "thermal occupancy of loss ancillas (>= 0)");
}

enum class Format { csv, jsonl };

void emit(const Table& table, Format format, const std::string& out_path) {
    const std::string text = format == Format::csv ? to_csv(table) : to_json_lines(table);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DomainError("config", "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct FigOpts {
    std::string config;
    std::string out;
    std::string format = "csv";
    unsigned workers = 0;
    std::vector<double> eta;
    double nbar = 0.0;
    double tol = 0.0;
};

void add_fig_options(CLI::App* cmd, FigOpts& o) {
    cmd->add_option("--config", o.config, "JSON sweep document");
    cmd->add_option("--out", o.out, "output file (stdout when omitted)");
    cmd->add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--workers", o.workers, "worker threads (overrides CVTELE_WORKERS)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--eta", o.eta, "transmission values")->delimiter(',');
    cmd->add_option("--nbar", o.nbar, "thermal occupancy");
    cmd->add_option("--tol", o.tol, "J tolerance for the B maximizer")->check(CLI::PositiveNumber);
}

SweepSpec resolve_spec(SweepSpec spec, const FigOpts& o, const CLI::App* cmd) {
    spec.workers = workers_from_env();
    if (!o.config.empty())
        spec = load_sweep_config(read_file(o.config), spec);
    if (!o.eta.empty())
        spec.eta_list = o.eta;
    if (cmd->count("--nbar"))
        spec.nbar = o.nbar;
    if (cmd->count("--tol"))
        spec.tol = o.tol;
    if (o.workers > 0)
        spec.workers = o.workers;
    return spec;
}

Format format_of(const std::string& name) { return name == "jsonl" ? Format::jsonl : Format::csv; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation fidelity, separability criteria and CHSH quantities for lossy EPR beams"};
    app.require_subcommand(1);

    ParamOpts fid_opts;
    bool fid_json = false;
    auto* fid = app.add_subcommand("fidelity", "coherent-state teleportation fidelity");
    add_param_options(fid, fid_opts);
    fid->add_flag("--json", fid_json, "emit a JSON object instead of CSV");

    ParamOpts crit_opts;
    double crit_mu = 0.0;
    bool crit_json = false;
    auto* crit = app.add_subcommand("criteria", "Duan-Simon and Heisenberg-type criteria");
    add_param_options(crit, crit_opts);
    crit->add_option("--mu", crit_mu, "estimator gain (defaults to the optimal gain)");
    crit->add_flag("--json", crit_json, "emit a flat JSON object instead of CSV");

    ParamOpts scan_opts;
    double j_min = 0.0;
    double j_max = 1.0;
    int points = 101;
    auto* scan = app.add_subcommand("bell-scan", "B(J) over a uniform J grid");
    add_param_options(scan, scan_opts);
    scan->add_option("--j-min", j_min)->required()->check(CLI::NonNegativeNumber);
    scan->add_option("--j-max", j_max)->required()->check(CLI::NonNegativeNumber);
    scan->add_option("--points", points)->required()->check(CLI::PositiveNumber);

    ParamOpts bmax_opts;
    double bmax_tol = kDefaultBellTol;
    bool bmax_json = false;
    auto* bmax = app.add_subcommand("bell-max", "maximize B(J) over J");
    add_param_options(bmax, bmax_opts);
    bmax->add_option("--tol", bmax_tol, "tolerance in J")->check(CLI::PositiveNumber);
    bmax->add_flag("--json", bmax_json);

    double visibility = 1.0;
    double theta = 0.0;
    bool chsh_json = false;
    auto* chsh = app.add_subcommand("chsh", "optimized scaled-correlation CHSH value");
    chsh->add_option("--visibility", visibility, "fringe visibility in [0, 1]")->required();
    chsh->add_option("--theta", theta, "phase offset (radians)");
    chsh->add_flag("--json", chsh_json);

    ParamOpts oracle_opts;
    OracleConfig oracle_cfg;
    unsigned oracle_workers = 0;
    bool oracle_json = false;
    auto* oracle = app.add_subcommand("oracle", "Monte-Carlo fidelity check against the analytic value");
    add_param_options(oracle, oracle_opts);
    oracle->add_option("--samples", oracle_cfg.samples)->required()->check(CLI::Range(2ull, ~0ull));
    oracle->add_option("--seed", oracle_cfg.seed)->required();
    oracle->add_option("--workers", oracle_workers)->check(CLI::PositiveNumber);
    oracle->add_flag("--json", oracle_json);

    FigOpts fig_opts[5];
    const char* fig_names[5] = {"fig1", "fig2", "fig3", "fig4", "sweep"};
    const char* fig_help[5] = {
        "fidelity versus r per eta",
        "B(J) curves for a few r per eta",
        "maximized B versus r per eta",
        "maximized B versus fidelity per eta",
        "generic grid sweep (columns chosen by the config 'outputs' list)",
    };
    CLI::App* figs[5];
    for (int i = 0; i < 5; ++i) {
        figs[i] = app.add_subcommand(fig_names[i], fig_help[i]);
        add_fig_options(figs[i], fig_opts[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (*fid) {
            const FidelityResult f = fidelity(make_state(fid_opts.params));
            emit(fidelity_table(fid_opts.params, f), fid_json ? Format::jsonl : Format::csv, "");
        } else if (*crit) {
            std::optional<double> mu;
            if (crit->count("--mu"))
                mu = crit_mu;
            const CriteriaReport report = classify(crit_opts.params, mu);
            if (crit_json)
                emit(criteria_table_extended({report}), Format::jsonl, "");
            else
                emit(criteria_table({report}), Format::csv, "");
        } else if (*scan) {
            if (j_max < j_min)
                throw DomainError("j-max", "must be >= j-min");
            const GaussianEprState state = make_state(scan_opts.params);
            Table t{{"j", "b"}, {}};
            for (double j : UniformGrid{j_min, j_max, points}.values())
                t.rows.push_back({j, b_of_j(state, j)});
            emit(t, Format::csv, "");
        } else if (*bmax) {
            const BellResult b = maximize_b(make_state(bmax_opts.params), bmax_tol);
            emit(bell_result_table(bmax_opts.params, b), bmax_json ? Format::jsonl : Format::csv, "");
        } else if (*chsh) {
            emit(chsh_table(optimize_scaled_chsh(visibility, theta)),
                 chsh_json ? Format::jsonl : Format::csv, "");
        } else if (*oracle) {
            const unsigned workers = oracle_workers > 0 ? oracle_workers : workers_from_env();
            const GaussianEprState state = make_state(oracle_opts.params);
            const OracleEstimate est = mc_fidelity(state, oracle_cfg, workers);
            const double analytic = fidelity(state).fidelity;
            emit(oracle_table(oracle_opts.params, est, analytic),
                 oracle_json ? Format::jsonl : Format::csv, "");
            return est.agrees_with(analytic) ? 0 : 1;
        } else {
            for (int i = 0; i < 5; ++i) {
                if (!*figs[i])
                    continue;
                const FigOpts& o = fig_opts[i];
                const Format format = format_of(o.format);
                switch (i) {
                case 0:
                    emit(to_table(fig1(resolve_spec(default_fig1_spec(), o, figs[i]))), format, o.out);
                    break;
                case 1:
                    emit(to_table(fig2(resolve_spec(default_fig2_spec(), o, figs[i]))), format, o.out);
                    break;
                case 2:
                    emit(to_table(fig3(resolve_spec(default_fig3_spec(), o, figs[i]))), format, o.out);
                    break;
                case 3:
                    emit(to_table(fig4(resolve_spec(default_fig4_spec(), o, figs[i]))), format, o.out);
                    break;
                default:
                    emit(sweep(resolve_spec(default_fig1_spec(), o, figs[i])), format, o.out);
                    break;
                }
            }
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
