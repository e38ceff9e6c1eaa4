// qbell: sweep data for quasi-Bell entangled coherent states under thermal
// noise. Subcommands emit CSV (default) or JSON to --out or stdout:
//
//   pnd           photon-number distribution P(n1,n2) of one state
//   gram          analytic vs numeric Gram-matrix entries over a beta grid
//   entanglement  restricted FEF and entanglement-of-formation lower bound
//   error         minimax discrimination error for a state pair
//   state-dump    density matrix as JSON
//
// Presets bundle the parameter lists behind the paper-style figures
// (fig1a, fig1b, fig2, fig3a1, fig3a2, fig3b1..fig3b6).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qbell/discrimination.hpp"
#include "qbell/entanglement.hpp"
#include "qbell/numerics.hpp"
#include "qbell/quasi_bell.hpp"
#include "qbell/sweep.hpp"
#include "qbell/thermal_density.hpp"

namespace {

using namespace qbell;

struct CommonOpts {
    std::vector<double> betas;
    std::string beta_grid;  // lo:hi:n, inclusive
    std::vector<double> thetas;
    int trunc_n1 = -1;
    int trunc_n2 = -1;
    double tol = 1e-6;
    std::string format = "csv";
    std::string out;
    std::string preset;
};

std::vector<double> parse_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1) {
        throw CLI::ValidationError("--beta-grid", "expected lo:hi:n with n >= 1, got '" + text + "'");
    }
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) {
        grid[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return grid;
}

std::vector<double> resolve_betas(const CommonOpts& opts) {
    if (!opts.beta_grid.empty()) {
        if (!opts.betas.empty()) {
            throw CLI::ValidationError("--beta", "give either --beta or --beta-grid, not both");
        }
        return parse_grid(opts.beta_grid);
    }
    if (opts.betas.empty()) {
        throw CLI::ValidationError("--beta", "at least one beta value is required");
    }
    return opts.betas;
}

QuasiBellLabel parse_label(const std::string& text) {
    if (text == "phi1") return QuasiBellLabel::Phi1;
    if (text == "phi2") return QuasiBellLabel::Phi2;
    if (text == "phi3") return QuasiBellLabel::Phi3;
    if (text == "phi4") return QuasiBellLabel::Phi4;
    throw CLI::ValidationError("--label", "expected phi1..phi4, got '" + text + "'");
}

TruncationSpec resolve_truncation(const CommonOpts& opts, double beta, const ThermalParameter& th) {
    TruncationSpec spec = TruncationSpec::suggest(beta, th, opts.tol);
    if (opts.trunc_n1 >= 0) spec.n1_max = opts.trunc_n1;
    if (opts.trunc_n2 >= 0) spec.n2_max = opts.trunc_n2;
    return spec;
}

std::string join_doubles(const std::vector<double>& values) {
    std::string text;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) text += ' ';
        text += format_double(values[i]);
    }
    return text;
}

void emit(const SweepResult& result, const CommonOpts& opts) {
    std::ostringstream buf;
    if (opts.format == "json") {
        write_json(result, buf);
    } else {
        write_csv(result, buf);
    }
    if (opts.out.empty()) {
        std::cout << buf.str();
        return;
    }
    std::ofstream file(opts.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + opts.out);
    file << buf.str();
    if (!file.good()) throw std::runtime_error("write failed: " + opts.out);
}

void add_common_flags(CLI::App* cmd, CommonOpts* opts, bool with_pair_grid = true) {
    if (with_pair_grid) {
        cmd->add_option("--beta", opts->betas, "amplitude value(s)");
        cmd->add_option("--beta-grid", opts->beta_grid, "amplitude grid lo:hi:n (inclusive)");
    } else {
        cmd->add_option("--beta", opts->betas, "amplitude value");
    }
    cmd->add_option("--theta", opts->thetas, "thermal noise parameter value(s)");
    cmd->add_option("--trunc-n1", opts->trunc_n1, "override mode-1 Fock cutoff");
    cmd->add_option("--trunc-n2", opts->trunc_n2, "override mode-2 Fock cutoff");
    cmd->add_option("--tol", opts->tol, "trace-deficit tolerance (default 1e-6)")
        ->check(CLI::Range(1e-300, 0.999999));
    cmd->add_option("--format", opts->format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts->out, "output path (default stdout)");
}

// ---------------------------------------------------------------------------
// pnd: rows (n1, n2, p) over the full truncated grid.
// Columns frozen: n1,n2,p.

int run_pnd(const CommonOpts& opts, const std::string& label_text) {
    const QuasiBellLabel label = parse_label(label_text);
    if (opts.betas.size() != 1 || opts.thetas.size() != 1) {
        throw CLI::ValidationError("pnd", "needs exactly one --beta and one --theta");
    }
    const double beta = opts.betas[0];
    const ThermalParameter theta(opts.thetas[0]);
    const TruncationSpec trunc = resolve_truncation(opts, beta, theta);
    const DensityMatrix rho = build_thermal_state(label, beta, theta, trunc);
    const PhotonNumberDistribution dist = photon_number_distribution(rho);

    SweepResult result;
    result.header = {"n1", "n2", "p"};
    result.add_meta("command", "pnd");
    result.add_meta("label", label_name(label));
    result.add_meta("beta", beta);
    result.add_meta("theta", theta.theta());
    result.add_meta("n1_max", static_cast<double>(trunc.n1_max));
    result.add_meta("n2_max", static_cast<double>(trunc.n2_max));
    result.add_meta("trace_tolerance", trunc.trace_tolerance);
    result.add_meta("trace_deficit", rho.trace_deficit);
    for (int n1 = 0; n1 <= trunc.n1_max; ++n1) {
        for (int n2 = 0; n2 <= trunc.n2_max; ++n2) {
            result.rows.push_back({static_cast<long long>(n1), static_cast<long long>(n2),
                                   dist.probs(n1, n2)});
        }
    }
    emit(result, opts);
    return 0;
}

// ---------------------------------------------------------------------------
// gram: rows (beta, k13_analytic, k13_numeric, max_off_pattern_residual).

int run_gram(const CommonOpts& opts) {
    const std::vector<double> betas = resolve_betas(opts);
    SweepResult result;
    result.header = {"beta", "k13_analytic", "k13_numeric", "max_off_pattern_residual"};
    result.add_meta("command", "gram");
    result.add_meta("trace_tolerance", opts.tol);
    result.rows.resize(betas.size());
    std::vector<TruncationSpec> truncs(betas.size());

    parallel_for_index(static_cast<int>(betas.size()), [&](int i) {
        const double beta = betas[i];
        const ThermalParameter no_noise(0.0);
        const TruncationSpec trunc = resolve_truncation(opts, beta, no_noise);
        PureStateVector states[4];
        const QuasiBellLabel labels[4] = {QuasiBellLabel::Phi1, QuasiBellLabel::Phi2,
                                          QuasiBellLabel::Phi3, QuasiBellLabel::Phi4};
        for (int s = 0; s < 4; ++s) states[s] = build_pure_state(labels[s], beta, trunc);

        const Eigen::Matrix4cd analytic = gram_matrix(beta);
        Eigen::Matrix4cd numeric;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) numeric(a, b) = states[a].amps.dot(states[b].amps);
        }
        double residual = 0.0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                if ((a == 0 && b == 2) || (a == 2 && b == 0)) continue;
                residual = std::max(residual, std::abs(numeric(a, b) - analytic(a, b)));
            }
        }
        result.rows[i] = {beta, analytic(0, 2).real(), numeric(0, 2).real(), residual};
        truncs[i] = trunc;
    });
    for (size_t i = 0; i < betas.size(); ++i) {
        result.add_meta("trunc[beta=" + format_double(betas[i]) + "]",
                        std::to_string(truncs[i].n1_max) + "," + std::to_string(truncs[i].n2_max));
    }
    emit(result, opts);
    return 0;
}

// ---------------------------------------------------------------------------
// entanglement: closed-form scan, rows (beta, beta_sq, theta, alpha_star,
// fef, bound_bits).

int run_entanglement(const CommonOpts& opts) {
    const std::vector<double> betas = resolve_betas(opts);
    if (opts.thetas.empty()) {
        throw CLI::ValidationError("--theta", "at least one theta value is required");
    }
    SweepResult result = entanglement_threshold_scan(betas, opts.thetas);
    SweepResult out;
    out.header = result.header;
    out.rows = std::move(result.rows);
    out.add_meta("command", "entanglement");
    out.add_meta("betas", join_doubles(betas));
    out.add_meta("thetas", join_doubles(opts.thetas));
    out.add_meta("method", "closed-form (no Fock truncation)");
    out.add_meta("fef_family", "restricted to |Phi2(alpha)>, real alpha");
    for (auto& kv : result.metadata) out.metadata.push_back(std::move(kv));
    emit(out, opts);
    return 0;
}

// ---------------------------------------------------------------------------
// error: rows (pair, beta, mean_n, theta, pe, n1_max, n2_max, trace_deficit).

int run_error(const CommonOpts& opts, const std::string& pair_text) {
    const std::vector<double> betas = resolve_betas(opts);
    if (opts.thetas.empty()) {
        throw CLI::ValidationError("--theta", "at least one theta value is required");
    }
    std::vector<StatePair> pairs;
    if (pair_text == "phi24") {
        pairs = {StatePair::Phi2Phi4};
    } else if (pair_text == "phi13") {
        pairs = {StatePair::Phi1Phi3};
    } else if (pair_text == "both") {
        pairs = {StatePair::Phi2Phi4, StatePair::Phi1Phi3};
    } else {
        throw CLI::ValidationError("--pair", "expected phi24, phi13 or both, got '" + pair_text +
                                                 "'");
    }

    SweepResult out;
    out.add_meta("command", "error");
    out.add_meta("pair", pair_text);
    out.add_meta("betas", join_doubles(betas));
    out.add_meta("thetas", join_doubles(opts.thetas));
    out.add_meta("trace_tolerance", opts.tol);
    for (StatePair pair : pairs) {
        SweepResult sweep = error_sweep(pair, betas, opts.thetas, opts.tol);
        out.header = sweep.header;
        for (auto& row : sweep.rows) out.rows.push_back(std::move(row));
    }
    emit(out, opts);
    return 0;
}

// ---------------------------------------------------------------------------
// state-dump: the density matrix JSON layout defined by the library.

int run_state_dump(const CommonOpts& opts, const std::string& label_text) {
    const QuasiBellLabel label = parse_label(label_text);
    if (opts.betas.size() != 1 || opts.thetas.size() != 1) {
        throw CLI::ValidationError("state-dump", "needs exactly one --beta and one --theta");
    }
    const double beta = opts.betas[0];
    const ThermalParameter theta(opts.thetas[0]);
    const TruncationSpec trunc = resolve_truncation(opts, beta, theta);
    const DensityMatrix rho = build_thermal_state(label, beta, theta, trunc);
    if (opts.out.empty()) {
        save_density_matrix_json(rho, std::cout);
    } else {
        save_density_matrix_json(rho, opts.out);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Presets: the parameter lists behind the paper-style figures. Explicit
// flags still win; a preset only fills options the user left unset.

struct Preset {
    std::string command;
    std::string label = "phi2";
    std::string pair = "both";
    std::vector<double> betas;
    std::string beta_grid;
    std::vector<double> thetas;
};

const std::map<std::string, Preset>& preset_table() {
    static const std::map<std::string, Preset> table = {
        {"fig1a", {"pnd", "phi2", "", {2.0}, "", {0.0}}},
        {"fig1b", {"pnd", "phi2", "", {2.0}, "", {0.5}}},
        {"fig2", {"entanglement", "", "",
                  {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0}, "",
                  {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}}},
        {"fig3a1", {"error", "", "phi24", {}, "0.25:2.0:8",
                    {0.01, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9}}},
        {"fig3a2", {"error", "", "phi13", {}, "0.25:2.0:8",
                    {0.0, 0.01, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9}}},
        {"fig3b1", {"error", "", "both", {}, "0.25:2.0:8", {0.01}}},
        {"fig3b2", {"error", "", "both", {}, "0.25:2.0:8", {0.1}}},
        {"fig3b3", {"error", "", "both", {}, "0.25:2.0:8", {0.3}}},
        {"fig3b4", {"error", "", "both", {}, "0.25:2.0:8", {0.5}}},
        {"fig3b5", {"error", "", "both", {}, "0.25:2.0:8", {0.7}}},
        {"fig3b6", {"error", "", "both", {}, "0.25:2.0:8", {0.9}}},
    };
    return table;
}

void apply_preset(const std::string& name, const std::string& command, CLI::App* cmd,
                  CommonOpts* opts, std::string* label, std::string* pair) {
    const auto it = preset_table().find(name);
    if (it == preset_table().end()) {
        throw CLI::ValidationError("--preset", "unknown preset '" + name + "'");
    }
    const Preset& preset = it->second;
    if (preset.command != command) {
        throw CLI::ValidationError("--preset", "preset '" + name + "' belongs to the '" +
                                                   preset.command + "' command");
    }
    if (opts->betas.empty() && opts->beta_grid.empty()) {
        opts->betas = preset.betas;
        opts->beta_grid = preset.beta_grid;
    }
    if (opts->thetas.empty()) opts->thetas = preset.thetas;
    if (label && cmd->count("--label") == 0 && !preset.label.empty()) *label = preset.label;
    if (pair && cmd->count("--pair") == 0 && !preset.pair.empty()) *pair = preset.pair;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-Bell entangled coherent states under thermal noise: sweep data emitter"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string label = "phi2";
    std::string pair = "phi24";

    CLI::App* pnd = app.add_subcommand("pnd", "photon-number distribution P(n1,n2); "
                                              "columns n1,n2,p");
    pnd->add_option("--label", label, "state phi1..phi4 (default phi2)");
    pnd->add_option("--preset", opts.preset, "fig1a (theta=0) or fig1b (theta=0.5), beta=2");
    add_common_flags(pnd, &opts, false);

    CLI::App* gram = app.add_subcommand("gram", "Gram-matrix check; columns beta,k13_analytic,"
                                                "k13_numeric,max_off_pattern_residual");
    add_common_flags(gram, &opts);

    CLI::App* ent = app.add_subcommand("entanglement",
                                       "restricted FEF and EoF lower bound; columns "
                                       "beta,beta_sq,theta,alpha_star,fef,bound_bits");
    ent->add_option("--preset", opts.preset, "fig2");
    add_common_flags(ent, &opts);

    CLI::App* err = app.add_subcommand("error",
                                       "minimax discrimination error; columns pair,beta,mean_n,"
                                       "theta,pe,n1_max,n2_max,trace_deficit");
    err->add_option("--pair", pair, "phi24, phi13 or both (default phi24)");
    err->add_option("--preset", opts.preset, "fig3a1, fig3a2, fig3b1..fig3b6");
    add_common_flags(err, &opts);

    CLI::App* dump = app.add_subcommand("state-dump", "density matrix as JSON");
    dump->add_option("--label", label, "state phi1..phi4 (default phi2)");
    add_common_flags(dump, &opts, false);

    try {
        app.parse(argc, argv);
        if (pnd->parsed()) {
            if (!opts.preset.empty()) apply_preset(opts.preset, "pnd", pnd, &opts, &label, nullptr);
            return run_pnd(opts, label);
        }
        if (gram->parsed()) return run_gram(opts);
        if (ent->parsed()) {
            if (!opts.preset.empty())
                apply_preset(opts.preset, "entanglement", ent, &opts, nullptr, nullptr);
            return run_entanglement(opts);
        }
        if (err->parsed()) {
            if (!opts.preset.empty()) apply_preset(opts.preset, "error", err, &opts, nullptr, &pair);
            return run_error(opts, pair);
        }
        if (dump->parsed()) return run_state_dump(opts, label);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "qbell: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
