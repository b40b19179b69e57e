#pragma once

// Command-line front end: shift, snr, chi, qfi, sweep, selftest.
//
// Exit codes: 0 success, 1 selftest failure, 2 usage/config error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "weaklab/core.hpp"
#include "weaklab/metrics.hpp"
#include "weaklab/pointers.hpp"
#include "weaklab/selftest.hpp"
#include "weaklab/sweeps.hpp"

namespace weaklab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelftestFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

inline int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::TruncationInsufficient:
    case ErrorCode::DerivativeMismatch:
    case ErrorCode::DegenerateNoise:
    case ErrorCode::ChiUndefined:
    case ErrorCode::BoundUndefined: return kExitNumerical;
    default: return kExitConfig;
    }
}

/// Flag values as strings; only flags given on the command line end up in the map.
struct FlagBag {
    std::map<std::string, std::string> values;
    bool as_printed = false;
    bool first_order = false;

    ConfigMap to_config() const {
        ConfigMap out(values.begin(), values.end());
        if (as_printed) out["as-printed"] = "true";
        if (first_order) out["first-order"] = "true";
        return out;
    }
};

inline void add_physical_flags(CLI::App* app, FlagBag& bag) {
    static const std::vector<std::pair<std::string, std::string>> flags{
        {"theta", "preselection polar angle"},
        {"phi", "preselection relative phase"},
        {"s", "measurement strength g/sigma"},
        {"g", "coupling strength"},
        {"sigma", "pointer width"},
        {"n-runs", "number of repetitions N"},
        {"pointer", "coherent | squeezed | cat"},
        {"r", "coherent/cat amplitude modulus"},
        {"phi-c", "coherent/cat amplitude phase"},
        {"eta", "squeeze magnitude"},
        {"delta", "squeeze phase"},
    };
    for (const auto& [name, help] : flags) app->add_option("--" + name, bag.values[name], help);
    app->add_flag("--as-printed", bag.as_printed, "squeezed <P> with 1 in place of cosh(2 eta)");
}

inline std::string fmt(double v) { return format_real(v); }

inline void print_kv(std::ostream& out, const std::string& key, double v) { out << key << " = " << fmt(v) << "\n"; }

/// CLI11 assigns an empty string to every declared option; drop them.
inline ConfigMap given(const FlagBag& bag, const CLI::App* app) {
    ConfigMap out;
    for (const auto& [k, v] : bag.to_config())
        if (app->get_option_no_throw("--" + k) == nullptr || app->count("--" + k) > 0) out[k] = v;
    return out;
}

inline int run_shift(const PhysicalParams& p, std::ostream& out) {
    const auto sel = p.selection();
    const auto cfg = p.coupling();
    const auto ptr = p.pointer();
    const auto fin = final_means(sel, ptr, cfg, p.momentum_form());
    const auto shift = mean_shift(sel, ptr, cfg, p.momentum_form());
    print_kv(out, "mean_x", fin.x);
    print_kv(out, "mean_x_over_sigma", fin.x_in_sigma);
    print_kv(out, "mean_p", fin.p);
    print_kv(out, "shift_x", shift.x);
    print_kv(out, "shift_p", shift.p);
    print_kv(out, "norm_coefficient", final_state_norm(sel, ptr, cfg));
    return kExitOk;
}

inline int run_snr(const PhysicalParams& p, std::ostream& out) {
    const auto r = snr_report(p.selection(), p.pointer(), p.coupling());
    print_kv(out, "snr_post", r.snr_post);
    print_kv(out, "snr_non", r.snr_non);
    print_kv(out, "p_s", r.p_s);
    print_kv(out, "signal_post", r.signal_post);
    print_kv(out, "signal_non", r.signal_non);
    print_kv(out, "noise_post", r.noise_post);
    print_kv(out, "noise_non", r.noise_non);
    if (r.chi_defined()) {
        print_kv(out, "chi", r.chi);
        print_kv(out, "chi_prime", r.chi_prime);
    } else {
        out << "chi = undefined (unselected signal is zero)\n";
    }
    return kExitOk;
}

inline int run_chi(const PhysicalParams& p, std::ostream& out) {
    const auto r = snr_report(p.selection(), p.pointer(), p.coupling());
    print_kv(out, "chi", chi_of(r));
    print_kv(out, "chi_prime", r.chi_prime);
    return kExitOk;
}

inline int run_qfi(const PhysicalParams& p, std::ostream& out) {
    const auto sel = p.selection();
    const double s = p.s;
    const auto t = fock::with_truncation(p.pointer(), s, [&](const fock::FockVector& v) {
        return fock::qfi_postselected_detailed(v, sel, s, p.evolution());
    });
    const double f = t.value.analytic;
    const double fp = postselection_probability(sel) * f;
    print_kv(out, "qfi", f);
    print_kv(out, "qfi_finite_difference", t.value.numeric);
    print_kv(out, "fisher_post", fp);
    print_kv(out, "cramer_rao_post", cramer_rao_bound(fp, p.n_runs));
    out << "truncation_dim = " << t.dim << "\n";
    return kExitOk;
}

struct SweepFlags {
    std::string config;
    std::string figure;
    std::string quantity;
    std::string axis1;
    std::string axis2;
    std::string out;
    unsigned threads = 0;
};

inline SweepJob build_sweep_job(const SweepFlags& f, const ConfigMap& flags) {
    ConfigMap cfg;
    if (!f.figure.empty()) {
        const auto preset = figure_job(f.figure);
        if (!preset) {
            std::string list;
            for (const auto& n : figure_names()) list += (list.empty() ? "" : ", ") + n;
            fail(ErrorCode::ConfigInvalid, "unknown figure '" + f.figure + "' (" + list + ")");
        }
        cfg = parse_json_config(to_json(*preset).dump(), "figure " + f.figure);
    }
    if (!f.config.empty())
        for (const auto& [k, v] : load_config_file(f.config)) cfg[k] = v;
    for (const auto& [k, v] : flags) cfg[k] = v;
    // g is derived from s and sigma in presets; drop it when either is overridden.
    if ((flags.count("s") || flags.count("sigma")) && !flags.count("g")) cfg.erase("g");
    if (flags.count("g") && !flags.count("s")) cfg.erase("s");
    if (!f.quantity.empty()) cfg["quantity"] = f.quantity;
    if (!f.axis1.empty()) cfg["axis1"] = f.axis1;
    if (!f.axis2.empty()) cfg["axis2"] = f.axis2;
    if (!f.out.empty()) cfg["out"] = f.out;
    return job_from_config(cfg);
}

inline int run_sweep(const SweepJob& job, unsigned threads, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const auto grid = run_job(job, threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const unsigned used = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    const auto prov = summarize(grid, wall, used);
    emit_csv(grid, job.output + ".csv");
    emit_meta(job, prov, job.output + ".meta.json");
    out << "wrote " << job.output << ".csv (" << prov.cells_ok << " ok, " << prov.cells_failed
        << " failed) and " << job.output << ".meta.json\n";
    return kExitOk;
}

inline int run_selftest(std::ostream& out) {
    const auto results = selftest::run_all();
    selftest::print_table(out, results);
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    out << (failed == 0 ? "selftest: all " + std::to_string(results.size()) + " checks passed\n"
                        : "selftest: " + std::to_string(failed) + " of " + std::to_string(results.size()) +
                              " checks failed\n");
    return failed == 0 ? kExitOk : kExitSelftestFailed;
}

inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"weaklab: weak-measurement pointer statistics", "weaklab"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1, 1);

    FlagBag shift_bag, snr_bag, chi_bag, qfi_bag, sweep_bag;
    auto* shift = app.add_subcommand("shift", "closed-form final pointer means and shifts");
    auto* snr = app.add_subcommand("snr", "postselected and unselected SNR");
    auto* chi = app.add_subcommand("chi", "SNR ratio chi and chi'");
    auto* qfi = app.add_subcommand("qfi", "postselected quantum Fisher information");
    auto* sweep = app.add_subcommand("sweep", "evaluate a quantity on a 2D grid");
    auto* self = app.add_subcommand("selftest", "run the invariant suite");
    add_physical_flags(shift, shift_bag);
    add_physical_flags(snr, snr_bag);
    add_physical_flags(chi, chi_bag);
    add_physical_flags(qfi, qfi_bag);
    add_physical_flags(sweep, sweep_bag);
    qfi->add_flag("--first-order", qfi_bag.first_order, "first-order evolution exp(-i s A P)");
    sweep->add_flag("--first-order", sweep_bag.first_order, "first-order evolution for qfi/fisher_post");

    SweepFlags sf;
    sweep->add_option("--config", sf.config, "key = value or JSON config file");
    sweep->add_option("--figure", sf.figure, "named preset (fig1, fig2, fig3, snr-*, qfi-*)");
    sweep->add_option("--quantity", sf.quantity, "shift_x, shift_p, snr_post, snr_non, chi, chi_prime, qfi, fisher_post");
    sweep->add_option("--axis1", sf.axis1, "name:min:max:steps");
    sweep->add_option("--axis2", sf.axis2, "name:min:max:steps");
    sweep->add_option("--out", sf.out, "output path stem");
    sweep->add_option("--threads", sf.threads, "worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        if (self->parsed()) return run_selftest(out);
        if (sweep->parsed()) return run_sweep(build_sweep_job(sf, given(sweep_bag, sweep)), sf.threads, out);
        if (shift->parsed()) return run_shift(params_from_config(given(shift_bag, shift)), out);
        if (snr->parsed()) return run_snr(params_from_config(given(snr_bag, snr)), out);
        if (chi->parsed()) return run_chi(params_from_config(given(chi_bag, chi)), out);
        if (qfi->parsed()) return run_qfi(params_from_config(given(qfi_bag, qfi)), out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    err << app.help();
    return kExitConfig;
}

}  // namespace weaklab::cli
