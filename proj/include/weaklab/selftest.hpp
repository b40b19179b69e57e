#pragma once

// Invariant suite behind `weaklab selftest`. Each check reports the worst
// deviation it saw next to the tolerance it was held to.

#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "weaklab/core.hpp"
#include "weaklab/fock_oracle.hpp"
#include "weaklab/metrics.hpp"
#include "weaklab/pointers.hpp"
#include "weaklab/selection.hpp"
#include "weaklab/sweeps.hpp"

namespace weaklab::selftest {

struct CheckResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Outcome {
    bool passed;
    std::string detail;
};

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline Outcome within(double worst, double tol) { return {worst <= tol, "worst " + sci(worst) + " <= " + sci(tol)}; }

inline std::vector<PointerSpec> grid_pointers(const std::vector<double>& magnitudes,
                                              const std::vector<double>& angles) {
    std::vector<PointerSpec> out;
    for (double m : magnitudes)
        for (double a : angles) {
            out.emplace_back(Coherent(m, a));
            out.emplace_back(SqueezedVacuum(m, a));
            out.emplace_back(EvenCat(m, a));
        }
    return out;
}

// ---------------------------------------------------------------------------
// selection

inline Outcome check_weak_value_modulus() {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 20; ++j) {
            const double theta = 0.98 * kPi * i / 49.0;
            const SelectionPair sel(theta, kTwoPi * j / 20.0);
            const Complex w = weak_value(sel);
            const double t = std::tan(0.5 * sel.theta());
            worst = std::max(worst, std::abs(std::abs(w) - t) / std::max(1.0, t));
            if (t > 0.0) worst = std::max(worst, std::abs(w / std::abs(w) - std::polar(1.0, sel.phi())));
        }
    return within(worst, 1e-14);
}

inline Outcome check_general_weak_value() {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const SelectionPair sel(0.95 * kPi * i / 19.0, kTwoPi * j / 20.0);
            const Complex general = weak_value_general(sel.preselected_state(), sel.postselected_state(), kSigmaX);
            worst = std::max(worst, std::abs(general - weak_value(sel)));
        }
    return within(worst, 1e-13);
}

inline Outcome check_probability_complement() {
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double theta = kPi * i / 100.0;
        worst = std::max(worst, std::abs(postselection_probability(SelectionPair(theta, 0.0)) +
                                         postselection_probability(SelectionPair(kPi - theta, 0.0)) - 1.0));
    }
    return within(worst, 1e-15);
}

// ---------------------------------------------------------------------------
// pointers

inline Outcome check_gaussian_limit() {
    double worst = 0.0;
    std::vector<double> strengths{1e-5, 0.1, 0.5, 1.0, 2.0};
    for (int k = 0; k < 10; ++k) strengths.push_back(2.0 * k / 9.0);
    for (double s : strengths)
        for (double theta : {kPi / 6, kPi / 2, 7 * kPi / 9})
            for (double phi : {0.0, kPi / 4, kPi / 2}) {
                const SelectionPair sel(theta, phi);
                const auto cfg = CouplingConfig::from_strength(s, 0.7);
                const double x = gaussian_limit_mean_x(sel, cfg);
                const double p = gaussian_limit_mean_p(sel, cfg);
                for (const PointerSpec& ptr :
                     {PointerSpec{Coherent(0.0, 1.1)}, PointerSpec{SqueezedVacuum(0.0, 0.4)}, PointerSpec{EvenCat(0.0, 2.0)}}) {
                    const auto m = final_means(sel, ptr, cfg);
                    worst = std::max({worst, std::abs(m.x - x), std::abs(m.p - p)});
                }
            }
    return within(worst, 1e-12);
}

inline Outcome check_assembled_norms() {
    double worst = 0.0;
    for (const auto& ptr : grid_pointers({0.0, 0.5, 1.0}, {0.0, kPi / 4, 3 * kPi / 4}))
        for (double theta : {kPi / 6, 7 * kPi / 9})
            for (double s : {1e-5, 0.3, 1.5}) {
                const SelectionPair sel(theta, kPi / 4);
                const auto cfg = CouplingConfig::from_strength(s);
                const auto t = fock::with_truncation(ptr, s, [&](const fock::FockVector& v) {
                    return fock::assembled_final_state(sel, ptr, cfg, v.dim()).norm_sq();
                });
                worst = std::max(worst, std::abs(t.value - 1.0));
            }
    return within(worst, 1e-12);
}

inline Outcome check_closed_forms_against_oracle() {
    double worst = 0.0;
    for (const auto& ptr : grid_pointers({0.0, 0.5, 1.0}, {0.0, kPi / 4, kPi / 2}))
        for (double theta : {kPi / 6, 7 * kPi / 9})
            for (double s : {1e-5, 0.5, 2.0}) {
                const SelectionPair sel(theta, kPi / 4);
                const auto cfg = CouplingConfig::from_strength(s);
                const auto closed = final_means(sel, ptr, cfg);
                const auto oracle = fock::with_truncation(ptr, s, [&](const fock::FockVector& v) {
                    return fock::moments(fock::evolve_and_postselect(v, sel, s).postselected_state, 1.0);
                });
                worst = std::max({worst, std::abs(closed.x - oracle.value.mean_x),
                                  std::abs(closed.p - oracle.value.mean_p)});
            }
    return within(worst, 1e-8);
}

// ---------------------------------------------------------------------------
// fock_oracle

inline Outcome check_postselection_norm_consistency() {
    double worst = 0.0;
    for (const auto& ptr : grid_pointers({0.0, 1.0, 2.0}, {0.0, kPi / 3}))
        for (double theta : {kPi / 6, kPi / 2, 7 * kPi / 9})
            for (double s : {1e-5, 0.5, 2.0}) {
                const SelectionPair sel(theta, kPi / 4);
                const auto cfg = CouplingConfig::from_strength(s);
                const double coef = final_state_norm(sel, ptr, cfg);
                const auto t = fock::with_truncation(ptr, s, [&](const fock::FockVector& v) {
                    return fock::evolve_and_postselect(v, sel, s).postselection_prob_exact;
                });
                worst = std::max(worst, std::abs(t.value * coef * coef - postselection_probability(sel)));
            }
    return within(worst, 1e-10);
}

inline Outcome check_commutator() {
    const std::size_t d = 48;
    const double sigma = 0.8;
    const auto x = fock::position_matrix(d, sigma);
    const auto p = fock::momentum_matrix(d, sigma);
    const Eigen::MatrixXcd comm = x * p - p * x;
    const Eigen::MatrixXcd block = comm.topLeftCorner(d - 2, d - 2);
    const Eigen::MatrixXcd target = Complex{0.0, 1.0} * Eigen::MatrixXcd::Identity(d - 2, d - 2);
    return within((block - target).cwiseAbs().maxCoeff(), 1e-12);
}

inline Outcome check_parity() {
    std::size_t nonzero = 0;
    for (double m : {0.3, 1.0, 2.0})
        for (double a : {0.0, 0.9, kPi / 4, 2.5}) {
            const auto sq = fock::with_truncation(SqueezedVacuum(m, a), 0.0, [](const fock::FockVector& v) { return v; });
            const auto cat = fock::with_truncation(EvenCat(m, a), 0.0, [](const fock::FockVector& v) { return v; });
            for (const auto* v : {&sq.value, &cat.value})
                for (std::size_t n = 1; n < v->dim(); n += 2)
                    if (v->amps[n].real() != 0.0 || v->amps[n].imag() != 0.0) ++nonzero;
        }
    return {nonzero == 0, std::to_string(nonzero) + " odd amplitudes not bitwise zero"};
}

inline Outcome check_truncation_doubling() {
    double worst = 0.0;
    for (const auto& ptr : grid_pointers({0.0, 1.0, 2.0}, {0.0, kPi / 4}))
        for (double s : {1e-5, 1.0}) {
            const SelectionPair sel(7 * kPi / 9, kPi / 4);
            auto post = [&](const fock::FockVector& v) {
                return fock::moments(fock::evolve_and_postselect(v, sel, s).postselected_state, 1.0);
            };
            const auto base = fock::with_truncation(ptr, s, post);
            const auto doubled = post(fock::pointer_vector(ptr, 2 * base.dim));
            const auto& a = base.value;
            worst = std::max({worst, std::abs(a.mean_x - doubled.mean_x), std::abs(a.mean_p - doubled.mean_p),
                              std::abs(a.mean_x2 - doubled.mean_x2), std::abs(a.mean_p2 - doubled.mean_p2)});
        }
    return within(worst, 1e-10);
}

inline Outcome check_uncertainty() {
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (const auto& ptr : grid_pointers({0.0, 0.5, 1.5}, {0.0, kPi / 4, kPi / 2}))
        for (double s : {1e-5, 0.7}) {
            const SelectionPair sel(7 * kPi / 9, kPi / 4);
            const double sigma = 1.3;
            const auto t = fock::with_truncation(ptr, s, [&](const fock::FockVector& v) {
                const auto a = fock::moments(v, sigma);
                const auto b = fock::moments(fock::evolve_and_postselect(v, sel, s).postselected_state, sigma);
                return std::min(a.var_x() * a.var_p(), b.var_x() * b.var_p());
            });
            worst_ratio = std::min(worst_ratio, t.value / 0.25);
        }
    return {worst_ratio >= 1.0 - 1e-9, "min var_x var_p / (1/4) = " + sci(worst_ratio)};
}

inline Outcome check_displacement_routes() {
    double worst = 0.0;
    const std::size_t d = 64;
    for (const Complex mu : {Complex{0.3, 0.0}, Complex{-0.8, 0.5}, Complex{1.2, -0.4}}) {
        const auto dense = fock::displacement_matrix(mu, d, 24);
        const auto back = fock::displacement_matrix(-mu, d, 24);
        const Eigen::MatrixXcd prod = (dense.matrix * back.matrix).topLeftCorner(16, 16);
        worst = std::max(worst, (prod - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff());

        const auto vac = fock::coherent_vector(Complex{0.0, 0.0}, d);
        const auto displaced = fock::apply_displacement(mu, vac);
        const auto closed = fock::coherent_vector(mu, d);
        for (std::size_t n = 0; n < d; ++n) {
            worst = std::max(worst, std::abs(displaced.amps[n] - closed.amps[n]));
            worst = std::max(worst, std::abs(dense.matrix(static_cast<Eigen::Index>(n), 0) - closed.amps[n]));
        }
    }
    return within(worst, 1e-10);
}

inline Outcome check_qfi_routes() {
    double worst = 0.0;
    for (const auto& ptr : grid_pointers({0.0, 1.0}, {0.0, kPi / 4}))
        for (double theta : {kPi / 6, kPi / 2, 7 * kPi / 9})
            for (double s : {0.0, 0.01, 0.5}) {
                const SelectionPair sel(theta, kPi / 4);
                for (auto evo : {fock::Evolution::Full, fock::Evolution::FirstOrder}) {
                    const auto t = fock::with_truncation(ptr, s, [&](const fock::FockVector& v) {
                        return fock::qfi_postselected_detailed(v, sel, s, evo);
                    });
                    worst = std::max(worst, std::abs(t.value.analytic - t.value.numeric) /
                                                fock::qfi_tolerance(t.value.analytic));
                }
            }
    return {worst <= 1.0, "worst |analytic - numeric| / max(1e-6, 1e-4 F) = " + sci(worst)};
}

// ---------------------------------------------------------------------------
// metrics

inline Outcome check_chi_n_invariance() {
    const SelectionPair sel(7 * kPi / 9, kPi / 4);
    bool exact = true;
    for (const PointerSpec& ptr : {PointerSpec{Coherent(1.0, 0.5)}, PointerSpec{SqueezedVacuum(1.0, 1.2)},
                                   PointerSpec{EvenCat(1.0, 0.7)}}) {
        const double a = ratio_chi(sel, ptr, CouplingConfig::from_strength(1e-3, 1.0, 1));
        const double b = ratio_chi(sel, ptr, CouplingConfig::from_strength(1e-3, 1.0, 37));
        exact = exact && (a == b);
    }
    return {exact, exact ? "chi(N=1) == chi(N=37) bitwise" : "chi depends on N"};
}

inline Outcome check_chi_g_scaling() {
    double worst = 0.0;
    const SelectionPair sel(7 * kPi / 9, kPi / 4);
    for (const PointerSpec& ptr : {PointerSpec{Coherent(1.0, kPi / 3)}, PointerSpec{SqueezedVacuum(1.0, 1.2)},
                                   PointerSpec{EvenCat(1.0, 0.7)}}) {
        const double sigma = 1.0;
        const double a = ratio_chi(sel, ptr, CouplingConfig(1e-5 * sigma, sigma));
        const double b = ratio_chi(sel, ptr, CouplingConfig(1e-6 * sigma, sigma));
        worst = std::max(worst, std::abs(a - b));
    }
    return within(worst, 1e-4);
}

inline Outcome check_chi_weak_limit() {
    double worst = 0.0;
    for (double theta : {kPi / 3, kPi / 2, 7 * kPi / 9})
        for (const auto& ptr : {Coherent(1.0, kPi / 3), Coherent(0.4, 2.0), Coherent(2.0, 4.0)}) {
            const SelectionPair sel(theta, kPi / 4);
            const double chi = ratio_chi(sel, ptr, CouplingConfig::from_strength(1e-5));
            worst = std::max(worst, std::abs(chi - 1.0 / (2.0 * std::cos(0.5 * theta))));
        }
    return within(worst, 1e-3);
}

inline Outcome check_fisher_bounds() {
    double worst = 0.0;
    bool nonneg = true;
    for (const auto& ptr : grid_pointers({0.0, 1.0}, {kPi / 4}))
        for (double theta : {kPi / 6, kPi / 2, 7 * kPi / 9, 0.99 * kPi}) {
            const SelectionPair sel(theta, kPi / 4);
            const auto t = fock::with_truncation(ptr, 0.01, [&](const fock::FockVector& v) {
                const double f = fock::qfi_postselected(v, sel, 0.01);
                return std::pair{f, fisher_postselected(v, sel, 0.01)};
            });
            nonneg = nonneg && t.value.first >= 0.0 && t.value.second >= 0.0;
            worst = std::max(worst, t.value.second - t.value.first);
        }
    return {nonneg && worst <= 0.0, "max(F_p - F) = " + sci(worst) + (nonneg ? "" : ", negative Fisher information")};
}

// ---------------------------------------------------------------------------
// sweeps

inline SweepJob small_job() {
    SweepJob job;
    job.quantity = Quantity::Chi;
    job.params.family = Family::Cat;
    job.axis1 = {"r", 0.0, 1.5, 4};
    job.axis2 = {"phi_c", 0.0, kTwoPi, 5};
    job.output = "selftest";
    return job;
}

inline Outcome check_parallel_determinism() {
    const auto job = small_job();
    const auto serial = csv_text(run_job(job, 1));
    const auto parallel = csv_text(run_job(job, 3));
    return {serial == parallel, serial == parallel ? "serial and 3-thread CSV identical" : "CSV differs"};
}

inline Outcome check_config_roundtrip() {
    auto job = figure_job("fig2").value();
    job.params.n_runs = 7;
    job.params.s = 3e-5;
    const auto text = meta_json(job, summarize(run_job(small_job(), 1), 0.0, 1)).dump(2);
    const auto back = job_from_config(parse_json_config(text, "meta"));
    return {back == job, back == job ? "sidecar re-ingests to the identical job" : "job changed on round trip"};
}

// ---------------------------------------------------------------------------

struct Check {
    const char* module;
    const char* name;
    std::function<Outcome()> run;
};

inline std::vector<Check> all_checks() {
    return {
        {"selection", "weak value modulus tan(theta/2), phase phi", check_weak_value_modulus},
        {"selection", "general weak value reduces on 20x20 grid", check_general_weak_value},
        {"selection", "P_s(theta) + P_s(pi - theta) = 1", check_probability_complement},
        {"pointers", "Gaussian-limit reduction of all families", check_gaussian_limit},
        {"pointers", "assembled final states normalized", check_assembled_norms},
        {"pointers", "closed-form means match oracle", check_closed_forms_against_oracle},
        {"fock_oracle", "postselection probability x coef^2 = P_s", check_postselection_norm_consistency},
        {"fock_oracle", "truncated [X, P] = i on interior block", check_commutator},
        {"fock_oracle", "even parity exact for squeezed and cat", check_parity},
        {"fock_oracle", "truncation doubling stability", check_truncation_doubling},
        {"fock_oracle", "uncertainty product >= 1/4", check_uncertainty},
        {"fock_oracle", "dense and sparse displacement agree", check_displacement_routes},
        {"fock_oracle", "analytic and finite-difference QFI agree", check_qfi_routes},
        {"metrics", "chi invariant under N", check_chi_n_invariance},
        {"metrics", "chi invariant under g scaling", check_chi_g_scaling},
        {"metrics", "chi weak limit 1/(2 cos(theta/2))", check_chi_weak_limit},
        {"metrics", "0 <= F_p <= F", check_fisher_bounds},
        {"sweeps", "serial and parallel grids identical", check_parallel_determinism},
        {"sweeps", "metadata sidecar round-trips as config", check_config_roundtrip},
    };
}

inline CheckResult run_check(const Check& check) {
    CheckResult r{check.module, check.name, false, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
        const auto out = check.run();
        r.passed = out.passed;
        r.detail = out.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("threw: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline std::vector<CheckResult> run_all() {
    std::vector<CheckResult> out;
    for (const auto& c : all_checks()) out.push_back(run_check(c));
    return out;
}

inline void print_table(std::ostream& os, const std::vector<CheckResult>& results) {
    char line[512];
    for (const auto& r : results) {
        std::snprintf(line, sizeof line, "%-4s  %-12s %-46s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                      r.module.c_str(), r.name.c_str(), r.seconds, r.detail.c_str());
        os << line;
    }
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace weaklab::selftest
