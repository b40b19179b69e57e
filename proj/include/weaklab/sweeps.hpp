#pragma once

// Parameter sweeps over two axes, CSV grid output and JSON metadata sidecars.
//
// Configuration is a flat key/value map whose keys are the CLI flag names
// (theta, phi, s, g, sigma, n-runs, pointer, r, phi-c, eta, delta, quantity,
// axis1, axis2, out, as-printed, first-order). It is read either from
// `key = value` text or from a JSON object; a metadata sidecar is itself a
// valid configuration for the job that produced it.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "weaklab/core.hpp"
#include "weaklab/fock_oracle.hpp"
#include "weaklab/metrics.hpp"
#include "weaklab/pointers.hpp"
#include "weaklab/selection.hpp"

namespace weaklab {

enum class Quantity { ShiftX, ShiftP, SnrPost, SnrNon, Chi, ChiPrime, Qfi, FisherPost };
enum class Family { Coherent, Squeezed, Cat };

inline constexpr std::pair<Quantity, std::string_view> kQuantityNames[] = {
    {Quantity::ShiftX, "shift_x"},   {Quantity::ShiftP, "shift_p"}, {Quantity::SnrPost, "snr_post"},
    {Quantity::SnrNon, "snr_non"},   {Quantity::Chi, "chi"},        {Quantity::ChiPrime, "chi_prime"},
    {Quantity::Qfi, "qfi"},          {Quantity::FisherPost, "fisher_post"},
};

inline constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::Coherent, "coherent"}, {Family::Squeezed, "squeezed"}, {Family::Cat, "cat"}};

inline std::string_view to_string(Quantity q) {
    for (const auto& [k, v] : kQuantityNames)
        if (k == q) return v;
    return "?";
}

inline std::string_view to_string(Family f) {
    for (const auto& [k, v] : kFamilyNames)
        if (k == f) return v;
    return "?";
}

using ConfigMap = std::map<std::string, std::string>;

[[noreturn]] inline void config_error(const std::string& path, const std::string& what) {
    fail(ErrorCode::ConfigInvalid, path + ": " + what);
}

/// Physical parameters shared by every subcommand.
struct PhysicalParams {
    double theta = 7.0 * kPi / 9.0;
    double phi = kPi / 4.0;
    double s = 1e-5;
    double sigma = 1.0;
    long n_runs = 1;
    Family family = Family::Coherent;
    double r = 1.0;
    double phi_c = kPi / 4.0;
    double eta = 1.0;
    double delta = kPi / 4.0;
    bool as_printed = false;
    bool first_order = false;

    double g() const { return s * sigma; }
    SelectionPair selection() const { return SelectionPair(theta, phi); }
    CouplingConfig coupling() const { return CouplingConfig::from_strength(s, sigma, n_runs); }

    PointerSpec pointer() const {
        switch (family) {
        case Family::Coherent: return Coherent(r, phi_c);
        case Family::Squeezed: return SqueezedVacuum(eta, delta);
        case Family::Cat: return EvenCat(r, phi_c);
        }
        return Coherent(r, phi_c);
    }

    SqueezedMomentumForm momentum_form() const {
        return as_printed ? SqueezedMomentumForm::AsPrinted : SqueezedMomentumForm::Exact;
    }
    fock::Evolution evolution() const { return first_order ? fock::Evolution::FirstOrder : fock::Evolution::Full; }

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

struct Axis {
    std::string name;
    double min = 0.0;
    double max = 1.0;
    int steps = 2;

    double value(int i) const {
        if (i == steps - 1) return max;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }

    friend bool operator==(const Axis&, const Axis&) = default;
};

struct SweepJob {
    Quantity quantity = Quantity::Chi;
    PhysicalParams params;
    Axis axis1{"r", 0.0, 3.0, 41};
    Axis axis2{"phi_c", 0.0, kTwoPi, 61};
    std::string output = "sweep";

    friend bool operator==(const SweepJob&, const SweepJob&) = default;
};

enum class CellStatus {
    Ok,
    ChiUndefined,
    TruncationInsufficient,
    OrthogonalSelection,
    DegenerateNoise,
    DerivativeMismatch,
    Invalid,
};

inline std::string_view to_string(CellStatus s) {
    switch (s) {
    case CellStatus::Ok: return "ok";
    case CellStatus::ChiUndefined: return "chi_undefined";
    case CellStatus::TruncationInsufficient: return "truncation_insufficient";
    case CellStatus::OrthogonalSelection: return "orthogonal_selection";
    case CellStatus::DegenerateNoise: return "degenerate_noise";
    case CellStatus::DerivativeMismatch: return "derivative_mismatch";
    case CellStatus::Invalid: return "invalid";
    }
    return "invalid";
}

/// Row-major grid: cell (i, j) sits at i * axis2.size() + j, axis1 = rows.
struct GridResult {
    std::string axis1_name, axis2_name;
    std::vector<double> axis1, axis2;
    std::vector<double> values;
    std::vector<CellStatus> status;
    std::vector<std::size_t> dims;  // truncation dimension per cell, 0 when unused

    double at(std::size_t i, std::size_t j) const { return values[i * axis2.size() + j]; }
    CellStatus status_at(std::size_t i, std::size_t j) const { return status[i * axis2.size() + j]; }
};

// ---------------------------------------------------------------------------
// Parsing

inline std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& path, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v))
        config_error(path, "expected a finite number, got '" + text + "'");
    return v;
}

inline long parse_count(const std::string& path, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size()) config_error(path, "expected an integer, got '" + text + "'");
    return v;
}

inline bool parse_flag(const std::string& path, const std::string& text) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
    if (t == "false" || t == "0" || t == "no" || t == "off") return false;
    config_error(path, "expected a boolean, got '" + text + "'");
}

inline Family parse_family(const std::string& text) {
    for (const auto& [k, v] : kFamilyNames)
        if (v == trim(text)) return k;
    config_error("pointer", "unknown pointer family '" + text + "' (coherent | squeezed | cat)");
}

inline Quantity parse_quantity(const std::string& text) {
    for (const auto& [k, v] : kQuantityNames)
        if (v == trim(text)) return k;
    config_error("quantity", "unknown quantity '" + text + "'");
}

/// `name:min:max:steps`
inline Axis parse_axis(const std::string& path, const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(trim(item));
    if (parts.size() != 4) config_error(path, "expected name:min:max:steps, got '" + text + "'");
    Axis a;
    a.name = parts[0];
    std::replace(a.name.begin(), a.name.end(), '-', '_');
    a.min = parse_real(path + ".min", parts[1]);
    a.max = parse_real(path + ".max", parts[2]);
    const long steps = parse_count(path + ".steps", parts[3]);
    if (steps < 2 || steps > 100000) config_error(path + ".steps", "must be in [2, 100000]");
    a.steps = static_cast<int>(steps);
    return a;
}

inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_axis(const Axis& a) {
    return a.name + ":" + format_real(a.min) + ":" + format_real(a.max) + ":" + std::to_string(a.steps);
}

/// Flat `key = value` text; '#' starts a comment.
inline ConfigMap parse_key_values(const std::string& text, const std::string& origin) {
    ConfigMap out;
    std::stringstream ss(text);
    int line_no = 0;
    for (std::string line; std::getline(ss, line);) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            config_error(origin + ":" + std::to_string(line_no), "expected 'key = value'");
        out[normalize_key(trim(line.substr(0, eq)))] = trim(line.substr(eq + 1));
    }
    return out;
}

/// A JSON object of the same keys, or a metadata sidecar holding one under "job".
inline ConfigMap parse_json_config(const std::string& text, const std::string& origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        config_error(origin, std::string("malformed JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("job")) doc = doc["job"];
    if (!doc.is_object()) config_error(origin, "expected a JSON object");

    ConfigMap out;
    for (const auto& [key, value] : doc.items()) {
        const std::string k = normalize_key(key);
        if (value.is_string())
            out[k] = value.get<std::string>();
        else if (value.is_boolean())
            out[k] = value.get<bool>() ? "true" : "false";
        else if (value.is_number_integer())
            out[k] = std::to_string(value.get<long long>());
        else if (value.is_number())
            out[k] = format_real(value.get<double>());
        else if (value.is_object() && (k == "axis1" || k == "axis2")) {
            try {
                Axis a{value.at("name").get<std::string>(), value.at("min").get<double>(),
                       value.at("max").get<double>(), value.at("steps").get<int>()};
                out[k] = format_axis(a);
            } catch (const nlohmann::json::exception& e) {
                config_error(origin + ":" + k, std::string("bad axis object: ") + e.what());
            }
        } else
            config_error(origin + ":" + k, "unsupported value type");
    }
    return out;
}

inline ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigInvalid, "cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json_config(text, path);
    return parse_key_values(text, path);
}

inline const std::vector<std::string>& physical_keys() {
    static const std::vector<std::string> keys{"theta", "phi",   "s",     "g",          "sigma",      "n-runs",
                                               "pointer", "r",   "phi-c", "eta",        "delta",      "as-printed",
                                               "first-order"};
    return keys;
}

/// Reads the physical parameters out of `cfg`; keys that are absent keep
/// their defaults. g and s may both be given only if g = s sigma.
inline PhysicalParams params_from_config(const ConfigMap& cfg) {
    PhysicalParams p;
    auto get = [&](const std::string& key) -> std::optional<std::string> {
        if (auto it = cfg.find(key); it != cfg.end()) return it->second;
        return std::nullopt;
    };
    if (auto v = get("theta")) p.theta = parse_real("theta", *v);
    if (auto v = get("phi")) p.phi = parse_real("phi", *v);
    if (auto v = get("sigma")) p.sigma = parse_real("sigma", *v);
    if (!(p.sigma > 0.0)) config_error("sigma", "must be positive");
    if (auto v = get("n-runs")) p.n_runs = parse_count("n-runs", *v);
    if (p.n_runs < 1) config_error("n-runs", "must be at least 1");

    const auto s_text = get("s");
    const auto g_text = get("g");
    if (s_text) p.s = parse_real("s", *s_text);
    if (g_text) {
        const double g = parse_real("g", *g_text);
        if (!s_text)
            p.s = g / p.sigma;
        else if (std::abs(g - p.s * p.sigma) > 1e-12 * std::max(1.0, std::abs(g)))
            config_error("g", "inconsistent with s * sigma (" + format_real(p.s * p.sigma) + ")");
    }

    if (auto v = get("pointer")) p.family = parse_family(*v);
    if (auto v = get("r")) p.r = parse_real("r", *v);
    if (auto v = get("phi-c")) p.phi_c = parse_real("phi-c", *v);
    if (auto v = get("eta")) p.eta = parse_real("eta", *v);
    if (auto v = get("delta")) p.delta = parse_real("delta", *v);
    if (p.r < 0.0) config_error("r", "must be non-negative");
    if (p.eta < 0.0) config_error("eta", "must be non-negative");
    if (auto v = get("as-printed")) p.as_printed = parse_flag("as-printed", *v);
    if (auto v = get("first-order")) p.first_order = parse_flag("first-order", *v);
    return p;
}

inline std::vector<std::string> sweepable_axes(Family f) {
    std::vector<std::string> names{"theta", "phi", "s"};
    if (f == Family::Squeezed) {
        names.push_back("eta");
        names.push_back("delta");
    } else {
        names.push_back("r");
        names.push_back("phi_c");
    }
    return names;
}

inline void validate(const SweepJob& job) {
    const auto allowed = sweepable_axes(job.params.family);
    auto check_axis = [&](const Axis& a, const std::string& path) {
        if (std::find(allowed.begin(), allowed.end(), a.name) == allowed.end()) {
            std::string list;
            for (const auto& n : allowed) list += (list.empty() ? "" : ", ") + n;
            config_error(path + ".name", "'" + a.name + "' is not a parameter of the " +
                                             std::string(to_string(job.params.family)) + " family (" + list + ")");
        }
        if (a.steps < 2) config_error(path + ".steps", "must be at least 2");
        if (!(a.min < a.max)) config_error(path, "min must be below max");
        if (!std::isfinite(a.min) || !std::isfinite(a.max)) config_error(path, "bounds must be finite");
        if ((a.name == "r" || a.name == "eta" || a.name == "s") && a.min < 0.0)
            config_error(path + ".min", "'" + a.name + "' must be non-negative");
    };
    check_axis(job.axis1, "axis1");
    check_axis(job.axis2, "axis2");
    if (job.axis1.name == job.axis2.name) config_error("axis2.name", "must differ from axis1.name");
    if (job.output.empty()) config_error("out", "output path stem is empty");
    if (job.params.s < 0.0) config_error("s", "must be non-negative");
}

inline SweepJob job_from_config(const ConfigMap& cfg) {
    static const std::vector<std::string> job_keys{"quantity", "axis1", "axis2", "out"};
    for (const auto& [key, value] : cfg) {
        const auto& phys = physical_keys();
        if (std::find(phys.begin(), phys.end(), key) == phys.end() &&
            std::find(job_keys.begin(), job_keys.end(), key) == job_keys.end())
            config_error(key, "unknown configuration key");
    }

    SweepJob job;
    job.params = params_from_config(cfg);
    if (auto it = cfg.find("quantity"); it != cfg.end()) job.quantity = parse_quantity(it->second);
    if (job.params.family == Family::Squeezed) {
        job.axis1 = {"eta", 0.0, 3.0, 41};
        job.axis2 = {"delta", 0.0, kTwoPi, 61};
    }
    if (auto it = cfg.find("axis1"); it != cfg.end()) job.axis1 = parse_axis("axis1", it->second);
    if (auto it = cfg.find("axis2"); it != cfg.end()) job.axis2 = parse_axis("axis2", it->second);
    if (auto it = cfg.find("out"); it != cfg.end()) job.output = it->second;
    validate(job);
    return job;
}

inline nlohmann::json to_json(const Axis& a) {
    return {{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}};
}

inline nlohmann::json to_json(const SweepJob& job) {
    const auto& p = job.params;
    return {
        {"quantity", std::string(to_string(job.quantity))},
        {"pointer", std::string(to_string(p.family))},
        {"theta", p.theta},
        {"phi", p.phi},
        {"s", p.s},
        {"g", p.g()},
        {"sigma", p.sigma},
        {"n-runs", p.n_runs},
        {"r", p.r},
        {"phi-c", p.phi_c},
        {"eta", p.eta},
        {"delta", p.delta},
        {"as-printed", p.as_printed},
        {"first-order", p.first_order},
        {"axis1", to_json(job.axis1)},
        {"axis2", to_json(job.axis2)},
        {"out", job.output},
    };
}

// ---------------------------------------------------------------------------
// Evaluation

inline void set_axis_value(PhysicalParams& p, const std::string& name, double v) {
    if (name == "theta") p.theta = v;
    else if (name == "phi") p.phi = v;
    else if (name == "s") p.s = v;
    else if (name == "r") p.r = v;
    else if (name == "phi_c") p.phi_c = v;
    else if (name == "eta") p.eta = v;
    else if (name == "delta") p.delta = v;
    else config_error("axis", "unknown axis '" + name + "'");
}

struct CellValue {
    double value = std::numeric_limits<double>::quiet_NaN();
    CellStatus status = CellStatus::Ok;
    std::size_t dim = 0;
};

inline CellStatus status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ChiUndefined: return CellStatus::ChiUndefined;
    case ErrorCode::TruncationInsufficient: return CellStatus::TruncationInsufficient;
    case ErrorCode::OrthogonalSelection: return CellStatus::OrthogonalSelection;
    case ErrorCode::DegenerateNoise: return CellStatus::DegenerateNoise;
    case ErrorCode::DerivativeMismatch: return CellStatus::DerivativeMismatch;
    default: return CellStatus::Invalid;
    }
}

/// Evaluates one quantity at one parameter point. Failures become a status.
inline CellValue evaluate(Quantity quantity, const PhysicalParams& p) {
    CellValue out;
    try {
        const auto sel = p.selection();
        const auto cfg = p.coupling();
        const auto pointer = p.pointer();
        switch (quantity) {
        case Quantity::ShiftX: out.value = mean_shift(sel, pointer, cfg, p.momentum_form()).x; break;
        case Quantity::ShiftP: out.value = mean_shift(sel, pointer, cfg, p.momentum_form()).p; break;
        case Quantity::SnrPost:
        case Quantity::SnrNon:
        case Quantity::Chi:
        case Quantity::ChiPrime: {
            const auto t = fock::with_truncation(
                pointer, cfg.s(), [&](const fock::FockVector& v) { return snr_report(v, sel, cfg); });
            out.dim = t.dim;
            const auto& r = t.value;
            if (quantity == Quantity::SnrPost) out.value = r.snr_post;
            else if (quantity == Quantity::SnrNon) out.value = r.snr_non;
            else if (quantity == Quantity::Chi) out.value = chi_of(r);
            else out.value = (chi_of(r) - kChiPlateau) * kChiPrimeScale;
            break;
        }
        case Quantity::Qfi:
        case Quantity::FisherPost: {
            const auto t = fock::with_truncation(pointer, cfg.s(), [&](const fock::FockVector& v) {
                return fock::qfi_postselected(v, sel, cfg.s(), p.evolution());
            });
            out.dim = t.dim;
            out.value = quantity == Quantity::Qfi ? t.value : postselection_probability(sel) * t.value;
            break;
        }
        }
    } catch (const Error& e) {
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.status = status_for(e.code());
    }
    return out;
}

/// Evaluates every cell independently on `threads` workers (0 = hardware
/// concurrency). Results do not depend on the thread count.
inline GridResult run_job(const SweepJob& job, unsigned threads = 0) {
    validate(job);
    GridResult g;
    g.axis1_name = job.axis1.name;
    g.axis2_name = job.axis2.name;
    for (int i = 0; i < job.axis1.steps; ++i) g.axis1.push_back(job.axis1.value(i));
    for (int j = 0; j < job.axis2.steps; ++j) g.axis2.push_back(job.axis2.value(j));

    const std::size_t rows = g.axis1.size(), cols = g.axis2.size(), cells = rows * cols;
    g.values.assign(cells, std::numeric_limits<double>::quiet_NaN());
    g.status.assign(cells, CellStatus::Invalid);
    g.dims.assign(cells, 0);

    auto work = [&](std::size_t idx) {
        PhysicalParams p = job.params;
        set_axis_value(p, job.axis1.name, g.axis1[idx / cols]);
        set_axis_value(p, job.axis2.name, g.axis2[idx % cols]);
        const auto cell = evaluate(job.quantity, p);
        g.values[idx] = cell.value;
        g.status[idx] = cell.status;
        g.dims[idx] = cell.dim;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
    if (threads <= 1) {
        for (std::size_t idx = 0; idx < cells; ++idx) work(idx);
        return g;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t idx = next++; idx < cells; idx = next++) work(idx);
        });
    for (auto& th : pool) th.join();
    return g;
}

// ---------------------------------------------------------------------------
// Output

inline std::string csv_text(const GridResult& g) {
    std::string out = g.axis1_name + "," + g.axis2_name + ",value,status\n";
    for (std::size_t i = 0; i < g.axis1.size(); ++i)
        for (std::size_t j = 0; j < g.axis2.size(); ++j)
            out += format_real(g.axis1[i]) + "," + format_real(g.axis2[j]) + "," + format_real(g.at(i, j)) + "," +
                   std::string(to_string(g.status_at(i, j))) + "\n";
    return out;
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

inline void emit_csv(const GridResult& g, const std::string& path) { write_file(path, csv_text(g)); }

struct Provenance {
    std::size_t dim_min = 0;
    std::size_t dim_max = 0;
    double wall_time_s = 0.0;
    unsigned threads = 1;
    std::size_t cells_ok = 0;
    std::size_t cells_failed = 0;
};

inline Provenance summarize(const GridResult& g, double wall_time_s, unsigned threads) {
    Provenance p;
    p.wall_time_s = wall_time_s;
    p.threads = threads;
    bool any = false;
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        if (g.status[k] == CellStatus::Ok) ++p.cells_ok;
        else ++p.cells_failed;
        if (g.dims[k] == 0) continue;
        p.dim_min = any ? std::min(p.dim_min, g.dims[k]) : g.dims[k];
        p.dim_max = any ? std::max(p.dim_max, g.dims[k]) : g.dims[k];
        any = true;
    }
    return p;
}

inline nlohmann::json meta_json(const SweepJob& job, const Provenance& prov) {
    return {
        {"job", to_json(job)},
        {"library", "weaklab"},
        {"library_version", std::string(kVersion)},
        {"truncation_dim_min", prov.dim_min},
        {"truncation_dim_max", prov.dim_max},
        {"wall_time_s", prov.wall_time_s},
        {"threads", prov.threads},
        {"cells_ok", prov.cells_ok},
        {"cells_failed", prov.cells_failed},
        {"csv_schema", job.axis1.name + "," + job.axis2.name + ",value,status"},
    };
}

inline void emit_meta(const SweepJob& job, const Provenance& prov, const std::string& path) {
    write_file(path, meta_json(job, prov).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Figure presets

/// Named preset jobs: fig1 (coherent chi'), fig2 (squeezed chi), fig3 (cat
/// chi), snr-* and qfi-* over (s, theta). All ranges are overridable.
inline std::optional<SweepJob> figure_job(const std::string& name) {
    SweepJob job;
    job.output = name;
    auto& p = job.params;
    p.theta = 7.0 * kPi / 9.0;
    p.phi = kPi / 4.0;
    p.s = 1e-5;
    if (name == "fig1") {
        job.quantity = Quantity::ChiPrime;
        p.family = Family::Coherent;
        job.axis1 = {"r", 0.0, 3.0, 41};
        job.axis2 = {"phi_c", 0.0, kTwoPi, 61};
    } else if (name == "fig2") {
        job.quantity = Quantity::Chi;
        p.family = Family::Squeezed;
        job.axis1 = {"eta", 0.0, 3.0, 41};
        job.axis2 = {"delta", 0.0, kTwoPi, 61};
    } else if (name == "fig3") {
        job.quantity = Quantity::Chi;
        p.family = Family::Cat;
        job.axis1 = {"r", 0.0, 3.0, 41};
        job.axis2 = {"phi_c", 0.0, kTwoPi, 61};
    } else if (name == "snr-coherent" || name == "snr-cat" || name == "snr-squeezed") {
        job.quantity = Quantity::SnrPost;
        p.phi = 0.0;
        p.n_runs = 1;
        p.family = name == "snr-coherent" ? Family::Coherent : name == "snr-cat" ? Family::Cat : Family::Squeezed;
        p.r = 1.0;
        p.phi_c = kPi / 4.0;
        p.eta = 1.0;
        p.delta = kPi / 4.0;
        job.axis1 = {"s", 0.0, 3.0, 41};
        job.axis2 = {"theta", 0.0, 3.1, 61};
    } else if (name == "qfi-coherent" || name == "qfi-cat" || name == "qfi-squeezed") {
        job.quantity = Quantity::FisherPost;
        p.phi = kPi / 4.0;
        p.n_runs = 1;
        p.family = name == "qfi-coherent" ? Family::Coherent : name == "qfi-cat" ? Family::Cat : Family::Squeezed;
        p.r = 1.0;
        p.phi_c = kPi / 4.0;
        p.eta = 1.0;
        p.delta = kPi / 4.0;
        job.axis1 = {"s", 0.0, 0.1, 41};
        job.axis2 = {"theta", 0.0, 3.1, 61};
    } else {
        return std::nullopt;
    }
    return job;
}

inline const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names{"fig1",         "fig2",         "fig3",         "snr-coherent",
                                                "snr-cat",      "snr-squeezed", "qfi-coherent", "qfi-cat",
                                                "qfi-squeezed"};
    return names;
}

}  // namespace weaklab
