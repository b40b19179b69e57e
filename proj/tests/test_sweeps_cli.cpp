#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/position_oracle.hpp"
#include "weaklab/cli.hpp"
#include "weaklab/sweeps.hpp"

using namespace weaklab;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "weaklab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

double value_of(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + " = ", 0) == 0) return std::stod(line.substr(key.size() + 3));
    ADD_FAILURE() << "no '" << key << "' in output:\n" << text;
    return std::nan("");
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("weaklab_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    static int& counter() {
        static int c = 0;
        return c;
    }
    fs::path path_;
};

SweepJob tiny_job(Quantity q = Quantity::ShiftX) {
    SweepJob job;
    job.quantity = q;
    job.params.family = Family::Coherent;
    job.axis1 = {"r", 0.0, 1.0, 2};
    job.axis2 = {"phi_c", 0.0, 1.0, 2};
    return job;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;
}

}  // namespace

// Parsing

TEST(Config, KeyValueText) {
    const auto cfg = parse_key_values("# comment\ntheta = 1.5\n\n pointer=cat  # trailing\nphi_c = 0.25\n", "t.cfg");
    EXPECT_EQ(cfg.at("theta"), "1.5");
    EXPECT_EQ(cfg.at("pointer"), "cat");
    EXPECT_EQ(cfg.at("phi-c"), "0.25");
    EXPECT_EQ(code_of([] { parse_key_values("theta 1.5\n", "t.cfg"); }), ErrorCode::ConfigInvalid);
}

TEST(Config, BadValuesNameTheField) {
    try {
        params_from_config({{"theta", "abc"}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
        EXPECT_NE(std::string(e.what()).find("theta"), std::string::npos);
    }
    EXPECT_EQ(code_of([] { params_from_config({{"pointer", "thermal"}}); }), ErrorCode::ConfigInvalid);
    EXPECT_EQ(code_of([] { params_from_config({{"sigma", "-1"}}); }), ErrorCode::ConfigInvalid);
    EXPECT_EQ(code_of([] { params_from_config({{"s", "0.1"}, {"g", "0.5"}}); }), ErrorCode::ConfigInvalid);
}

TEST(Config, CouplingFromG) {
    const auto p = params_from_config({{"g", "0.01"}, {"sigma", "0.1"}});
    EXPECT_NEAR(p.s, 0.1, 1e-15);
    EXPECT_NO_THROW(params_from_config({{"g", "0.01"}, {"sigma", "0.1"}, {"s", "0.1"}}));
}

TEST(Config, AxisSyntax) {
    const Axis a = parse_axis("axis1", "phi-c:0:6.283185307179586:61");
    EXPECT_EQ(a.name, "phi_c");
    EXPECT_EQ(a.steps, 61);
    EXPECT_EQ(a.value(0), 0.0);
    EXPECT_EQ(a.value(60), 6.283185307179586);
    EXPECT_EQ(code_of([] { parse_axis("axis1", "r:0:1"); }), ErrorCode::ConfigInvalid);
}

TEST(Validation, AxisMustBelongToFamily) {
    auto job = tiny_job();
    job.axis1.name = "eta";
    try {
        validate(job);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("axis1.name"), std::string::npos);
    }
    job = tiny_job();
    job.axis2.steps = 1;
    EXPECT_EQ(code_of([&] { validate(job); }), ErrorCode::ConfigInvalid);
    job = tiny_job();
    job.axis2.min = 2.0;
    EXPECT_EQ(code_of([&] { validate(job); }), ErrorCode::ConfigInvalid);
    EXPECT_EQ(code_of([] { job_from_config({{"colour", "red"}}); }), ErrorCode::ConfigInvalid);
}

// Grid and output

TEST(Grid, ShapeAndValues) {
    auto job = tiny_job();
    job.axis1 = {"theta", 0.2, 1.2, 3};
    job.axis2 = {"s", 0.1, 0.5, 4};
    const auto g = run_job(job, 1);
    ASSERT_EQ(g.values.size(), 12u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            PhysicalParams p = job.params;
            p.theta = g.axis1[i];
            p.s = g.axis2[j];
            EXPECT_EQ(g.at(i, j), mean_shift(p.selection(), p.pointer(), p.coupling()).x);
            EXPECT_EQ(g.status_at(i, j), CellStatus::Ok);
        }
}

TEST(Grid, FailedCellsCarryStatus) {
    SweepJob job;
    job.quantity = Quantity::Chi;
    job.params.family = Family::Coherent;
    job.params.s = 1e-3;
    job.axis1 = {"phi", 0.0, kPi / 2, 2};
    job.axis2 = {"theta", 1.0, kPi, 2};
    const auto g = run_job(job, 2);
    EXPECT_EQ(g.status_at(0, 0), CellStatus::Ok);
    EXPECT_EQ(g.status_at(1, 0), CellStatus::ChiUndefined);
    EXPECT_EQ(g.status_at(0, 1), CellStatus::OrthogonalSelection);
    EXPECT_TRUE(std::isnan(g.at(1, 0)));
    EXPECT_NE(csv_text(g).find("nan,chi_undefined"), std::string::npos);
}

TEST(Csv, SchemaAndRows) {
    const auto text = csv_text(run_job(tiny_job(), 1));
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "r,phi_c,value,status");
    for (std::size_t k = 1; k < 5; ++k) EXPECT_EQ(std::count(lines[k].begin(), lines[k].end(), ','), 3);
}

TEST(Csv, RoundTripFloats) {
    for (double v : {0.1, 1.0 / 3.0, 2.4434609527920612, 1e-300, -7.5e12}) EXPECT_EQ(std::stod(format_real(v)), v);
}

TEST(Determinism, SerialParallelAndRerun) {
    SweepJob job;
    job.quantity = Quantity::SnrPost;
    job.params.family = Family::Squeezed;
    job.axis1 = {"eta", 0.0, 1.0, 4};
    job.axis2 = {"delta", 0.0, kTwoPi, 5};
    const auto a = csv_text(run_job(job, 1));
    EXPECT_EQ(a, csv_text(run_job(job, 4)));
    EXPECT_EQ(a, csv_text(run_job(job, 1)));
}

TEST(Meta, SidecarRoundTrip) {
    for (const auto& name : figure_names()) {
        auto job = figure_job(name).value();
        job.params.n_runs = 3;
        job.params.as_printed = true;
        const auto meta = meta_json(job, Provenance{32, 64, 1.5, 2, 10, 1});
        EXPECT_EQ(meta.at("truncation_dim_min"), 32);
        EXPECT_EQ(meta.at("library_version"), std::string(kVersion));
        EXPECT_EQ(job_from_config(parse_json_config(meta.dump(), "meta")), job) << name;
    }
}

TEST(Meta, FigureOneEchoesSettings) {
    const auto meta = meta_json(figure_job("fig1").value(), {});
    EXPECT_EQ(meta.at("job").at("s").get<double>(), 1e-5);
    EXPECT_NEAR(meta.at("job").at("theta").get<double>(), 2.44346, 1e-5);
    EXPECT_EQ(meta.at("csv_schema"), "r,phi_c,value,status");
}

TEST(Output, UnwritablePath) {
    EXPECT_EQ(code_of([] { write_file("/nonexistent-dir/x.csv", "a"); }), ErrorCode::Io);
}

// CLI

TEST(Cli, ChiPlateau) {
    const auto r = run_cli({"chi", "--pointer", "coherent", "--r", "1", "--phi-c", "0.7854", "--theta", "2.4435", "--phi",
                            "0.7854", "--s", "1e-5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "chi"), 1.4618, 2e-3);
}

TEST(Cli, ShiftMatchesGaussianLimit) {
    const auto r = run_cli({"shift", "--pointer", "squeezed", "--eta", "0", "--delta", "0", "--theta", "1.0", "--phi", "0.5",
                            "--s", "0.1", "--g", "0.01", "--sigma", "0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const SelectionPair sel(1.0, 0.5);
    const CouplingConfig cfg(0.01, 0.1);
    EXPECT_NEAR(value_of(r.out, "mean_x"), gaussian_limit_mean_x(sel, cfg), 1e-15);
    EXPECT_NEAR(value_of(r.out, "mean_p"), gaussian_limit_mean_p(sel, cfg), 1e-13);
    // independent check of the same numbers in position space
    const auto ref = testref::moments(testref::postselected(testref::squeezed(0, 0, 0.1), testref::weak_value(1.0, 0.5), 0.01));
    EXPECT_NEAR(value_of(r.out, "mean_x"), ref.x, 1e-10);
    EXPECT_NEAR(value_of(r.out, "mean_p"), ref.p, 1e-8);
}

TEST(Cli, SnrAndQfi) {
    auto r = run_cli({"snr", "--theta", "1.5707963267948966", "--phi", "0", "--s", "0.2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "snr_post"), 0.2 / std::sqrt(2.0), 1e-10);
    r = run_cli({"qfi", "--theta", "1.5707963267948966", "--phi", "0", "--s", "0.01", "--r", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(value_of(r.out, "qfi"), 1.0, 1e-6);
    EXPECT_NEAR(value_of(r.out, "fisher_post"), 0.5, 1e-6);
    r = run_cli({"qfi", "--first-order", "--s", "0.01"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, ErrorExitCodes) {
    EXPECT_EQ(run_cli({"sweep", "--config", "missing.cfg"}).code, 2);
    EXPECT_NE(run_cli({"sweep", "--config", "missing.cfg"}).err.find("missing.cfg"), std::string::npos);
    const auto unknown = run_cli({"chi", "--bogus", "1"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"chi", "--theta", "abc"}).code, 2);
    EXPECT_EQ(run_cli({"chi", "--phi", "1.5707963267948966"}).code, 3);
    EXPECT_EQ(run_cli({"qfi", "--theta", "3.141592653589793"}).code, 2);
}

TEST(Cli, TruncationFailureIsNumerical) {
    ::setenv("WEAKLAB_MAX_DIM", "64", 1);
    const auto r = run_cli({"chi", "--pointer", "squeezed", "--eta", "2.5"});
    ::unsetenv("WEAKLAB_MAX_DIM");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("truncation"), std::string::npos);
}

TEST(Cli, SweepFromConfigFile) {
    TempDir dir;
    const auto cfg = dir / "job.cfg";
    const auto stem = (dir / "grid").string();
    std::ofstream(cfg) << "quantity = shift_x\npointer = cat\ntheta = 1.2\naxis1 = r:0:1:3\naxis2 = phi_c:0:3:2\nout = "
                       << stem << "\n";
    const auto r = run_cli({"sweep", "--config", cfg.string(), "--threads", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto csv = slurp(stem + ".csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,phi_c,value,status");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);

    // the sidecar is itself a valid config and reproduces the same CSV
    const auto again = run_cli({"sweep", "--config", stem + ".meta.json", "--out", stem + "_2", "--threads", "1"});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(slurp(stem + "_2.csv"), csv);
}

TEST(Cli, SweepInlineFlagsAndFigure) {
    TempDir dir;
    const auto stem = (dir / "inline").string();
    auto r = run_cli({"sweep", "--quantity", "shift_p", "--pointer", "squeezed", "--axis1", "eta:0:1:2", "--axis2",
                      "delta:0:1:3", "--s", "0.3", "--out", stem});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(stem + ".meta.json"));
    const auto meta = nlohmann::json::parse(slurp(stem + ".meta.json"));
    EXPECT_EQ(meta.at("job").at("s").get<double>(), 0.3);

    r = run_cli({"sweep", "--figure", "fig1", "--axis1", "r:0:1:2", "--axis2", "phi_c:0:1:2", "--out", stem + "_fig"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto fig = nlohmann::json::parse(slurp(stem + "_fig.meta.json"));
    EXPECT_EQ(fig.at("job").at("quantity"), "chi_prime");

    EXPECT_EQ(run_cli({"sweep", "--figure", "fig9"}).code, 2);
    EXPECT_EQ(run_cli({"sweep", "--axis1", "eta:0:1:3"}).code, 2);
}
