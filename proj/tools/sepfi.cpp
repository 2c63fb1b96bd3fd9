// sepfi: Fisher-information sweeps, CRB simulations and the verification matrix.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "sepfi/classical_fisher.hpp"
#include "sepfi/errors.hpp"
#include "sepfi/estimator_sim.hpp"
#include "sepfi/parallel.hpp"
#include "sepfi/report.hpp"
#include "sepfi/sweep.hpp"
#include "sepfi/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Output is rendered to a buffer first so a failed run never leaves a half-written file.
void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw sepfi::Error("cannot open output file '" + path + "'");
    file << text;
    file.close();
    if (!file) throw sepfi::Error("failed writing output file '" + path + "'");
}

int run_sweep_command(const sepfi::SweepRequest& request, const std::string& format, const std::string& out)
{
    const auto fmt = sepfi::parse_format(format);
    const auto result = sepfi::run_sweep(request);
    std::ostringstream buf;
    if (fmt == sepfi::OutputFormat::Csv) {
        sepfi::write_csv(result, buf);
        for (const auto& t : result.thresholds) {
            std::cerr << "d* q=" << sepfi::format_number(t.q) << ": "
                      << (t.d_star ? sepfi::format_number(*t.d_star) : std::string("none")) << '\n';
        }
    } else {
        sepfi::write_json(result, buf);
    }
    emit(buf.str(), out);
    return 0;
}

int run_simulate_command(const sepfi::SimConfig& config, const std::string& format, bool per_trial,
                         const std::string& out)
{
    const auto fmt = sepfi::parse_format(format);
    const auto report = sepfi::crb_report(config);
    std::ostringstream buf;
    sepfi::write_sim_report(report, fmt, per_trial, buf);
    emit(buf.str(), out);
    return 0;
}

int run_verify_command(const sepfi::VerifyOptions& options)
{
    const auto results = sepfi::run_verify(options);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << " [" << r.group << "] " << r.name;
        if (!r.passed) std::cout << " -- " << r.detail;
        std::cout << '\n';
        failed += r.passed ? 0 : 1;
    }
    std::cout << results.size() - failed << '/' << results.size() << " checks passed\n";
    if (failed > 0) {
        std::cout << "failing checks:\n";
        for (const auto& r : results) {
            if (!r.passed) std::cout << "  [" << r.group << "] " << r.name << '\n';
        }
        return kExitFailure;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fisher information for the separation of two unequal-brightness point sources"};
    app.set_version_flag("--version", std::string(sepfi::kVersion));
    app.require_subcommand(1);

    std::string format = "csv";
    std::string out;

    sepfi::SweepRequest request;
    auto* sweep = app.add_subcommand("sweep", "Fisher-information curves over a separation grid");
    sweep->add_option("--q", request.q_list, "Relative brightness values")->delimiter(',');
    sweep->add_option("--d-min", request.d_min, "Smallest separation")->capture_default_str();
    sweep->add_option("--d-max", request.d_max, "Largest separation")->capture_default_str();
    sweep->add_option("--steps", request.d_steps, "Number of grid points")->capture_default_str();
    sweep->add_flag("--log", request.log_spacing, "Geometric instead of linear spacing");
    sweep->add_option("--kinds", request.kinds,
                      "QFI, CFI-direct, CFI-gaussian, CFI-zero, grid-oracle-QFI, ratio")
        ->delimiter(',');
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out, "Output path (default: stdout)");

    sepfi::SimConfig config;
    std::string scheme = "gaussian";
    bool per_trial = false;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo MLE variance against the Cramer-Rao bound");
    simulate->add_option("--scheme", scheme, "direct, gaussian or zero")
        ->check(CLI::IsMember({"direct", "gaussian", "zero"}))
        ->capture_default_str();
    simulate->add_option("--q", config.scene.q, "Relative brightness")->capture_default_str();
    simulate->add_option("--d", config.scene.d, "True separation")->capture_default_str();
    simulate->add_option("--n", config.n, "Detections (or modes) per trial")->capture_default_str();
    simulate->add_option("--trials", config.trials, "Number of trials")->capture_default_str();
    simulate->add_option("--seed", config.seed, "Root seed")->capture_default_str();
    simulate->add_option("--d-min", config.search.lo, "Lower end of the MLE search interval")->capture_default_str();
    simulate->add_option("--d-max", config.search.hi, "Upper end of the MLE search interval")->capture_default_str();
    simulate->add_flag("--per-trial", per_trial, "Append one record per trial");
    simulate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    simulate->add_option("--out", out, "Output path (default: stdout)");

    sepfi::VerifyOptions verify_options;
    auto* verify = app.add_subcommand("verify", "Run the cross-validation matrix");
    verify->add_option("--subset", verify_options.subset,
                       "oracle, derivatives, limits, dominance, saturation, invariants")
        ->delimiter(',')
        ->check(CLI::IsMember(sepfi::verify_groups()));
    verify->add_option("--fd-step", verify_options.fd_step, "Oracle finite-difference step")->capture_default_str();
    verify->add_option("--grid-n", verify_options.grid_n, "Oracle grid size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*sweep) return run_sweep_command(request, format, out);
        if (*simulate) {
            config.scheme = sepfi::parse_scheme(scheme);
            return run_simulate_command(config, format, per_trial, out);
        }
        return run_verify_command(verify_options);
    } catch (const std::exception& e) {
        std::cerr << "sepfi: error: " << e.what() << '\n';
        return kExitFailure;
    }
}
