#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "sepfi/classical_fisher.hpp"
#include "sepfi/parallel.hpp"
#include "sepfi/scene.hpp"

namespace sepfi {

struct SearchInterval {
    double lo = 0.0;
    double hi = 10.0;
};

/// One Monte Carlo experiment: `trials` independent records of `n` detections each.
struct SimConfig {
    SchemeKind scheme = SchemeKind::GaussianMode;
    Scene scene{0.3, 1.0};  ///< true parameters; q is known to the estimator
    std::int64_t n = 100000;
    int trials = 200;
    std::uint64_t seed = 2024;
    SearchInterval search{};
};

/// Throws DomainError unless n >= 100, trials >= 10 and lo <= d within (lo, hi).
void validate_config(const SimConfig& config);

/// Image-plane coordinates of the detected photons.
struct DirectSample {
    std::vector<double> x;
};

/// Number of "success" outcomes (Gaussian mode / zero photons) out of n.
struct CountSample {
    std::int64_t k = 0;
    std::int64_t n = 0;
};

using SampleData = std::variant<DirectSample, CountSample>;

/// Draws the detection record of one trial from its own RNG stream.
SampleData sample(const SimConfig& config, std::int64_t trial_index);

struct MleResult {
    double d_hat = 0.0;
    bool converged = false;
    bool boundary_hit = false;  ///< estimate pinned to the search interval or outside the model range
    double log_lik = 0.0;
};

/// Maximum-likelihood separation for known q.
///
/// Binary schemes invert the outcome probability in closed form. Direct
/// imaging maximizes the mixture log-likelihood by a coarse scan followed by
/// golden-section search to 1e-8 in d.
MleResult mle(SchemeKind scheme, const SampleData& data, double q, SearchInterval search);

struct SampleSummary {
    std::int64_t n = 0;
    std::int64_t successes = -1;  ///< binary schemes only
    double mean = 0.0;            ///< direct imaging only
    double variance = 0.0;        ///< direct imaging only
};

struct TrialRecord {
    std::int64_t trial_index = 0;
    SampleSummary summary;
    double d_hat = 0.0;
    bool converged = false;
    bool boundary_hit = false;
    double log_lik_at_hat = 0.0;
};

TrialRecord run_trial(const SimConfig& config, std::int64_t trial_index);

/// All trials of the configuration, in trial order; identical for any thread count.
std::vector<TrialRecord> run_trials(const SimConfig& config,
                                    std::size_t threads = default_thread_count());

struct CrbReport {
    SimConfig config;
    int usable_trials = 0;   ///< converged and not boundary-hit
    int boundary_hits = 0;
    double boundary_fraction = 0.0;
    double mean_d_hat = 0.0;
    double variance = 0.0;   ///< unbiased variance of d_hat over usable trials
    double fisher = 0.0;     ///< per-detection information of the scheme at the true scene
    double crb = 0.0;        ///< 1 / (n F)
    double ratio = 0.0;      ///< variance / crb
    std::vector<TrialRecord> records;
};

/// Throws SummaryRefused when fewer than 80% of the trials are usable.
CrbReport summarize(const SimConfig& config, std::vector<TrialRecord> records);

CrbReport crb_report(const SimConfig& config, std::size_t threads = default_thread_count());

}  // namespace sepfi
