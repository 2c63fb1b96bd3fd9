#include "sepfi/estimator_sim.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "sepfi/errors.hpp"
#include "sepfi/rng.hpp"

namespace sepfi {
namespace {

constexpr int kBrentBits = 30;           // about 1e-9 relative in d
constexpr std::uintmax_t kBrentMaxIter = 200;
constexpr int kScanPoints = 21;
constexpr double kBoundaryGuard = 1e-6;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2 pi))

double binary_log_lik(std::int64_t k, std::int64_t n, double prob)
{
    double value = 0.0;
    if (k > 0) value += static_cast<double>(k) * std::log(prob);
    if (n - k > 0) value += static_cast<double>(n - k) * std::log1p(-prob);
    return value;
}

double direct_log_lik(const std::vector<double>& x, double q, double d)
{
    const double log_bright = std::log1p(-q);
    const double log_dim = std::log(q);
    double total = 0.0;
    for (double xi : x) {
        const double a = log_bright - 0.5 * xi * xi;
        const double b = log_dim - 0.5 * (xi - d) * (xi - d);
        const double hi = std::max(a, b);
        total += hi + std::log1p(std::exp(std::min(a, b) - hi));
    }
    return total - static_cast<double>(x.size()) * kLogSqrt2Pi;
}

// Estimates within kBoundaryGuard of either end count as pinned, the same rule
// the direct-imaging search uses.
MleResult clamp_to_interval(double d_hat, SearchInterval search, MleResult result)
{
    result.d_hat = std::clamp(d_hat, search.lo, search.hi);
    result.boundary_hit =
        (result.d_hat - search.lo < kBoundaryGuard) || (search.hi - result.d_hat < kBoundaryGuard);
    return result;
}

MleResult mle_gaussian_mode(const CountSample& s, double q, SearchInterval search)
{
    MleResult r;
    r.converged = true;
    const double freq = static_cast<double>(s.k) / static_cast<double>(s.n);
    if (freq <= 1.0 - q) {
        // Fewer fundamental-mode photons than even infinitely separated sources allow.
        r.d_hat = search.hi;
        r.boundary_hit = true;
    } else {
        // P_G = 1 + q (exp(-d^2/4) - 1)  =>  d = 2 sqrt(-ln(1 + (f - 1) / q)).
        const double d_hat = 2.0 * std::sqrt(std::max(0.0, -std::log1p((freq - 1.0) / q)));
        r = clamp_to_interval(d_hat, search, r);
    }
    r.log_lik = binary_log_lik(s.k, s.n, p_gaussian({q, r.d_hat}));
    return r;
}

MleResult mle_zero_photon(const CountSample& s, double q, SearchInterval search)
{
    MleResult r;
    r.converged = true;
    // P_Z = 2 / (2 + q (1 - exp(-d^2/2)))  =>  d = sqrt(-2 ln(1 - (2/q)(n/k - 1))).
    const double excess = s.k > 0 ? (2.0 / q) * static_cast<double>(s.n - s.k) / static_cast<double>(s.k)
                                   : std::numeric_limits<double>::infinity();
    if (!(excess < 1.0)) {
        r.d_hat = search.hi;
        r.boundary_hit = true;
    } else {
        const double d_hat = std::sqrt(std::max(0.0, -2.0 * std::log1p(-excess)));
        r = clamp_to_interval(d_hat, search, r);
    }
    r.log_lik = binary_log_lik(s.k, s.n, p_zero({q, r.d_hat}));
    return r;
}

MleResult mle_direct(const DirectSample& s, double q, SearchInterval search)
{
    auto objective = [&](double d) { return direct_log_lik(s.x, q, d); };

    // Coarse scan to bracket the global maximum, then Brent inside the bracket.
    const double step = (search.hi - search.lo) / (kScanPoints - 1);
    int best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kScanPoints; ++i) {
        const double value = objective(search.lo + i * step);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }
    const double a = search.lo + std::max(best - 1, 0) * step;
    const double b = search.lo + std::min(best + 1, kScanPoints - 1) * step;

    std::uintmax_t iterations = kBrentMaxIter;
    const auto [d_hat, neg_log_lik] = boost::math::tools::brent_find_minima(
        [&](double d) { return -objective(d); }, a, b, kBrentBits, iterations);

    MleResult r;
    r.d_hat = d_hat;
    r.log_lik = -neg_log_lik;
    r.converged = iterations < kBrentMaxIter && std::isfinite(r.log_lik);
    r.boundary_hit = (r.d_hat - search.lo < kBoundaryGuard) || (search.hi - r.d_hat < kBoundaryGuard);
    return r;
}

}  // namespace

void validate_config(const SimConfig& config)
{
    validate_scene(config.scene);
    if (config.n < 100) throw DomainError("simulation needs n >= 100 samples per trial");
    if (config.trials < 10) throw DomainError("simulation needs trials >= 10");
    const auto& s = config.search;
    if (!(s.lo >= 0.0 && s.lo < config.scene.d && config.scene.d < s.hi && std::isfinite(s.hi))) {
        throw DomainError("search interval must satisfy 0 <= lo < d < hi");
    }
}

SampleData sample(const SimConfig& config, std::int64_t trial_index)
{
    validate_config(config);
    CounterRng rng(config.seed, static_cast<std::uint64_t>(trial_index));
    const Scene& scene = config.scene;
    switch (config.scheme) {
    case SchemeKind::Direct: {
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::normal_distribution<double> normal(0.0, 1.0);
        DirectSample out;
        out.x.resize(static_cast<std::size_t>(config.n));
        for (double& x : out.x) {
            const double center = uniform(rng) < scene.q ? scene.d : 0.0;
            x = center + normal(rng);
        }
        return out;
    }
    case SchemeKind::GaussianMode:
    case SchemeKind::ZeroPhoton: {
        const double prob =
            config.scheme == SchemeKind::GaussianMode ? p_gaussian(scene) : p_zero(scene);
        std::binomial_distribution<std::int64_t> binomial(config.n, prob);
        return CountSample{binomial(rng), config.n};
    }
    }
    throw DomainError("unknown scheme");
}

MleResult mle(SchemeKind scheme, const SampleData& data, double q, SearchInterval search)
{
    validate_scene({q, 0.0});
    if (!(search.lo >= 0.0 && search.lo < search.hi)) {
        throw DomainError("search interval must satisfy 0 <= lo < hi");
    }
    if (scheme == SchemeKind::Direct) {
        const auto* s = std::get_if<DirectSample>(&data);
        if (!s || s->x.empty()) throw DomainError("direct MLE needs a nonempty coordinate sample");
        return mle_direct(*s, q, search);
    }
    const auto* s = std::get_if<CountSample>(&data);
    if (!s || s->n <= 0 || s->k < 0 || s->k > s->n) {
        throw DomainError("binary MLE needs a count sample with 0 <= k <= n, n > 0");
    }
    return scheme == SchemeKind::GaussianMode ? mle_gaussian_mode(*s, q, search)
                                              : mle_zero_photon(*s, q, search);
}

TrialRecord run_trial(const SimConfig& config, std::int64_t trial_index)
{
    const SampleData data = sample(config, trial_index);
    TrialRecord rec;
    rec.trial_index = trial_index;
    if (const auto* direct = std::get_if<DirectSample>(&data)) {
        const double n = static_cast<double>(direct->x.size());
        double mean = 0.0;
        for (double x : direct->x) mean += x;
        mean /= n;
        double ss = 0.0;
        for (double x : direct->x) ss += (x - mean) * (x - mean);
        rec.summary = {static_cast<std::int64_t>(direct->x.size()), -1, mean, ss / (n - 1.0)};
    } else {
        const auto& counts = std::get<CountSample>(data);
        rec.summary = {counts.n, counts.k, 0.0, 0.0};
    }
    const MleResult r = mle(config.scheme, data, config.scene.q, config.search);
    rec.d_hat = r.d_hat;
    rec.converged = r.converged;
    rec.boundary_hit = r.boundary_hit;
    rec.log_lik_at_hat = r.log_lik;
    return rec;
}

std::vector<TrialRecord> run_trials(const SimConfig& config, std::size_t threads)
{
    validate_config(config);
    std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
    parallel_for(
        records.size(),
        [&](std::size_t i) { records[i] = run_trial(config, static_cast<std::int64_t>(i)); },
        threads);
    return records;
}

CrbReport summarize(const SimConfig& config, std::vector<TrialRecord> records)
{
    validate_config(config);
    CrbReport rep;
    rep.config = config;
    double sum = 0.0;
    for (const auto& r : records) {
        if (r.boundary_hit) ++rep.boundary_hits;
        if (r.converged && !r.boundary_hit) {
            ++rep.usable_trials;
            sum += r.d_hat;
        }
    }
    const auto total = static_cast<double>(records.size());
    rep.boundary_fraction = total > 0 ? rep.boundary_hits / total : 0.0;
    if (rep.usable_trials < 2 || rep.usable_trials < 0.8 * total) {
        throw SummaryRefused("only " + std::to_string(rep.usable_trials) + " of " +
                             std::to_string(records.size()) + " trials are usable (need 80%)");
    }
    rep.mean_d_hat = sum / rep.usable_trials;
    double ss = 0.0;
    for (const auto& r : records) {
        if (r.converged && !r.boundary_hit) ss += (r.d_hat - rep.mean_d_hat) * (r.d_hat - rep.mean_d_hat);
    }
    rep.variance = ss / (rep.usable_trials - 1);
    rep.fisher = cfi(config.scheme, config.scene);
    rep.crb = 1.0 / (static_cast<double>(config.n) * rep.fisher);
    rep.ratio = rep.variance / rep.crb;
    rep.records = std::move(records);
    return rep;
}

CrbReport crb_report(const SimConfig& config, std::size_t threads)
{
    return summarize(config, run_trials(config, threads));
}

}  // namespace sepfi
