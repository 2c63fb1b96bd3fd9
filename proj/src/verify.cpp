#include "sepfi/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "sepfi/classical_fisher.hpp"
#include "sepfi/errors.hpp"
#include "sepfi/grid_oracle.hpp"
#include "sepfi/quantum_fisher.hpp"
#include "sepfi/spectral.hpp"
#include "sepfi/sweep.hpp"

namespace sepfi {
namespace {

const std::vector<double> kPanelQ{0.1, 0.3, 0.5, 0.7, 0.9};

using Check = std::function<std::string()>;  // returns "" on success, else a reason

CheckResult run_check(const std::string& group, const std::string& name, const Check& check)
{
    CheckResult r{group, name, false, {}};
    try {
        r.detail = check();
        r.passed = r.detail.empty();
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    return r;
}

std::string describe(const char* what, double q, double d, double got, double want)
{
    std::ostringstream os;
    os.precision(12);
    os << what << " at q=" << q << " d=" << d << ": " << got << " vs " << want;
    return os.str();
}

void oracle_checks(const VerifyOptions& opt, std::vector<CheckResult>& out)
{
    for (double q : kPanelQ) {
        for (double d : {0.2, 0.5, 1.0, 2.0, 3.0, 5.0}) {
            std::ostringstream name;
            name << "qfi vs grid oracle q=" << q << " d=" << d;
            out.push_back(run_check("oracle", name.str(), [&] {
                const double analytic = qfi({q, d});
                const double grid = qfi_grid({q, d}, GridSpec::covering(d, opt.grid_n, opt.fd_step));
                return std::abs(grid - analytic) <= 1e-6 * analytic
                           ? std::string()
                           : describe("relative mismatch", q, d, grid, analytic);
            }));
        }
    }
}

struct Probe {
    const char* name;
    std::function<double(double, double)> value;
    std::function<double(double, double)> slope;
};

std::vector<Probe> derivative_probes()
{
    return {
        {"overlap", [](double, double d) { return overlap(d); },
         [](double, double d) { return overlap_derivative(d); }},
        {"Delta", [](double q, double d) { return decompose({q, d}).big_delta; },
         [](double q, double d) { return decompose({q, d}).d_big_delta; }},
        {"lambda1", [](double q, double d) { return decompose({q, d}).lambda1; },
         [](double q, double d) { return decompose({q, d}).d_lambda1; }},
        {"lambda2", [](double q, double d) { return decompose({q, d}).lambda2; },
         [](double q, double d) { return decompose({q, d}).d_lambda2; }},
        {"A1", [](double q, double d) { return decompose({q, d}).a1; },
         [](double q, double d) { return decompose({q, d}).d_a1; }},
        {"B1", [](double q, double d) { return decompose({q, d}).b1; },
         [](double q, double d) { return decompose({q, d}).d_b1; }},
        {"A2", [](double q, double d) { return decompose({q, d}).a2; },
         [](double q, double d) { return decompose({q, d}).d_a2; }},
        {"B2", [](double q, double d) { return decompose({q, d}).b2; },
         [](double q, double d) { return decompose({q, d}).d_b2; }},
        {"P_G", [](double q, double d) { return p_gaussian({q, d}); },
         [](double q, double d) { return p_gaussian_derivative({q, d}); }},
        {"P_Z", [](double q, double d) { return p_zero({q, d}); },
         [](double q, double d) { return p_zero_derivative({q, d}); }},
        {"N_a", [](double q, double d) { return mean_antisym_photons({q, d}); },
         [](double q, double d) { return mean_antisym_photons_derivative({q, d}); }},
    };
}

void derivative_checks(std::vector<CheckResult>& out)
{
    std::mt19937_64 engine(20240607);
    std::uniform_real_distribution<double> q_dist(0.05, 0.95);
    std::uniform_real_distribution<double> d_dist(0.1, 5.0);
    std::vector<std::pair<double, double>> draws(20);
    for (auto& [q, d] : draws) {
        q = q_dist(engine);
        d = d_dist(engine);
    }
    const double h = 1e-5;
    for (const auto& probe : derivative_probes()) {
        out.push_back(run_check("derivatives", std::string("d/dd ") + probe.name, [&] {
            for (const auto& [q, d] : draws) {
                const double fd = (probe.value(q, d + h) - probe.value(q, d - h)) / (2.0 * h);
                const double an = probe.slope(q, d);
                if (std::abs(fd - an) > 1e-6 * std::abs(an) + 1e-12) {
                    return describe(probe.name, q, d, an, fd);
                }
            }
            return std::string();
        }));
    }
}

void limit_checks(std::vector<CheckResult>& out)
{
    const double d = 1e-3;
    for (double q : {0.1, 0.3, 0.7, 0.9}) {
        std::ostringstream name;
        name << "d->0 limits q=" << q;
        out.push_back(run_check("limits", name.str(), [&] {
            const Scene s{q, d};
            if (std::abs(cfi_gaussian(s) - q) >= 1e-3) return describe("CFI_G", q, d, cfi_gaussian(s), q);
            if (std::abs(cfi_zero(s) - q) >= 1e-3) return describe("CFI_Z", q, d, cfi_zero(s), q);
            if (std::abs(cfi_direct(s) - q * q) >= 1e-3) return describe("CFI_D", q, d, cfi_direct(s), q * q);
            if (std::abs(qfi(s) - q) >= 1e-3) return describe("QFI", q, d, qfi(s), q);
            return std::string();
        }));
    }
}

void dominance_checks(std::vector<CheckResult>& out)
{
    for (double q : kPanelQ) {
        std::ostringstream name;
        name << "every CFI <= QFI q=" << q;
        out.push_back(run_check("dominance", name.str(), [&] {
            for (double d : separation_grid(0.01, 8.0, 160, false)) {
                const double bound = qfi({q, d}) + 1e-9;
                for (SchemeKind s : {SchemeKind::Direct, SchemeKind::GaussianMode, SchemeKind::ZeroPhoton}) {
                    const double f = cfi(s, {q, d});
                    if (f > bound) return describe(std::string(to_string(s)).c_str(), q, d, f, bound);
                }
            }
            return std::string();
        }));
        std::ostringstream name2;
        name2 << "gaussian >= zero-photon on (0, 0.5] q=" << q;
        out.push_back(run_check("dominance", name2.str(), [&] {
            for (double d : separation_grid(0.02, 0.5, 25, false)) {
                if (cfi_gaussian({q, d}) < cfi_zero({q, d})) {
                    return describe("CFI_G < CFI_Z", q, d, cfi_gaussian({q, d}), cfi_zero({q, d}));
                }
            }
            return std::string();
        }));
        std::ostringstream name3;
        name3 << "binary schemes beat direct imaging on (0, 0.25] q=" << q;
        out.push_back(run_check("dominance", name3.str(), [&] {
            for (double d : separation_grid(0.01, 0.25, 25, false)) {
                const double direct = cfi_direct({q, d});
                if (cfi_zero({q, d}) < direct) return describe("CFI_Z < CFI_D", q, d, cfi_zero({q, d}), direct);
            }
            return std::string();
        }));
    }
}

void saturation_checks(std::vector<CheckResult>& out)
{
    for (double q : kPanelQ) {
        std::ostringstream name;
        name << "CFI_G / QFI >= 0.99 on [0.01, 0.28], d* in [0.25, 0.32] q=" << q;
        out.push_back(run_check("saturation", name.str(), [&] {
            for (double d : separation_grid(0.01, 0.28, 50, true)) {
                const double r = cfi_gaussian({q, d}) / qfi({q, d});
                if (r < 0.99) return describe("ratio", q, d, r, 0.99);
            }
            const double d_star = refine_saturation_threshold(q, 0.01, 1.0);
            if (d_star < 0.25 || d_star > 0.32) return describe("d*", q, 0.0, d_star, 0.283);
            return std::string();
        }));
    }
}

void invariant_checks(std::vector<CheckResult>& out)
{
    out.push_back(run_check("invariants", "spectral norms, orthogonality, determinant", [] {
        for (double q : kPanelQ) {
            for (double d : {0.05, 0.2, 1.0, 2.0, 5.0}) {
                const auto s = decompose({q, d});
                const double delta = overlap(d);
                const double n1 = s.a1 * s.a1 + s.b1 * s.b1 + 2 * delta * s.a1 * s.b1;
                const double n2 = s.a2 * s.a2 + s.b2 * s.b2 + 2 * delta * s.a2 * s.b2;
                const double o = s.a1 * s.a2 + s.b1 * s.b2 + delta * (s.a1 * s.b2 + s.a2 * s.b1);
                const double det = q * (1 - q) * (1 - delta * delta);
                if (std::abs(n1 - 1) > 1e-12 || std::abs(n2 - 1) > 1e-12 || std::abs(o) > 1e-12 ||
                    std::abs(s.lambda1 * s.lambda2 - det) > 1e-12) {
                    return describe("spectral identity", q, d, n1, n2);
                }
            }
        }
        return std::string();
    }));
    out.push_back(run_check("invariants", "QFI continuous across the small-d switch", [] {
        for (double q : kPanelQ) {
            const double lo = qfi({q, 0.05 - 1e-6});
            const double hi = qfi({q, 0.05 + 1e-6});
            if (std::abs(lo - hi) >= 1e-7) return describe("seam jump", q, 0.05, lo, hi);
        }
        return std::string();
    }));
    out.push_back(run_check("invariants", "QFI minimum near d = 2", [] {
        const auto grid = separation_grid(0.1, 5.0, 201, false);
        for (double q : kPanelQ) {
            const auto curve = qfi_curve(q, grid);
            const auto it = std::min_element(curve.points.begin(), curve.points.end(),
                                             [](auto a, auto b) { return a.value < b.value; });
            if (it->d < 1.5 || it->d > 2.5) return describe("argmin", q, it->d, it->value, 2.0);
        }
        return std::string();
    }));
    out.push_back(run_check("invariants", "QFI increases with q", [] {
        for (double d : {0.5, 1.0, 2.0, 3.0}) {
            double prev = -1.0;
            for (double q : {0.1, 0.3, 0.7, 0.9}) {
                const double v = qfi({q, d});
                if (!(v > prev)) return describe("not increasing", q, d, v, prev);
                prev = v;
            }
        }
        return std::string();
    }));
}

bool selected(const VerifyOptions& opt, const std::string& group)
{
    return opt.subset.empty() || std::find(opt.subset.begin(), opt.subset.end(), group) != opt.subset.end();
}

}  // namespace

const std::vector<std::string>& verify_groups()
{
    static const std::vector<std::string> groups{"oracle",    "derivatives", "limits",
                                                 "dominance", "saturation",  "invariants"};
    return groups;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options)
{
    for (const auto& g : options.subset) {
        if (std::find(verify_groups().begin(), verify_groups().end(), g) == verify_groups().end()) {
            throw DomainError("unknown verify subset '" + g + "'");
        }
    }
    std::vector<CheckResult> out;
    if (selected(options, "oracle")) oracle_checks(options, out);
    if (selected(options, "derivatives")) derivative_checks(out);
    if (selected(options, "limits")) limit_checks(out);
    if (selected(options, "dominance")) dominance_checks(out);
    if (selected(options, "saturation")) saturation_checks(out);
    if (selected(options, "invariants")) invariant_checks(out);
    return out;
}

}  // namespace sepfi
