// Acceptance run: one PASS/FAIL line per criterion, each with its measured
// quantity and wall time against the runtime limit. Exit status is nonzero
// when any criterion fails.

#include <boost/math/tools/minima.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sepfi/classical_fisher.hpp"
#include "sepfi/estimator_sim.hpp"
#include "sepfi/grid_oracle.hpp"
#include "sepfi/quantum_fisher.hpp"
#include "sepfi/spectral.hpp"
#include "sepfi/sweep.hpp"

#ifndef SEPFI_CLI_PATH
#error "SEPFI_CLI_PATH must name the sepfi executable"
#endif

namespace {

const std::vector<double> kAllQ{0.1, 0.3, 0.5, 0.7, 0.9};
const std::vector<double> kPanelQ{0.1, 0.3, 0.7, 0.9};

struct Outcome {
    bool ok = true;
    std::string note;  // measured values, first failure
};

std::string fmt(double v, int digits = 6)
{
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < limit_s;
    const bool pass = out.ok && in_time;
    failures += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " | " << out.note << " | "
              << fmt(elapsed, 3) << " s (limit " << limit_s << " s" << (in_time ? "" : ", EXCEEDED") << ")"
              << std::endl;
}

std::string run_cli(const std::string& threads, const std::string& args)
{
    const std::string cmd = "SEPFI_THREADS=" + threads + " '" SEPFI_CLI_PATH "' " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot start " + cmd);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    if (pclose(pipe) != 0) throw std::runtime_error("nonzero exit from " + cmd);
    return out;
}

}  // namespace

int main()
{
    std::cout.setf(std::ios::boolalpha);

    criterion(1, "CFI_G/QFI >= 0.99 on 50 log-spaced d in [0.01, 0.283]; emitted d* in [0.25, 0.32]", 5.0, [] {
        Outcome out;
        std::ostringstream note;
        sepfi::SweepRequest rq;
        rq.q_list = kAllQ;
        rq.d_min = 0.01;
        rq.d_max = 0.283;
        rq.d_steps = 50;
        rq.log_spacing = true;
        rq.kinds = {sepfi::kRatioKind};
        const auto res = sepfi::run_sweep(rq);
        int below = 0;
        double worst = 1.0, worst_d = 0.0, worst_q = 0.0;
        for (const auto& row : res.rows) {
            if (row.value < 0.99) ++below;
            if (row.value < worst) {
                worst = row.value;
                worst_d = row.d;
                worst_q = row.q;
            }
        }
        note << "points below 0.99: " << below << "/" << res.rows.size() << ", min ratio " << fmt(worst, 7)
             << " at q=" << worst_q << " d=" << fmt(worst_d) << "; d*:";
        bool star_ok = true;
        for (const auto& t : res.thresholds) {
            note << " q=" << t.q << "->" << (t.d_star ? fmt(*t.d_star, 5) : std::string("none"));
            star_ok = star_ok && t.d_star && *t.d_star >= 0.25 && *t.d_star <= 0.32;
        }
        note << "; continuous d*:";
        for (double q : kAllQ) note << ' ' << fmt(sepfi::refine_saturation_threshold(q, 0.01, 1.0), 5);
        out.ok = below == 0 && star_ok;
        out.note = note.str();
        return out;
    });

    criterion(2, "argmin_d QFI over [0.1, 5] (201 points + refinement) in [1.5, 2.5]", 5.0, [] {
        Outcome out;
        std::ostringstream note;
        const auto grid = sepfi::separation_grid(0.1, 5.0, 201, false);
        for (double q : kAllQ) {
            const auto curve = sepfi::qfi_curve(q, grid);
            std::size_t best = 0;
            for (std::size_t i = 1; i < curve.points.size(); ++i) {
                if (curve.points[i].value < curve.points[best].value) best = i;
            }
            const double lo = grid[best == 0 ? 0 : best - 1];
            const double hi = grid[std::min(best + 1, grid.size() - 1)];
            const auto [d_min, f_min] =
                boost::math::tools::brent_find_minima([q](double d) { return sepfi::qfi({q, d}); }, lo, hi, 40);
            note << "q=" << q << ": " << fmt(d_min, 8) << "; ";
            out.ok = out.ok && d_min >= 1.5 && d_min <= 2.5;
        }
        out.note = note.str();
        return out;
    });

    criterion(3, "QFI(0.1) < QFI(0.3) < QFI(0.7) < QFI(0.9) at d in {0.5, 1, 2, 3}", 1.0, [] {
        Outcome out;
        std::ostringstream note;
        for (double d : {0.5, 1.0, 2.0, 3.0}) {
            note << "d=" << d << ":";
            double prev = -1.0;
            for (double q : kPanelQ) {
                const double v = sepfi::qfi({q, d});
                note << ' ' << fmt(v, 5);
                out.ok = out.ok && v > prev;
                prev = v;
            }
            note << "; ";
        }
        out.note = note.str();
        return out;
    });

    criterion(4, "analytic QFI vs grid oracle, relative 1e-6 (n=2048, fd_step=1e-4), 30 points", 60.0, [] {
        Outcome out;
        double worst = 0.0;
        std::string where;
        for (double q : kAllQ) {
            for (double d : {0.2, 0.5, 1.0, 2.0, 3.0, 5.0}) {
                const double a = sepfi::qfi({q, d});
                const double g = sepfi::qfi_grid({q, d}, sepfi::GridSpec::covering(d, 2048, 1e-4));
                const double rel = std::abs(g - a) / a;
                if (rel > worst) {
                    worst = rel;
                    where = "q=" + fmt(q) + " d=" + fmt(d);
                }
            }
        }
        out.ok = worst <= 1e-6;
        out.note = "max relative deviation " + fmt(worst, 3) + " at " + where;
        return out;
    });

    criterion(5, "d=1e-3 limits: |CFI_G-q|, |CFI_Z-q|, |CFI_D-q^2|, |QFI-q| < 1e-3", 5.0, [] {
        Outcome out;
        double worst = 0.0;
        for (double q : kPanelQ) {
            const sepfi::Scene s{q, 1e-3};
            for (double dev : {std::abs(sepfi::cfi_gaussian(s) - q), std::abs(sepfi::cfi_zero(s) - q),
                               std::abs(sepfi::cfi_direct(s) - q * q), std::abs(sepfi::qfi(s) - q)}) {
                worst = std::max(worst, dev);
            }
        }
        out.ok = worst < 1e-3;
        out.note = "max deviation " + fmt(worst, 3);
        return out;
    });

    criterion(6, "CFI_G >= CFI_Z >= CFI_D and all <= QFI + 1e-9 on 25 points of (0, 0.5]", 10.0, [] {
        Outcome out;
        std::ostringstream note;
        for (double q : kAllQ) {
            int violations = 0;
            double first = 0.0;
            for (int k = 1; k <= 25; ++k) {
                const double d = 0.02 * k;
                const sepfi::Scene s{q, d};
                const double g = sepfi::cfi_gaussian(s), z = sepfi::cfi_zero(s), dir = sepfi::cfi_direct(s);
                const double bound = sepfi::qfi(s) + 1e-9;
                const bool ok = g >= z && z >= dir && g <= bound && z <= bound && dir <= bound;
                if (!ok && violations++ == 0) first = d;
            }
            note << "q=" << q << ": " << violations << " violations";
            if (violations > 0) note << " (first at d=" << fmt(first) << ")";
            note << "; ";
            out.ok = out.ok && violations == 0;
        }
        out.note = note.str();
        return out;
    });

    criterion(7, "analytic derivatives vs central differences (h=1e-5), relative 1e-6, 20 seeded draws", 5.0, [] {
        Outcome out;
        std::mt19937_64 rng(20240607);
        std::uniform_real_distribution<double> uq(0.05, 0.95), ud(0.1, 5.0);
        const double h = 1e-5;
        double worst = 0.0;
        std::string where;
        auto check = [&](const char* name, double q, double d, double analytic, double lo, double hi) {
            const double fd = (hi - lo) / (2 * h);
            // Relative criterion; the 1e-12 floor only matters for an exactly vanishing derivative.
            const double rel = std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-12);
            if (rel > worst) {
                worst = rel;
                where = std::string(name) + " at q=" + fmt(q) + " d=" + fmt(d);
            }
        };
        for (int i = 0; i < 20; ++i) {
            const double q = uq(rng), d = ud(rng);
            const auto s = sepfi::decompose({q, d});
            const auto m = sepfi::decompose({q, d - h});
            const auto p = sepfi::decompose({q, d + h});
            check("delta'", q, d, sepfi::overlap_derivative(d), sepfi::overlap(d - h), sepfi::overlap(d + h));
            check("Delta'", q, d, s.d_big_delta, m.big_delta, p.big_delta);
            check("lambda1'", q, d, s.d_lambda1, m.lambda1, p.lambda1);
            check("lambda2'", q, d, s.d_lambda2, m.lambda2, p.lambda2);
            check("A1'", q, d, s.d_a1, m.a1, p.a1);
            check("B1'", q, d, s.d_b1, m.b1, p.b1);
            check("A2'", q, d, s.d_a2, m.a2, p.a2);
            check("B2'", q, d, s.d_b2, m.b2, p.b2);
            check("P_G'", q, d, sepfi::p_gaussian_derivative({q, d}), sepfi::p_gaussian({q, d - h}),
                  sepfi::p_gaussian({q, d + h}));
            check("P_Z'", q, d, sepfi::p_zero_derivative({q, d}), sepfi::p_zero({q, d - h}),
                  sepfi::p_zero({q, d + h}));
        }
        out.ok = worst <= 1e-6;
        out.note = "max relative deviation " + fmt(worst, 3) + " (" + where + ")";
        return out;
    });

    criterion(8, "var(d_hat) n F in [0.85, 1.20], boundary fraction < 1%, n=1e5, 200 trials", 120.0, [] {
        Outcome out;
        std::ostringstream note;
        for (auto scheme : {sepfi::SchemeKind::Direct, sepfi::SchemeKind::GaussianMode, sepfi::SchemeKind::ZeroPhoton}) {
            for (const sepfi::Scene scene : {sepfi::Scene{0.3, 1.0}, sepfi::Scene{0.7, 2.0}}) {
                sepfi::SimConfig cfg;
                cfg.scheme = scheme;
                cfg.scene = scene;
                cfg.n = 100000;
                cfg.trials = 200;
                cfg.seed = 2024;
                const auto rep = sepfi::crb_report(cfg);
                note << sepfi::to_string(scheme) << "(" << scene.q << "," << scene.d << ")=" << fmt(rep.ratio, 4)
                     << " hits " << rep.boundary_fraction << "; ";
                out.ok = out.ok && rep.ratio >= 0.85 && rep.ratio <= 1.20 && rep.boundary_fraction < 0.01;
            }
        }
        out.note = note.str();
        return out;
    });

    criterion(9, "simulate output byte-identical across runs and SEPFI_THREADS=1/4", 60.0, [] {
        Outcome out;
        std::ostringstream note;
        const std::vector<std::string> runs{
            "simulate --scheme gaussian --q 0.3 --d 1 --seed 2024 --per-trial",
            "simulate --scheme zero --q 0.7 --d 2 --seed 2024 --per-trial --format json",
            "simulate --scheme direct --q 0.3 --d 1 --trials 20 --seed 2024 --per-trial",
        };
        for (const auto& args : runs) {
            const std::string a = run_cli("1", args);
            const std::string b = run_cli("1", args);
            const std::string c = run_cli("4", args);
            const bool same = !a.empty() && a == b && a == c;
            note << (same ? "identical" : "DIFFERENT") << " (" << a.size() << " bytes); ";
            out.ok = out.ok && same;
        }
        out.note = note.str();
        return out;
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
