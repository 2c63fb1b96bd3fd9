#include "sepfi/spectral.hpp"

#include <cmath>
#include <string>

#include "sepfi/errors.hpp"

namespace sepfi {
namespace {

// Radicands within rounding of zero are clamped; anything more negative is a bug.
double checked_sqrt(double radicand, const char* what)
{
    if (radicand < 0.0) {
        if (radicand < -1e-14) {
            throw InternalConsistencyError(std::string("negative radicand for ") + what + ": " +
                                           std::to_string(radicand));
        }
        return 0.0;
    }
    return std::sqrt(radicand);
}

struct Pieces {
    double s;         // 1 - 2q
    double p;         // 4q(1-q) = 1 - s^2
    double delta;     // <0|d>
    double delta_p;   // d/dd <0|d>
    double big;       // Delta
    double one_minus; // 1 - Delta
    double plus_s;    // Delta + s
    double minus_s;   // Delta - s
    double d_big;     // d/dd Delta
};

Pieces pieces(const Scene& scene)
{
    validate_scene(scene);
    Pieces pc{};
    pc.s = 1.0 - 2.0 * scene.q;
    pc.p = 4.0 * scene.q * (1.0 - scene.q);
    pc.delta = overlap(scene.d);
    pc.delta_p = overlap_derivative(scene.d);
    const double omega = overlap_gap(scene.d);

    const double pd2 = pc.p * pc.delta * pc.delta;  // Delta^2 - s^2
    pc.big = checked_sqrt(pc.s * pc.s + pd2, "Delta");
    if (pc.big == 0.0) {
        throw DomainError("separation too large: eigenvalues coincide to double precision");
    }
    pc.one_minus = pc.p * omega / (1.0 + pc.big);
    if (pc.s >= 0.0) {
        pc.plus_s = pc.big + pc.s;
        pc.minus_s = pd2 / pc.plus_s;
    } else {
        pc.minus_s = pc.big - pc.s;
        pc.plus_s = pd2 / pc.minus_s;
    }
    pc.d_big = pc.p * pc.delta * pc.delta_p / pc.big;
    return pc;
}

}  // namespace

double big_delta(const Scene& scene)
{
    return pieces(scene).big;
}

EigenvalueData eigenvalues(const Scene& scene)
{
    const Pieces pc = pieces(scene);
    EigenvalueData ev;
    ev.big_delta = pc.big;
    ev.lambda1 = 0.5 * (1.0 + pc.big);
    ev.lambda2 = 0.5 * pc.one_minus;
    ev.d_big_delta = pc.d_big;
    ev.d_lambda1 = 0.5 * pc.d_big;
    ev.d_lambda2 = -0.5 * pc.d_big;
    return ev;
}

SpectralData decompose(const Scene& scene)
{
    const Pieces pc = pieces(scene);
    const double q = scene.q;

    SpectralData sd;
    sd.big_delta = pc.big;
    sd.lambda1 = 0.5 * (1.0 + pc.big);
    sd.lambda2 = 0.5 * pc.one_minus;
    sd.d_big_delta = pc.d_big;
    sd.d_lambda1 = 0.5 * pc.d_big;
    sd.d_lambda2 = -0.5 * pc.d_big;

    if (sd.lambda2 < kMinLambda2) {
        throw DegenerateDecomposition("lambda2 = " + std::to_string(sd.lambda2) +
                                      " below 1e-14 at d = " + std::to_string(scene.d));
    }

    const double den1 = pc.big * (1.0 + pc.big);
    const double den2 = pc.big * pc.one_minus;
    sd.a1 = checked_sqrt((1.0 - q) * pc.plus_s / den1, "A1");
    sd.b1 = checked_sqrt(q * pc.minus_s / den1, "B1");
    sd.a2 = checked_sqrt((1.0 - q) * pc.minus_s / den2, "A2");
    sd.b2 = -checked_sqrt(q * pc.plus_s / den2, "B2");

    // Each coefficient is sqrt(N(Delta) / D(Delta)); its derivative is the
    // coefficient times half the log-derivative. The Delta' / (Delta -+ s)
    // pieces are rewritten through Delta^2 - s^2 = p delta^2 so that they stay
    // finite when delta underflows.
    const double quarter_d = 0.25 * scene.d;
    const double g_plus = -quarter_d * pc.minus_s / pc.big;   // Delta' / (Delta + s)
    const double g_minus = -quarter_d * pc.plus_s / pc.big;   // Delta' / (Delta - s)
    const double h1 = pc.d_big * (1.0 + 2.0 * pc.big) / den1;
    const double h2 = pc.d_big * (1.0 - 2.0 * pc.big) / den2;
    sd.d_a1 = 0.5 * sd.a1 * (g_plus - h1);
    sd.d_b1 = 0.5 * sd.b1 * (g_minus - h1);
    sd.d_a2 = 0.5 * sd.a2 * (g_minus - h2);
    sd.d_b2 = 0.5 * sd.b2 * (g_plus - h2);
    return sd;
}

}  // namespace sepfi
