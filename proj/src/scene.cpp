#include "sepfi/scene.hpp"

#include <cmath>
#include <string>

#include "sepfi/errors.hpp"

namespace sepfi {

void validate_separation(double d)
{
    if (!std::isfinite(d) || d < 0.0) {
        throw DomainError("separation must be finite and >= 0, got " + std::to_string(d));
    }
}

void validate_scene(const Scene& scene)
{
    validate_separation(scene.d);
    if (!(scene.q >= kBrightnessMargin && scene.q <= 1.0 - kBrightnessMargin)) {
        throw DomainError("brightness q must lie in [1e-9, 1 - 1e-9], got " +
                          std::to_string(scene.q));
    }
}

void validate_scene_closed(const Scene& scene)
{
    validate_separation(scene.d);
    if (!(scene.q >= 0.0 && scene.q <= 1.0)) {
        throw DomainError("brightness q must lie in [0, 1], got " + std::to_string(scene.q));
    }
}

double overlap(double d)
{
    validate_separation(d);
    return std::exp(-d * d / 8.0);
}

double overlap_derivative(double d)
{
    validate_separation(d);
    return -0.25 * d * std::exp(-d * d / 8.0);
}

double overlap_gap(double d)
{
    validate_separation(d);
    return -std::expm1(-d * d / 4.0);
}

GramData gram(double d)
{
    GramData out;
    out.delta = overlap(d);
    out.delta_prime = overlap_derivative(d);
    // <d|d'> = 0 because the norm of |d> does not depend on d, and
    // <d'|d'> = 1/4 is the Fisher information of a unit-width Gaussian shift
    // divided by four.
    out.g = {{{1.0, out.delta, out.delta_prime},
              {out.delta, 1.0, 0.0},
              {out.delta_prime, 0.0, 0.25}}};
    return out;
}

}  // namespace sepfi
