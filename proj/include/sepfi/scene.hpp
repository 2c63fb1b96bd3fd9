#pragma once

#include <array>

namespace sepfi {

/// Lowest admissible brightness in the analytic modules; the upper bound is 1 - kBrightnessMargin.
inline constexpr double kBrightnessMargin = 1e-9;

/// Two incoherent point sources imaged through a unit-width Gaussian PSF.
///
/// The source at the origin carries weight 1 - q, the source at `d` carries
/// weight q. Separations are measured in PSF widths (sigma = 1); for a
/// physical width sigma rescale d -> d / sigma and information -> F / sigma^2.
struct Scene {
    double q = 0.5;  ///< relative brightness of the displaced source
    double d = 0.0;  ///< separation of the image centers
};

/// Throws DomainError unless q in [1e-9, 1 - 1e-9] and d is finite and >= 0.
void validate_scene(const Scene& scene);

/// Same as validate_scene but admits the endpoints q = 0 and q = 1.
void validate_scene_closed(const Scene& scene);

/// Throws DomainError unless d is finite and >= 0.
void validate_separation(double d);

/// <0|d> = exp(-d^2 / 8).
double overlap(double d);

/// d/dd <0|d> = -(d / 4) exp(-d^2 / 8).
double overlap_derivative(double d);

/// 1 - <0|d>^2 = -expm1(-d^2 / 4), accurate for small d.
double overlap_gap(double d);

/// Inner products among u0 = |0>, ud = |d> and ud' = d/dd |d>.
struct GramData {
    double delta = 1.0;
    double delta_prime = 0.0;
    std::array<std::array<double, 3>, 3> g{};
};

GramData gram(double d);

}  // namespace sepfi
