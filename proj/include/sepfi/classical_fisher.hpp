#pragma once

#include <string_view>

#include "sepfi/scene.hpp"

namespace sepfi {

/// The three measurement schemes compared against the QFI.
enum class SchemeKind {
    Direct,        ///< image-plane intensity (position) measurement
    GaussianMode,  ///< binary SPADE: fundamental mode at the origin vs the rest
    ZeroPhoton,    ///< SLIVER antisymmetric port, click / no-click
};

std::string_view to_string(SchemeKind scheme);

/// Accepts "direct", "gaussian", "zero".
SchemeKind parse_scheme(std::string_view label);

/// Settings of the adaptive quadrature used for the direct-imaging integral.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double trunc_radius = 10.0;  ///< window is [-r, d + r]
    double floor = 1e-300;       ///< lower bound substituted for the intensity in the denominator
};

/// Throws DomainError unless abs_tol <= 1e-8, trunc_radius >= 8 and floor <= 1e-280.
void validate_quadrature(const QuadratureSpec& quad);

/// (1-q) N(x; 0, 1) + q N(x; d, 1).
double intensity_profile(const Scene& scene, double x);

/// Integral of (dLambda/dd)^2 / Lambda over the image plane.
/// Throws NonConvergence if the error estimate exceeds abs_tol.
double cfi_direct(const Scene& scene, const QuadratureSpec& quad = {});

/// <0|rho1|0> = 1 + q (exp(-d^2/4) - 1).
double p_gaussian(const Scene& scene);
double p_gaussian_derivative(const Scene& scene);

/// Fisher information of the Gaussian / non-Gaussian outcome. Rejects d = 0.
double cfi_gaussian(const Scene& scene);

/// Mean photon number leaving the antisymmetric port, (q/2)(1 - exp(-d^2/2)).
double mean_antisym_photons(const Scene& scene);
double mean_antisym_photons_derivative(const Scene& scene);

/// Bose-Einstein vacuum probability 1 / (1 + N_a).
double p_zero(const Scene& scene);
double p_zero_derivative(const Scene& scene);

/// Fisher information of the click / no-click outcome, per detection window. Rejects d = 0.
double cfi_zero(const Scene& scene);

/// d -> 0 limit of the binary-scheme informations (q for both), and q^2 for
/// direct imaging. This is a limit, not an evaluation at d = 0.
double cfi_origin_limit(SchemeKind scheme, double q);

double cfi(SchemeKind scheme, const Scene& scene, const QuadratureSpec& quad = {});

}  // namespace sepfi
