#include "sepfi/classical_fisher.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "sepfi/errors.hpp"

namespace sepfi {
namespace {

constexpr double kInvSqrt2Pi = 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
constexpr unsigned kMaxBisections = 20;

double normal_density(double x)
{
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

// 1 - P_G = q (1 - exp(-d^2/4)) without cancellation.
double p_gaussian_complement(const Scene& scene)
{
    return -scene.q * std::expm1(-0.25 * scene.d * scene.d);
}

void reject_origin(const Scene& scene, const char* what)
{
    if (scene.d == 0.0) {
        throw DomainError(std::string(what) +
                          " is a removable 0/0 at d = 0; use cfi_origin_limit for the limit");
    }
}

}  // namespace

std::string_view to_string(SchemeKind scheme)
{
    switch (scheme) {
    case SchemeKind::Direct: return "direct";
    case SchemeKind::GaussianMode: return "gaussian";
    case SchemeKind::ZeroPhoton: return "zero";
    }
    return "unknown";
}

SchemeKind parse_scheme(std::string_view label)
{
    if (label == "direct") return SchemeKind::Direct;
    if (label == "gaussian") return SchemeKind::GaussianMode;
    if (label == "zero") return SchemeKind::ZeroPhoton;
    throw DomainError("unknown scheme '" + std::string(label) + "' (expected direct, gaussian or zero)");
}

void validate_quadrature(const QuadratureSpec& quad)
{
    if (!(quad.abs_tol > 0.0 && quad.abs_tol <= 1e-8)) {
        throw DomainError("quadrature abs_tol must lie in (0, 1e-8]");
    }
    if (!(quad.trunc_radius >= 8.0) || !std::isfinite(quad.trunc_radius)) {
        throw DomainError("quadrature trunc_radius must be finite and >= 8");
    }
    if (!(quad.floor > 0.0 && quad.floor <= 1e-280)) {
        throw DomainError("quadrature floor must lie in (0, 1e-280]");
    }
}

double intensity_profile(const Scene& scene, double x)
{
    validate_scene(scene);
    return (1.0 - scene.q) * normal_density(x) + scene.q * normal_density(x - scene.d);
}

double cfi_direct(const Scene& scene, const QuadratureSpec& quad)
{
    validate_scene(scene);
    validate_quadrature(quad);
    const double q = scene.q;
    const double d = scene.d;
    auto integrand = [&](double x) {
        const double lambda = (1.0 - q) * normal_density(x) + q * normal_density(x - d);
        const double slope = q * (x - d) * normal_density(x - d);
        return slope * slope / std::max(lambda, quad.floor);
    };

    using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    double error = 0.0;
    double l1 = 0.0;
    // The information is at most 1, so the relative target below is also an
    // absolute one; the returned estimate is checked against abs_tol anyway.
    const double value = Kronrod::integrate(integrand, -quad.trunc_radius, d + quad.trunc_radius,
                                            kMaxBisections, quad.abs_tol, &error, &l1);
    if (!(error <= quad.abs_tol) || !std::isfinite(value)) {
        throw NonConvergence("direct-imaging quadrature error estimate " + std::to_string(error) +
                             " exceeds abs_tol " + std::to_string(quad.abs_tol));
    }
    return value;
}

double p_gaussian(const Scene& scene)
{
    validate_scene(scene);
    return 1.0 + scene.q * std::expm1(-0.25 * scene.d * scene.d);
}

double p_gaussian_derivative(const Scene& scene)
{
    validate_scene(scene);
    return -0.5 * scene.q * scene.d * std::exp(-0.25 * scene.d * scene.d);
}

double cfi_gaussian(const Scene& scene)
{
    validate_scene(scene);
    reject_origin(scene, "cfi_gaussian");
    const double prob = p_gaussian(scene);
    const double slope = p_gaussian_derivative(scene);
    // Two outcomes with probabilities P and 1 - P: P'^2 / P + P'^2 / (1 - P).
    return slope * slope / prob + slope * slope / p_gaussian_complement(scene);
}

double mean_antisym_photons(const Scene& scene)
{
    validate_scene(scene);
    return -0.5 * scene.q * std::expm1(-0.5 * scene.d * scene.d);
}

double mean_antisym_photons_derivative(const Scene& scene)
{
    validate_scene(scene);
    return 0.5 * scene.q * scene.d * std::exp(-0.5 * scene.d * scene.d);
}

double p_zero(const Scene& scene)
{
    return 1.0 / (1.0 + mean_antisym_photons(scene));
}

double p_zero_derivative(const Scene& scene)
{
    const double photons = mean_antisym_photons(scene);
    return -mean_antisym_photons_derivative(scene) / ((1.0 + photons) * (1.0 + photons));
}

double cfi_zero(const Scene& scene)
{
    validate_scene(scene);
    reject_origin(scene, "cfi_zero");
    const double photons = mean_antisym_photons(scene);
    const double prob = 1.0 / (1.0 + photons);
    const double complement = photons / (1.0 + photons);
    const double slope = p_zero_derivative(scene);
    return slope * slope / prob + slope * slope / complement;
}

double cfi_origin_limit(SchemeKind scheme, double q)
{
    validate_scene({q, 0.0});
    return scheme == SchemeKind::Direct ? q * q : q;
}

double cfi(SchemeKind scheme, const Scene& scene, const QuadratureSpec& quad)
{
    switch (scheme) {
    case SchemeKind::Direct: return cfi_direct(scene, quad);
    case SchemeKind::GaussianMode: return cfi_gaussian(scene);
    case SchemeKind::ZeroPhoton: return cfi_zero(scene);
    }
    throw DomainError("unknown scheme");
}

}  // namespace sepfi
