#pragma once

#include "sepfi/scene.hpp"

namespace sepfi {

/// Eigenvalues of the one-photon state and their separation derivatives.
///
/// Well defined for every d >= 0, including the coincident limit where
/// lambda2 -> 0.
struct EigenvalueData {
    double big_delta = 1.0;  ///< lambda1 - lambda2
    double lambda1 = 1.0;
    double lambda2 = 0.0;
    double d_big_delta = 0.0;
    double d_lambda1 = 0.0;
    double d_lambda2 = 0.0;
};

/// Full spectral decomposition of rho1 = (1-q)|0><0| + q|d><d|.
///
/// |lambda_i> = a_i |0> + b_i |d> in the non-orthogonal source basis, with the
/// sign convention a1, b1, a2 >= 0 and b2 <= 0. Every d_* member is the
/// analytic derivative with respect to d.
struct SpectralData {
    double big_delta = 1.0;
    double lambda1 = 1.0;
    double lambda2 = 0.0;
    double a1 = 0.0;
    double b1 = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;
    double d_big_delta = 0.0;
    double d_lambda1 = 0.0;
    double d_lambda2 = 0.0;
    double d_a1 = 0.0;
    double d_b1 = 0.0;
    double d_a2 = 0.0;
    double d_b2 = 0.0;
};

/// Below this lambda2 the expansion coefficients a2, b2 (which grow like 1/d)
/// are refused by decompose().
inline constexpr double kMinLambda2 = 1e-14;

/// sqrt((1-2q)^2 + delta^2 [1 - (1-2q)^2]).
double big_delta(const Scene& scene);

EigenvalueData eigenvalues(const Scene& scene);

/// Throws DegenerateDecomposition when lambda2 < kMinLambda2.
SpectralData decompose(const Scene& scene);

}  // namespace sepfi
