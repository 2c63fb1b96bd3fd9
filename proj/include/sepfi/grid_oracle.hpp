#pragma once

#include <Eigen/Dense>

#include "sepfi/scene.hpp"

namespace sepfi {

/// Uniform coordinate grid for the brute-force oracle (sigma units).
struct GridSpec {
    double x_min = -10.0;
    double x_max = 10.0;
    int n = 2048;
    double fd_step = 1e-4;  ///< central-difference step in d for d(rho)/dd

    /// [-10, d + 10] with the given resolution.
    static GridSpec covering(double d, int n = 2048, double fd_step = 1e-4);
};

/// Throws DomainError unless x_min < 0 < x_max, n >= 256 and fd_step in [1e-6, 1e-3].
void validate_grid(const GridSpec& grid);

/// Eigen-solver used on the sampled density matrix.
enum class EigenMethod {
    Auto,      ///< Dense for n <= 512, Subspace otherwise
    Dense,     ///< full symmetric eigendecomposition
    Subspace,  ///< randomized range finder + Rayleigh-Ritz on an 8-column block
};

/// rho1 sampled on the grid: (1-q) psi0 psi0^T + q psid psid^T with each psi
/// renormalized to unit Euclidean norm. Admits q = 0 and q = 1.
/// Rejects grids that cut off more than 1e-12 of either source's intensity.
Eigen::MatrixXd density_matrix(const Scene& scene, const GridSpec& grid);

/// QFI from the numerical eigenbasis of the sampled state:
/// sum over p_i + p_j > 1e-12 of 2 |<i|d rho|j>|^2 / (p_i + p_j), with
/// d rho / dd from a central difference of rho(d +- fd_step).
/// Throws IllConditioned when the two largest eigenvalues differ by less than
/// 10 fd_step.
double qfi_grid(const Scene& scene, const GridSpec& grid, EigenMethod method = EigenMethod::Auto);

}  // namespace sepfi
