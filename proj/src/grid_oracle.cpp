#include "sepfi/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sepfi/errors.hpp"

namespace sepfi {
namespace {

constexpr double kTailMass = 1e-12;
constexpr double kEigenCutoff = 1e-12;
constexpr int kSubspaceColumns = 8;
constexpr int kPowerIterations = 2;

void check_coverage(const GridSpec& grid, double center)
{
    const double lower = 0.5 * std::erfc((center - grid.x_min) / std::sqrt(2.0));
    const double upper = 0.5 * std::erfc((grid.x_max - center) / std::sqrt(2.0));
    if (lower > kTailMass || upper > kTailMass) {
        throw DomainError("grid [" + std::to_string(grid.x_min) + ", " + std::to_string(grid.x_max) +
                          "] truncates the source at " + std::to_string(center));
    }
}

Eigen::VectorXd sampled_mode(const GridSpec& grid, double center)
{
    const double step = (grid.x_max - grid.x_min) / (grid.n - 1);
    Eigen::VectorXd psi(grid.n);
    for (int k = 0; k < grid.n; ++k) {
        const double x = grid.x_min + k * step - center;
        psi[k] = std::exp(-0.25 * x * x);
    }
    psi.normalize();
    return psi;
}

struct EigenPairs {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
    bool complete = false;  // true when vectors span the whole space
};

EigenPairs dense_pairs(const Eigen::MatrixXd& rho)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho);
    if (solver.info() != Eigen::Success) throw NonConvergence("dense eigen-solver failed");
    return {solver.eigenvalues(), solver.eigenvectors(), true};
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& block)
{
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
    return qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), block.cols());
}

EigenPairs subspace_pairs(const Eigen::MatrixXd& rho)
{
    std::mt19937_64 engine(0x5eedULL);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd probe(rho.rows(), kSubspaceColumns);
    for (Eigen::Index j = 0; j < probe.cols(); ++j) {
        for (Eigen::Index i = 0; i < probe.rows(); ++i) probe(i, j) = normal(engine);
    }
    Eigen::MatrixXd basis = orthonormal_columns(rho * probe);
    for (int it = 0; it < kPowerIterations; ++it) basis = orthonormal_columns(rho * basis);

    const Eigen::MatrixXd projected = basis.transpose() * rho * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(projected);
    if (solver.info() != Eigen::Success) throw NonConvergence("Rayleigh-Ritz eigen-solver failed");
    return {solver.eigenvalues(), basis * solver.eigenvectors(), false};
}

}  // namespace

GridSpec GridSpec::covering(double d, int n, double fd_step)
{
    return {-10.0, d + 10.0, n, fd_step};
}

void validate_grid(const GridSpec& grid)
{
    if (!std::isfinite(grid.x_min) || !std::isfinite(grid.x_max) || !(grid.x_min < 0.0) ||
        !(grid.x_max > 0.0)) {
        throw DomainError("grid bounds must satisfy x_min < 0 < x_max");
    }
    if (grid.n < 256) throw DomainError("grid needs at least 256 points");
    if (!(grid.fd_step >= 1e-6 && grid.fd_step <= 1e-3)) {
        throw DomainError("fd_step must lie in [1e-6, 1e-3], got " + std::to_string(grid.fd_step));
    }
}

Eigen::MatrixXd density_matrix(const Scene& scene, const GridSpec& grid)
{
    validate_scene_closed(scene);
    validate_grid(grid);
    if (grid.x_min > -6.0 || grid.x_max < scene.d + 6.0) {
        throw DomainError("grid must cover [-6, d + 6]");
    }
    check_coverage(grid, 0.0);
    check_coverage(grid, scene.d);

    const Eigen::VectorXd psi0 = sampled_mode(grid, 0.0);
    const Eigen::VectorXd psid = sampled_mode(grid, scene.d);
    Eigen::MatrixXd rho = (1.0 - scene.q) * psi0 * psi0.transpose();
    rho.noalias() += scene.q * psid * psid.transpose();
    return rho;
}

double qfi_grid(const Scene& scene, const GridSpec& grid, EigenMethod method)
{
    const Eigen::MatrixXd rho = density_matrix(scene, grid);
    const double h = grid.fd_step;
    check_coverage(grid, scene.d + h);
    check_coverage(grid, scene.d - h);

    // rho(d + h) - rho(d - h), entry by entry, without holding both matrices.
    const double q = scene.q;
    const Eigen::VectorXd psi0 = sampled_mode(grid, 0.0);
    const Eigen::VectorXd plus = sampled_mode(grid, scene.d + h);
    const Eigen::VectorXd minus = sampled_mode(grid, scene.d - h);
    Eigen::MatrixXd d_rho(grid.n, grid.n);
    for (int j = 0; j < grid.n; ++j) {
        for (int i = 0; i < grid.n; ++i) {
            const double fixed = (1.0 - q) * psi0[i] * psi0[j];
            const double rho_plus = fixed + q * plus[i] * plus[j];
            const double rho_minus = fixed + q * minus[i] * minus[j];
            d_rho(i, j) = (rho_plus - rho_minus) / (2.0 * h);
        }
    }

    if (method == EigenMethod::Auto) {
        method = grid.n <= 512 ? EigenMethod::Dense : EigenMethod::Subspace;
    }
    const EigenPairs pairs = method == EigenMethod::Dense ? dense_pairs(rho) : subspace_pairs(rho);

    const Eigen::Index m = pairs.values.size();
    Eigen::VectorXd sorted = pairs.values;
    std::sort(sorted.data(), sorted.data() + m, std::greater<>());
    if (m >= 2 && sorted[0] - sorted[1] < 10.0 * h) {
        throw IllConditioned("two largest eigenvalues differ by " + std::to_string(sorted[0] - sorted[1]) +
                             " < 10 fd_step");
    }

    const Eigen::MatrixXd applied = d_rho * pairs.vectors;
    const Eigen::MatrixXd elements = pairs.vectors.transpose() * applied;
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            const double weight = pairs.values[i] + pairs.values[j];
            if (weight > kEigenCutoff) total += 2.0 * elements(i, j) * elements(i, j) / weight;
        }
    }
    if (!pairs.complete) {
        // Pairs (i, j) with j outside the Ritz block: the unresolved
        // eigenvalues are zero to rounding, so each such pair contributes
        // 2 |<j|d rho|i>|^2 / p_i, twice by symmetry. Their sum over j is the
        // squared norm of d rho |i> left after removing the Ritz components.
        for (Eigen::Index i = 0; i < m; ++i) {
            if (pairs.values[i] <= kEigenCutoff) continue;
            const double outside =
                std::max(0.0, applied.col(i).squaredNorm() - elements.col(i).squaredNorm());
            total += 4.0 * outside / pairs.values[i];
        }
    }
    return total;
}

}  // namespace sepfi
