#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "sepfi/scene.hpp"

namespace sepfi {

/// Which information functional a curve holds.
enum class CurveKind { Qfi, CfiDirect, CfiGaussian, CfiZero, GridOracleQfi };

std::string_view to_string(CurveKind kind);

/// Parses the labels produced by to_string ("QFI", "CFI-direct", ...).
CurveKind parse_curve_kind(std::string_view label);

struct FisherPoint {
    double d = 0.0;
    double value = 0.0;  ///< information in units of sigma^-2
};

/// Samples of one information functional at fixed q, strictly increasing in d.
struct FisherCurve {
    double q = 0.5;
    CurveKind kind = CurveKind::Qfi;
    std::vector<FisherPoint> points;
};

struct QfiOptions {
    /// Evaluate d < d_switch in the orthonormal frame where every term is
    /// regular. When false the coefficient expansion is used everywhere and
    /// DegenerateDecomposition propagates once lambda2 < 1e-14.
    bool regularize_small_d = true;
    double d_switch = 0.05;
};

/// The individual sums of the eigenbasis QFI formula.
struct QfiTerms {
    std::array<double, 2> classical{};               ///< (dlambda_i)^2 / lambda_i
    std::array<double, 2> coherence{};               ///< 4 lambda_i <dlambda_i|dlambda_i>
    std::array<std::array<double, 2>, 2> cross{};    ///< -8 l_i l_j / (l_i + l_j) |<dlambda_i|lambda_j>|^2

    double total() const;
};

/// Throws DomainError at d = 0, where the eigenbasis is undefined.
QfiTerms qfi_terms(const Scene& scene, const QfiOptions& options = {});

double qfi(const Scene& scene, const QfiOptions& options = {});

/// 1 / sqrt(F): standard deviation bound per detected photon.
double precision_limit(double information);

/// Throws DomainError unless the grid is nonempty, finite, strictly increasing and positive.
void validate_separation_grid(std::span<const double> d_grid);

FisherCurve qfi_curve(double q, std::span<const double> d_grid, const QfiOptions& options = {});

}  // namespace sepfi
