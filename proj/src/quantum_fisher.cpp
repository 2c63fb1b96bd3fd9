#include "sepfi/quantum_fisher.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "sepfi/errors.hpp"
#include "sepfi/parallel.hpp"
#include "sepfi/spectral.hpp"

namespace sepfi {
namespace {

using Vec3 = std::array<double, 3>;

double braket(const Vec3& u, const GramData& gram_data, const Vec3& v)
{
    double acc = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) acc += u[a] * gram_data.g[a][b] * v[b];
    }
    return acc;
}

// Eigenvectors expanded in (|0>, |d>, |d'>); derivatives pick up b_i |d'>.
QfiTerms terms_from_coefficients(const Scene& scene)
{
    const SpectralData sd = decompose(scene);
    const GramData gd = gram(scene.d);

    const std::array<double, 2> lambda{sd.lambda1, sd.lambda2};
    const std::array<double, 2> d_lambda{sd.d_lambda1, sd.d_lambda2};
    const std::array<Vec3, 2> ket{Vec3{sd.a1, sd.b1, 0.0}, Vec3{sd.a2, sd.b2, 0.0}};
    const std::array<Vec3, 2> d_ket{Vec3{sd.d_a1, sd.d_b1, sd.b1}, Vec3{sd.d_a2, sd.d_b2, sd.b2}};

    QfiTerms t;
    for (int i = 0; i < 2; ++i) {
        t.classical[i] = d_lambda[i] * d_lambda[i] / lambda[i];
        t.coherence[i] = 4.0 * lambda[i] * braket(d_ket[i], gd, d_ket[i]);
        for (int j = 0; j < 2; ++j) {
            const double m = braket(d_ket[i], gd, ket[j]);
            t.cross[i][j] = -8.0 * lambda[i] * lambda[j] / (lambda[i] + lambda[j]) * m * m;
        }
    }
    return t;
}

// Same sums with the eigenvectors written in the orthonormal frame
// {|0>, |e>}, |e> = (|d> - delta|0>) / sqrt(omega). There
//   d|lambda_1> =  theta' |lambda_2> + beta_1 d|e>,
//   d|lambda_2> = -theta' |lambda_1> + beta_2 d|e>,
// with d|e> orthogonal to the support and |d|e>|^2 = kappa / omega,
// kappa = 1/4 - delta'^2 / omega. Every factor is regular as d -> 0.
QfiTerms terms_regularized(const Scene& scene)
{
    const double q = scene.q;
    const double d = scene.d;
    const double p = 4.0 * q * (1.0 - q);
    const double delta = overlap(d);
    const double delta_p = overlap_derivative(d);
    const double omega = overlap_gap(d);
    const EigenvalueData ev = eigenvalues(scene);

    const double d_sq = d * d;
    double d_sq_over_omega = 4.0;
    double kappa_over_omega = 0.125;
    if (omega > 0.0) {
        const double u = 0.25 * d_sq;
        d_sq_over_omega = d_sq / omega;
        // 1 - (1 + u) e^{-u} = P(2, u), the regularized lower incomplete gamma.
        kappa_over_omega = boost::math::gamma_p(2.0, u) / (4.0 * omega * omega);
    }
    const double sqrt_omega = std::sqrt(omega);
    const double d_over_sqrt_omega = std::sqrt(d_sq_over_omega);

    const double m11 = 1.0 - q + q * delta * delta;
    const double m22 = q * omega;
    const double m12 = q * delta * sqrt_omega;
    const double dm11 = 2.0 * q * delta * delta_p;
    const double dm22 = -dm11;
    const double d_sqrt_omega = 0.25 * delta * delta * d_over_sqrt_omega;
    const double dm12 = q * (delta_p * sqrt_omega + delta * d_sqrt_omega);

    const double split = m11 - m22;
    const double big = ev.big_delta;
    const double theta_p = (dm12 * split - m12 * (dm11 - dm22)) / (big * big);

    // Eigenvector of lambda1, chosen to avoid cancellation in either ordering.
    double x = 0.0;
    double y = 0.0;
    if (split >= 0.0) {
        x = big + split;
        y = 2.0 * m12;
    } else {
        x = 2.0 * m12;
        y = big - split;
    }
    const double norm = std::hypot(x, y);
    const double beta1 = y / norm;
    const double beta2 = x / norm;

    const std::array<double, 2> lambda{ev.lambda1, ev.lambda2};
    const std::array<double, 2> beta{beta1, beta2};

    QfiTerms t;
    t.classical[0] = ev.d_lambda1 * ev.d_lambda1 / ev.lambda1;
    const double delta_p_sq_over_omega = delta * delta * d_sq_over_omega / 16.0;
    t.classical[1] =
        p * delta * delta * (1.0 + big) / (2.0 * big * big) * delta_p_sq_over_omega;
    for (int i = 0; i < 2; ++i) {
        t.coherence[i] =
            4.0 * lambda[i] * (theta_p * theta_p + beta[i] * beta[i] * kappa_over_omega);
    }
    const double off = -8.0 * ev.lambda1 * ev.lambda2 / (ev.lambda1 + ev.lambda2) * theta_p * theta_p;
    t.cross = {{{0.0, off}, {off, 0.0}}};
    return t;
}

}  // namespace

std::string_view to_string(CurveKind kind)
{
    switch (kind) {
    case CurveKind::Qfi: return "QFI";
    case CurveKind::CfiDirect: return "CFI-direct";
    case CurveKind::CfiGaussian: return "CFI-gaussian";
    case CurveKind::CfiZero: return "CFI-zero";
    case CurveKind::GridOracleQfi: return "grid-oracle-QFI";
    }
    return "unknown";
}

CurveKind parse_curve_kind(std::string_view label)
{
    for (CurveKind k : {CurveKind::Qfi, CurveKind::CfiDirect, CurveKind::CfiGaussian,
                        CurveKind::CfiZero, CurveKind::GridOracleQfi}) {
        if (to_string(k) == label) return k;
    }
    throw DomainError("unknown curve kind '" + std::string(label) + "'");
}

double QfiTerms::total() const
{
    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
        sum += classical[i] + coherence[i];
        for (int j = 0; j < 2; ++j) sum += cross[i][j];
    }
    return sum;
}

QfiTerms qfi_terms(const Scene& scene, const QfiOptions& options)
{
    validate_scene(scene);
    if (scene.d == 0.0) {
        throw DomainError("QFI is not evaluated at d = 0 (coincident sources)");
    }
    if (options.regularize_small_d && scene.d < options.d_switch) {
        return terms_regularized(scene);
    }
    return terms_from_coefficients(scene);
}

double qfi(const Scene& scene, const QfiOptions& options)
{
    return qfi_terms(scene, options).total();
}

double precision_limit(double information)
{
    if (!(information > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(information);
}

void validate_separation_grid(std::span<const double> d_grid)
{
    if (d_grid.empty()) throw DomainError("separation grid is empty");
    for (std::size_t i = 0; i < d_grid.size(); ++i) {
        if (!std::isfinite(d_grid[i]) || d_grid[i] <= 0.0) {
            throw DomainError("separation grid values must be finite and > 0");
        }
        if (i > 0 && !(d_grid[i] > d_grid[i - 1])) {
            throw DomainError("separation grid must be strictly increasing");
        }
    }
}

FisherCurve qfi_curve(double q, std::span<const double> d_grid, const QfiOptions& options)
{
    validate_separation_grid(d_grid);
    validate_scene({q, d_grid.front()});
    FisherCurve curve{q, CurveKind::Qfi, std::vector<FisherPoint>(d_grid.size())};
    parallel_for(d_grid.size(), [&](std::size_t i) {
        curve.points[i] = {d_grid[i], qfi({q, d_grid[i]}, options)};
    });
    return curve;
}

}  // namespace sepfi
