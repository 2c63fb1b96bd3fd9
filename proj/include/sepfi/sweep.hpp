#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sepfi {

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& label);

/// Row label for the Gaussian-mode optimality ratio CFI_G / QFI.
inline constexpr const char* kRatioKind = "ratio";

/// Information curves over a separation grid for several brightnesses.
struct SweepRequest {
    std::vector<double> q_list{0.1, 0.3, 0.7, 0.9};
    double d_min = 0.01;
    double d_max = 5.0;
    int d_steps = 200;
    bool log_spacing = false;
    /// Any of "QFI", "CFI-direct", "CFI-gaussian", "CFI-zero", "grid-oracle-QFI", "ratio".
    std::vector<std::string> kinds{"QFI", "CFI-direct", "CFI-gaussian", "CFI-zero"};
};

void validate_request(const SweepRequest& request);

/// d_steps points from d_min to d_max inclusive, linear or geometric.
std::vector<double> separation_grid(double d_min, double d_max, int steps, bool log_spacing);

struct SweepRow {
    double q = 0.0;
    double d = 0.0;
    std::string kind;
    double value = 0.0;
    std::optional<double> ratio;  ///< CFI_G / QFI, ratio rows only
};

/// Largest grid separation up to which CFI_G / QFI stays >= level, per q.
struct SaturationThreshold {
    double q = 0.0;
    std::optional<double> d_star;  ///< empty when the first grid point already fails
};

struct SweepResult {
    SweepRequest request;
    std::vector<SweepRow> rows;  ///< q outer, d inner, kind innermost (request order)
    std::vector<SaturationThreshold> thresholds;  ///< filled when "ratio" is requested
};

SweepResult run_sweep(const SweepRequest& request);

/// Grid-based d*: the end of the leading run of grid points with CFI_G / QFI >= level.
std::optional<double> saturation_threshold(double q, const std::vector<double>& d_grid,
                                           double level = 0.99);

/// d* located by bisection on the continuous ratio inside [lo, hi], where
/// the ratio is >= level at lo and < level at hi.
double refine_saturation_threshold(double q, double lo, double hi, double level = 0.99);

/// printf("%.15g")-style formatting shared by all writers.
std::string format_number(double value);

void write_csv(const SweepResult& result, std::ostream& out);
void write_json(const SweepResult& result, std::ostream& out);

}  // namespace sepfi
