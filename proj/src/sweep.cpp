#include "sepfi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "sepfi/classical_fisher.hpp"
#include "sepfi/errors.hpp"
#include "sepfi/grid_oracle.hpp"
#include "sepfi/parallel.hpp"
#include "sepfi/quantum_fisher.hpp"

namespace sepfi {
namespace {

bool is_known_kind(const std::string& kind)
{
    if (kind == kRatioKind) return true;
    try {
        parse_curve_kind(kind);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

double gaussian_ratio(double q, double d)
{
    return cfi_gaussian({q, d}) / qfi({q, d});
}

double evaluate(const std::string& kind, double q, double d)
{
    if (kind == kRatioKind) return gaussian_ratio(q, d);
    switch (parse_curve_kind(kind)) {
    case CurveKind::Qfi: return qfi({q, d});
    case CurveKind::CfiDirect: return cfi_direct({q, d});
    case CurveKind::CfiGaussian: return cfi_gaussian({q, d});
    case CurveKind::CfiZero: return cfi_zero({q, d});
    case CurveKind::GridOracleQfi: return qfi_grid({q, d}, GridSpec::covering(d));
    }
    throw DomainError("unknown kind " + kind);
}

bool has_ratio(const SweepRequest& request)
{
    return std::find(request.kinds.begin(), request.kinds.end(), kRatioKind) != request.kinds.end();
}

}  // namespace

OutputFormat parse_format(const std::string& label)
{
    if (label == "csv") return OutputFormat::Csv;
    if (label == "json") return OutputFormat::Json;
    throw DomainError("unknown output format '" + label + "' (expected csv or json)");
}

void validate_request(const SweepRequest& request)
{
    if (request.q_list.empty()) throw DomainError("q list is empty");
    for (double q : request.q_list) {
        if (!(q >= kBrightnessMargin && q <= 1.0 - kBrightnessMargin)) {
            throw DomainError("each q must lie strictly inside (0, 1)");
        }
    }
    if (!(request.d_min > 0.0) || !std::isfinite(request.d_max) || !(request.d_max > request.d_min)) {
        throw DomainError("separation range must satisfy 0 < d_min < d_max");
    }
    if (request.d_steps < 2) throw DomainError("d_steps must be >= 2");
    if (request.kinds.empty()) throw DomainError("no kinds requested");
    for (const auto& kind : request.kinds) {
        if (!is_known_kind(kind)) throw DomainError("unknown kind '" + kind + "'");
    }
}

std::vector<double> separation_grid(double d_min, double d_max, int steps, bool log_spacing)
{
    if (steps < 2) throw DomainError("grid needs at least two points");
    if (log_spacing && !(d_min > 0.0)) throw DomainError("log spacing needs d_min > 0");
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) / (steps - 1);
        grid[i] = log_spacing ? d_min * std::pow(d_max / d_min, t) : d_min + t * (d_max - d_min);
    }
    grid.front() = d_min;
    grid.back() = d_max;
    return grid;
}

std::optional<double> saturation_threshold(double q, const std::vector<double>& d_grid, double level)
{
    validate_separation_grid(d_grid);
    std::optional<double> last;
    for (double d : d_grid) {
        if (gaussian_ratio(q, d) < level) break;
        last = d;
    }
    return last;
}

double refine_saturation_threshold(double q, double lo, double hi, double level)
{
    if (!(gaussian_ratio(q, lo) >= level) || !(gaussian_ratio(q, hi) < level)) {
        throw DomainError("saturation threshold is not bracketed by [lo, hi]");
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (gaussian_ratio(q, mid) >= level ? lo : hi) = mid;
    }
    return lo;
}

SweepResult run_sweep(const SweepRequest& request)
{
    validate_request(request);
    const auto grid = separation_grid(request.d_min, request.d_max, request.d_steps, request.log_spacing);
    const std::size_t nk = request.kinds.size();
    const std::size_t nd = grid.size();

    SweepResult result;
    result.request = request;
    result.rows.resize(request.q_list.size() * nd * nk);
    parallel_for(request.q_list.size() * nd, [&](std::size_t task) {
        const double q = request.q_list[task / nd];
        const double d = grid[task % nd];
        for (std::size_t k = 0; k < nk; ++k) {
            SweepRow& row = result.rows[task * nk + k];
            row.q = q;
            row.d = d;
            row.kind = request.kinds[k];
            row.value = evaluate(row.kind, q, d);
            if (row.kind == kRatioKind) row.ratio = row.value;
        }
    });

    if (has_ratio(request)) {
        for (double q : request.q_list) {
            result.thresholds.push_back({q, saturation_threshold(q, grid)});
        }
    }
    return result;
}

std::string format_number(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

void write_csv(const SweepResult& result, std::ostream& out)
{
    const bool ratio = has_ratio(result.request);
    out << "q,d,kind,value" << (ratio ? ",ratio" : "") << '\n';
    for (const auto& row : result.rows) {
        out << format_number(row.q) << ',' << format_number(row.d) << ',' << row.kind << ','
            << format_number(row.value);
        if (ratio) {
            out << ',';
            if (row.ratio) out << format_number(*row.ratio);
        }
        out << '\n';
    }
}

void write_json(const SweepResult& result, std::ostream& out)
{
    using json = nlohmann::ordered_json;
    const auto& rq = result.request;
    json meta;
    meta["tool"] = "sepfi";
    meta["version"] = kVersion;
    meta["command"] = "sweep";
    meta["request"] = {{"q", rq.q_list},
                       {"d_min", rq.d_min},
                       {"d_max", rq.d_max},
                       {"steps", rq.d_steps},
                       {"spacing", rq.log_spacing ? "log" : "linear"},
                       {"kinds", rq.kinds}};
    if (!result.thresholds.empty()) {
        json thresholds = json::array();
        for (const auto& t : result.thresholds) {
            thresholds.push_back({{"q", t.q}, {"d_star", t.d_star ? json(*t.d_star) : json(nullptr)}});
        }
        meta["d_star"] = std::move(thresholds);
    }
    json rows = json::array();
    for (const auto& row : result.rows) {
        json r = {{"q", row.q}, {"d", row.d}, {"kind", row.kind}, {"value", row.value}};
        if (row.ratio) r["ratio"] = *row.ratio;
        rows.push_back(std::move(r));
    }
    json doc;
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

}  // namespace sepfi
