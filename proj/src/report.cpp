#include "sepfi/report.hpp"

#include <json.hpp>
#include <string>

namespace sepfi {
namespace {

void write_csv(const CrbReport& rep, bool per_trial, std::ostream& out)
{
    const SimConfig& c = rep.config;
    out << "scheme,q,d,n,trials,seed,usable_trials,boundary_hits,boundary_fraction,"
           "mean_d_hat,variance,fisher,crb,ratio\n";
    out << to_string(c.scheme) << ',' << format_number(c.scene.q) << ',' << format_number(c.scene.d) << ','
        << c.n << ',' << c.trials << ',' << c.seed << ',' << rep.usable_trials << ',' << rep.boundary_hits
        << ',' << format_number(rep.boundary_fraction) << ',' << format_number(rep.mean_d_hat) << ','
        << format_number(rep.variance) << ',' << format_number(rep.fisher) << ','
        << format_number(rep.crb) << ',' << format_number(rep.ratio) << '\n';
    if (!per_trial) return;
    out << "\ntrial_index,n,successes,mean,variance,d_hat,converged,boundary_hit,log_lik\n";
    for (const auto& r : rep.records) {
        out << r.trial_index << ',' << r.summary.n << ',';
        if (r.summary.successes >= 0) out << r.summary.successes;
        out << ',';
        if (r.summary.successes < 0) {
            out << format_number(r.summary.mean) << ',' << format_number(r.summary.variance);
        } else {
            out << ',';
        }
        out << ',' << format_number(r.d_hat) << ',' << (r.converged ? 1 : 0) << ','
            << (r.boundary_hit ? 1 : 0) << ',' << format_number(r.log_lik_at_hat) << '\n';
    }
}

void write_json(const CrbReport& rep, bool per_trial, std::ostream& out)
{
    using json = nlohmann::ordered_json;
    const SimConfig& c = rep.config;
    json doc;
    doc["meta"] = {{"tool", "sepfi"},
                   {"version", kVersion},
                   {"command", "simulate"},
                   {"seed", c.seed},
                   {"config",
                    {{"scheme", std::string(to_string(c.scheme))},
                     {"q", c.scene.q},
                     {"d", c.scene.d},
                     {"n", c.n},
                     {"trials", c.trials},
                     {"search_interval", {c.search.lo, c.search.hi}}}}};
    doc["summary"] = {{"usable_trials", rep.usable_trials},
                      {"boundary_hits", rep.boundary_hits},
                      {"boundary_fraction", rep.boundary_fraction},
                      {"mean_d_hat", rep.mean_d_hat},
                      {"variance", rep.variance},
                      {"fisher", rep.fisher},
                      {"crb", rep.crb},
                      {"ratio", rep.ratio}};
    if (per_trial) {
        json trials = json::array();
        for (const auto& r : rep.records) {
            json t = {{"trial_index", r.trial_index}, {"n", r.summary.n}};
            if (r.summary.successes >= 0) {
                t["successes"] = r.summary.successes;
            } else {
                t["mean"] = r.summary.mean;
                t["variance"] = r.summary.variance;
            }
            t["d_hat"] = r.d_hat;
            t["converged"] = r.converged;
            t["boundary_hit"] = r.boundary_hit;
            t["log_lik"] = r.log_lik_at_hat;
            trials.push_back(std::move(t));
        }
        doc["trials"] = std::move(trials);
    }
    out << doc.dump(2) << '\n';
}

}  // namespace

void write_sim_report(const CrbReport& report, OutputFormat format, bool per_trial, std::ostream& out)
{
    if (format == OutputFormat::Json) {
        write_json(report, per_trial, out);
    } else {
        write_csv(report, per_trial, out);
    }
}

}  // namespace sepfi
