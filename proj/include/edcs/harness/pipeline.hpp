#ifndef EDCS_HARNESS_PIPELINE_HPP
#define EDCS_HARNESS_PIPELINE_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "../general_edcs.hpp"
#include "../graph.hpp"
#include "../matching.hpp"
#include "../oracle.hpp"
#include "../orientation.hpp"
#include "../path.hpp"
#include "../weighted_edcs.hpp"
#include "params.hpp"
#include "stream.hpp"

namespace edcs::harness {

struct PipelineConfig {
    ParameterRequest params;
    std::size_t checkpoint_every = 100;
    /// Run the EDCS validator and the per-step audits every this many steps (0 = never).
    std::size_t validate_every = 1;
    /// Record wall time per update. Off by default so metrics files stay reproducible.
    bool timing = false;
};

struct MetricsRow {
    std::size_t step = 0;
    std::size_t m = 0;
    std::size_t mu_g = 0;
    std::size_t mu_h = 0;
    std::size_t matching = 0;
    double ratio = 0.0;
    std::size_t max_load = 0;
    std::size_t max_path_len = 0;  // max over the checkpoint interval
    std::size_t h_changes = 0;     // max net H changes of one update in the interval
    double us_per_update = 0.0;    // mean over the interval, 0 unless timing is on
};

inline constexpr const char* kMetricsHeader =
    "step,m,mu_G,mu_H,matching,ratio,max_load,max_path_len,h_changes,us_per_update";

inline std::string format_row(const MetricsRow& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%zu,%zu,%.6f,%zu,%zu,%zu,%.3f", r.step, r.m, r.mu_g, r.mu_h, r.matching,
                  r.ratio, r.max_load, r.max_path_len, r.h_changes, r.us_per_update);
    return buf;
}

inline std::string metrics_csv(const std::vector<MetricsRow>& rows) {
    std::string out = kMetricsHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += format_row(r);
        out += '\n';
    }
    return out;
}

/// Names of every check the pipeline counts. A run passes iff all stay zero.
inline const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "edcs_validity",      "mu_h_bound",         "ratio_bound",        "path_length",
        "path_simple",        "path_distinct",      "path_alternates",    "h_changes_per_update",
        "changes_per_unit",   "load_bound",         "flips_per_update",   "orientation_audit",
        "estimate_accuracy",  "index_consistency",  "matching_valid",     "metrics_consistency",
        "audit_window_miss",  "audit_pick_too_high", "audit_unsafe_decrease", "audit_short_repair_scan",
    };
    return names;
}

struct RunResult {
    ResolvedParams params;
    std::size_t steps = 0;
    std::size_t m_max = 0;
    std::vector<MetricsRow> rows;
    std::map<std::string, std::size_t> violations;
    /// First few human-readable failure descriptions, for diagnostics.
    std::vector<std::string> failures;

    std::size_t max_path_len = 0;
    std::size_t max_h_changes = 0;       // net H changes fed to the matching
    std::size_t max_raw_changes = 0;     // H edge (general) or weight-unit (weighted) changes
    std::size_t max_unit_changes = 0;    // weighted only
    std::size_t max_flips = 0;
    std::size_t max_load = 0;
    std::size_t orientation_rebuilds = 0;
    std::size_t matching_rebuilds = 0;
    std::size_t validations = 0;

    bool ok() const {
        for (const auto& [name, count] : violations) {
            if (count != 0) return false;
        }
        return true;
    }
    std::size_t total_violations() const {
        std::size_t t = 0;
        for (const auto& [name, count] : violations) t += count;
        return t;
    }
};

namespace detail {

constexpr std::size_t kMaxFailureNotes = 20;
constexpr std::size_t kFlipBudget = 10;

class Checker {
public:
    explicit Checker(RunResult& result) : result_(result) {
        for (const auto& n : check_names()) result_.violations[n] = 0;
    }
    void fail(const std::string& check, std::size_t step, const std::string& detail) {
        ++result_.violations.at(check);
        if (result_.failures.size() < kMaxFailureNotes) {
            result_.failures.push_back("step " + std::to_string(step) + " " + check + ": " + detail);
        }
    }
    void expect(bool cond, const std::string& check, std::size_t step, const std::string& detail) {
        if (!cond) fail(check, step, detail);
    }

private:
    RunResult& result_;
};

/// Collapses a sequence of per-edge toggles into net changes: deletions first, then
/// insertions, each sorted by edge.
inline std::vector<HChange> net_changes(const std::map<Edge, std::pair<bool, bool>>& before_after) {
    std::vector<HChange> out;
    for (const auto& [e, ba] : before_after) {
        if (ba.first && !ba.second) out.push_back({e, false});
    }
    for (const auto& [e, ba] : before_after) {
        if (!ba.first && ba.second) out.push_back({e, true});
    }
    return out;
}

}  // namespace detail

/// Replays `stream` through orientation, EDCS and the matching maintainer, checking every
/// invariant and bound along the way. Throws ReplayError on an inconsistent stream and
/// ConfigError on unusable parameters; both are raised before any update is applied.
inline RunResult run_pipeline(const PipelineConfig& cfg, const UpdateStream& stream) {
    RunResult result;
    result.m_max = validate_replay(stream);
    VertexSpace space(stream.n_left, stream.n_right);
    result.params = plan_parameters(cfg.params, result.m_max, space.size());
    const ResolvedParams& P = result.params;
    const bool general = P.mode == Mode::General;

    detail::Checker check(result);
    DynBipartiteGraph g(stream.n_left, stream.n_right);

    std::unique_ptr<SqrtOrientation> sqrt_orient;
    std::unique_ptr<ArbOrientation> arb_orient;
    std::unique_ptr<GeneralEdcs> gen;
    std::unique_ptr<WeightedEdcs> wtd;
    if (general) {
        sqrt_orient = std::make_unique<SqrtOrientation>(space);
        gen = std::make_unique<GeneralEdcs>(space, P.general());
        gen->set_auditing(true);
    } else {
        arb_orient = std::make_unique<ArbOrientation>(space, P.load_cap);
        wtd = std::make_unique<WeightedEdcs>(space, P.beta);
    }
    MaintainedMatching matching(space, P.eps);

    auto h_edges = [&]() {
        if (general) return gen->used_edges();
        std::vector<Edge> out;
        for (auto [e, w] : wtd->weights()) out.push_back(e);
        return out;
    };
    auto max_load = [&]() { return general ? sqrt_orient->max_load() : arb_orient->max_load(); };

    std::size_t interval_path = 0, interval_changes = 0;
    double interval_us = 0.0;
    std::size_t interval_steps = 0;

    auto check_paths = [&](const std::vector<AlternatingPath>& paths, std::size_t step) {
        for (const auto& p : paths) {
            interval_path = std::max(interval_path, p.length());
            result.max_path_len = std::max(result.max_path_len, p.length());
            check.expect(p.length() <= P.max_path_length, "path_length", step,
                         "length " + std::to_string(p.length()) + " > " + std::to_string(P.max_path_length));
            check.expect(path_is_simple(p), "path_simple", step, "repeated vertex");
            check.expect(path_degrees_distinct_per_side(p), "path_distinct", step, "repeated same-side degree");
            check.expect(path_alternates(p), "path_alternates", step, "actions do not alternate");
        }
    };

    const std::size_t n_steps = stream.size();
    for (std::size_t i = 0; i < n_steps; ++i) {
        const std::size_t step = i + 1;
        const Update& u = stream.updates[i];
        const Edge e = u.edge;
        const bool insert = u.op == Op::Insert;

        auto t0 = std::chrono::steady_clock::now();
        std::map<Edge, std::pair<bool, bool>> touched;  // H membership before / after
        OrientationDelta od;
        if (general) {
            if (insert) g.insert_edge(e);
            else g.delete_edge(e);
            od = insert ? sqrt_orient->on_insert(g, e) : sqrt_orient->on_delete(g, e);
            gen->apply_orientation(od, *sqrt_orient);
            auto changes = insert ? gen->on_graph_insert(e, sqrt_orient->owner(e)) : gen->on_graph_delete(e);
            for (const auto& c : changes) {
                auto [it, fresh] = touched.try_emplace(c.edge, !c.inserted, c.inserted);
                if (!fresh) it->second.second = c.inserted;
            }
            result.max_raw_changes = std::max(result.max_raw_changes, gen->last_update().total_changes);
        } else {
            if (insert) g.insert_edge(e);
            else g.delete_edge(e);
            od = insert ? arb_orient->on_insert(g, e) : arb_orient->on_delete(g, e);
            wtd->apply_orientation(od);
            auto deltas = insert ? wtd->on_graph_insert(e, arb_orient->owner(e)) : wtd->on_graph_delete(e);
            std::map<Edge, int> net;
            for (const auto& d : deltas) net[d.edge] += d.delta;
            for (const auto& [f, d] : net) {
                int now = wtd->weight(f);  // 0 for an edge just removed from G
                touched.emplace(f, std::make_pair(now - d > 0, now > 0));
            }
            result.max_raw_changes = std::max(result.max_raw_changes, wtd->last_update().total_changes);
        }
        auto net = detail::net_changes(touched);
        for (const auto& c : net) matching.on_h_change(c);
        auto t1 = std::chrono::steady_clock::now();
        if (cfg.timing) interval_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
        ++interval_steps;

        // Per-update counters.
        interval_changes = std::max(interval_changes, net.size());
        result.max_h_changes = std::max(result.max_h_changes, net.size());
        result.max_flips = std::max(result.max_flips, od.flips.size());
        if (general) {
            const auto& st = gen->last_update();
            check_paths(st.paths, step);
            check.expect(st.total_changes <= P.max_changes_per_update, "h_changes_per_update", step,
                         std::to_string(st.total_changes) + " > " + std::to_string(P.max_changes_per_update));
            check.expect(od.flips.size() <= detail::kFlipBudget, "flips_per_update", step,
                         std::to_string(od.flips.size()) + " flips");
        } else {
            const auto& st = wtd->last_update();
            check_paths(st.paths, step);
            for (std::size_t c : st.unit_changes) {
                result.max_unit_changes = std::max(result.max_unit_changes, c);
                check.expect(c <= P.max_changes_per_unit, "changes_per_unit", step,
                             std::to_string(c) + " > " + std::to_string(P.max_changes_per_unit));
            }
            check.expect(st.total_changes <= P.max_changes_per_update, "h_changes_per_update", step,
                         std::to_string(st.total_changes) + " > " + std::to_string(P.max_changes_per_update));
        }
        std::size_t load = max_load();
        result.max_load = std::max(result.max_load, load);
        if (general) {
            check.expect(sqrt_orient->within_load_bound(load), "load_bound", step,
                         "load " + std::to_string(load) + " with mBar " + std::to_string(sqrt_orient->m_bar()));
        } else {
            check.expect(load <= P.load_cap, "load_bound", step,
                         "load " + std::to_string(load) + " > cap " + std::to_string(P.load_cap));
        }

        // Periodic validation.
        if (cfg.validate_every != 0 && step % cfg.validate_every == 0) {
            ++result.validations;
            if (general) {
                auto h = gen->used_edges();
                auto rep = oracle::validate_edcs_unweighted(g, h, P.beta, P.lambda);
                if (!rep.ok) {
                    const auto& v = rep.violations.front();
                    check.fail("edcs_validity", step,
                               std::string(oracle::to_string(v.constraint)) + " on " + to_string(v.edge));
                }
                std::size_t est = gen->estimate_violations();
                check.expect(est == 0, "estimate_accuracy", step, std::to_string(est) + " stale estimates");
                auto problems = sqrt_orient->audit(g);
                check.expect(problems.empty(), "orientation_audit", step, problems.empty() ? "" : problems.front());
            } else {
                auto w = wtd->weights();
                auto rep = oracle::validate_edcs_weighted(g, w, P.beta);
                if (!rep.ok) {
                    const auto& v = rep.violations.front();
                    check.fail("edcs_validity", step,
                               std::string(oracle::to_string(v.constraint)) + " on " + to_string(v.edge));
                }
                auto problems = arb_orient->audit(g);
                check.expect(problems.empty(), "orientation_audit", step, problems.empty() ? "" : problems.front());
            }
        }

        // Checkpoints.
        const bool at_checkpoint =
            step == n_steps || (cfg.checkpoint_every != 0 && step % cfg.checkpoint_every == 0);
        if (at_checkpoint) {
            MetricsRow row;
            row.step = step;
            row.m = g.edge_count();
            row.mu_g = oracle::hopcroft_karp(g).mu;
            auto h = h_edges();
            row.mu_h = oracle::hopcroft_karp(g.n_left(), g.n_right(), h).mu;
            row.matching = matching.size();
            row.ratio = static_cast<double>(row.mu_g) / static_cast<double>(std::max<std::size_t>(1, row.matching));
            row.max_load = load;
            row.max_path_len = interval_path;
            row.h_changes = interval_changes;
            row.us_per_update = cfg.timing && interval_steps ? interval_us / static_cast<double>(interval_steps) : 0.0;
            result.rows.push_back(row);
            interval_path = interval_changes = interval_steps = 0;
            interval_us = 0.0;

            check.expect(static_cast<double>(row.mu_h) >= P.mu_h_factor * static_cast<double>(row.mu_g), "mu_h_bound",
                         step, "mu_H " + std::to_string(row.mu_h) + " vs mu_G " + std::to_string(row.mu_g));
            if (general) {
                check.expect(row.ratio <= P.ratio_bound, "ratio_bound", step, "ratio " + std::to_string(row.ratio));
                check.expect(gen->index_consistent(), "index_consistency", step, "bucket/list mismatch");
            } else {
                check.expect(wtd->index_consistent(), "index_consistency", step, "index mismatch");
            }
            check.expect(matching.valid(), "matching_valid", step, "matching inconsistent with H");
            check.expect(row.mu_h <= row.mu_g && row.matching <= row.mu_h, "metrics_consistency", step,
                         "mu_G/mu_H/|M| out of order");
        }
    }

    if (general) {
        const auto& a = gen->audit_counters();
        result.violations["audit_window_miss"] = a.window_misses;
        result.violations["audit_pick_too_high"] = a.pick_too_high;
        result.violations["audit_unsafe_decrease"] = a.unsafe_decreases;
        result.violations["audit_short_repair_scan"] = a.short_repair_scans;
        result.orientation_rebuilds = sqrt_orient->rebuild_count();
    }
    result.steps = n_steps;
    result.matching_rebuilds = matching.rebuilds();
    return result;
}

}  // namespace edcs::harness

#endif  // EDCS_HARNESS_PIPELINE_HPP
