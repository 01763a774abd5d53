#ifndef EDCS_HARNESS_OUTPUT_HPP
#define EDCS_HARNESS_OUTPUT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pipeline.hpp"

namespace edcs::harness {

struct PlotSeries {
    std::string name;
    std::function<double(const MetricsRow&)> value;
};

inline const std::vector<PlotSeries>& plot_series() {
    static const std::vector<PlotSeries> series = {
        {"ratio", [](const MetricsRow& r) { return r.ratio; }},
        {"max_load", [](const MetricsRow& r) { return static_cast<double>(r.max_load); }},
        {"h_changes", [](const MetricsRow& r) { return static_cast<double>(r.h_changes); }},
        {"wall_time", [](const MetricsRow& r) { return r.us_per_update; }},
    };
    return series;
}

namespace detail {
inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}
}  // namespace detail

/// Writes `<name>.dat` with "step value" lines for each series. Returns the paths written.
inline std::vector<std::filesystem::path> emit_plot_data(const std::vector<MetricsRow>& rows,
                                                         const std::filesystem::path& dir) {
    if (rows.empty()) throw std::invalid_argument("emit_plot_data: no metrics rows");
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& s : plot_series()) {
        std::string text;
        char buf[96];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%zu %.6f\n", r.step, s.value(r));
            text += buf;
        }
        auto path = dir / (s.name + ".dat");
        detail::write_file(path, text);
        written.push_back(path);
    }
    return written;
}

/// Reads a two-column plot file back. Throws on any line that is not two numbers.
inline std::vector<std::pair<double, double>> read_plot_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::pair<double, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t a = 0, b = 0;
        double x = std::stod(line, &a);
        double y = std::stod(line.substr(a), &b);
        if (line.find_first_not_of(" \t", a + b) != std::string::npos) {
            throw std::runtime_error("trailing text in plot line '" + line + "'");
        }
        out.emplace_back(x, y);
    }
    return out;
}

inline nlohmann::ordered_json summary_json(const PipelineConfig& cfg, const RunResult& r) {
    nlohmann::ordered_json j;
    const auto& p = r.params;
    j["mode"] = to_string(p.mode);
    j["eps"] = p.eps;
    j["beta"] = p.beta;
    if (p.mode == Mode::General) {
        j["lambda"] = p.lambda;
        j["ell"] = p.ell;
        j["ratio_bound"] = p.ratio_bound;
    } else {
        j["alpha"] = p.alpha;
        j["load_cap"] = p.load_cap;
        j["max_changes_per_unit"] = p.max_changes_per_unit;
    }
    j["mu_h_factor"] = p.mu_h_factor;
    j["max_path_length_bound"] = p.max_path_length;
    j["max_changes_per_update_bound"] = p.max_changes_per_update;
    j["checkpoint_every"] = cfg.checkpoint_every;
    j["validate_every"] = cfg.validate_every;
    j["steps"] = r.steps;
    j["m_max"] = r.m_max;
    j["checkpoints"] = r.rows.size();
    j["validations"] = r.validations;

    nlohmann::ordered_json observed;
    observed["max_path_len"] = r.max_path_len;
    observed["max_h_changes"] = r.max_h_changes;
    observed["max_raw_changes"] = r.max_raw_changes;
    observed["max_unit_changes"] = r.max_unit_changes;
    observed["max_flips"] = r.max_flips;
    observed["max_load"] = r.max_load;
    observed["orientation_rebuilds"] = r.orientation_rebuilds;
    observed["matching_rebuilds"] = r.matching_rebuilds;
    j["observed"] = observed;

    nlohmann::ordered_json v;
    for (const auto& [name, count] : r.violations) v[name] = count;
    j["violations"] = v;
    j["failures"] = r.failures;
    if (!r.rows.empty()) {
        const auto& last = r.rows.back();
        j["final"] = {{"step", last.step}, {"m", last.m},         {"mu_G", last.mu_g},
                      {"mu_H", last.mu_h}, {"matching", last.matching}, {"ratio", last.ratio}};
    }
    j["ok"] = r.ok();
    return j;
}

/// Writes metrics.csv, summary.json and the plot files into `dir`.
inline void write_outputs(const PipelineConfig& cfg, const RunResult& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    detail::write_file(dir / "metrics.csv", metrics_csv(r.rows));
    detail::write_file(dir / "summary.json", summary_json(cfg, r).dump(2) + "\n");
    if (!r.rows.empty()) emit_plot_data(r.rows, dir);
}

}  // namespace edcs::harness

#endif  // EDCS_HARNESS_OUTPUT_HPP
