// Command-line driver: generate or load an update stream, replay it through the full
// pipeline and write metrics.csv, summary.json and plot data.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <edcs/harness/output.hpp>
#include <edcs/harness/pipeline.hpp>
#include <edcs/harness/stream.hpp>

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    using namespace edcs::harness;

    CLI::App app{"Dynamic approximate bipartite matching via edge-degree constrained subgraphs"};

    std::string mode = "general";
    double eps = 0.5;
    std::optional<int> beta;
    std::optional<double> lambda;
    std::size_t alpha_cap = 1;
    std::string stream_kind = "random";
    std::string stream_file;
    std::string write_stream_path;
    std::uint32_t n_left = 60, n_right = 60;
    std::size_t steps = 1000;
    double density = 0.5;
    std::uint64_t seed = 1;
    std::size_t checkpoint_every = 100, validate_every = 1;
    std::string out_dir = "out";
    bool timing = false;

    app.add_option("--mode", mode, "general or small_arboricity")->capture_default_str();
    app.add_option("--eps", eps, "Approximation parameter")->capture_default_str();
    app.add_option("--beta", beta, "Explicit beta (default: planned from eps)");
    app.add_option("--lambda", lambda, "Explicit lambda, general mode (default eps/4)");
    app.add_option("--alpha-cap", alpha_cap, "Arboricity bound for small_arboricity mode and forest_union streams")
        ->capture_default_str();
    app.add_option("--stream-kind", stream_kind, "random, sliding_window, forest_union, four_block, three_block")
        ->capture_default_str();
    app.add_option("--stream-file", stream_file, "Replay this stream file instead of generating one");
    app.add_option("--write-stream", write_stream_path, "Also save the replayed stream to this file");
    app.add_option("--n-left", n_left, "Left side size")->capture_default_str();
    app.add_option("--n-right", n_right, "Right side size")->capture_default_str();
    app.add_option("--steps", steps, "Number of generated updates")->capture_default_str();
    app.add_option("--density", density, "Target density of generated streams")->capture_default_str();
    app.add_option("--seed", seed, "Generator seed")->capture_default_str();
    app.add_option("--checkpoint-every", checkpoint_every, "Metrics row interval")->capture_default_str();
    app.add_option("--validate-every", validate_every, "Validator interval (0 disables)")->capture_default_str();
    app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    app.add_flag("--timing", timing, "Record wall time per update (makes metrics nondeterministic)");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig cfg;
        cfg.params.mode = parse_mode(mode);
        cfg.params.eps = eps;
        cfg.params.beta = beta;
        cfg.params.lambda = lambda;
        cfg.params.alpha = alpha_cap;
        cfg.checkpoint_every = checkpoint_every;
        cfg.validate_every = validate_every;
        cfg.timing = timing;

        UpdateStream stream;
        if (!stream_file.empty()) {
            stream = read_stream_file(stream_file, n_left, n_right);
        } else {
            StreamSpec spec;
            spec.kind = parse_stream_kind(stream_kind);
            spec.n_left = n_left;
            spec.n_right = n_right;
            spec.steps = steps;
            spec.density = density;
            spec.alpha = alpha_cap;
            spec.seed = seed;
            if (beta) spec.beta_hint = *beta;
            if (lambda) spec.lambda_hint = *lambda;
            stream = generate_stream(spec);
        }
        if (!write_stream_path.empty()) write_stream_file(write_stream_path, stream);

        auto result = run_pipeline(cfg, stream);
        write_outputs(cfg, result, out_dir);

        const auto& p = result.params;
        std::printf("mode=%s eps=%g beta=%d", to_string(p.mode), p.eps, p.beta);
        if (p.mode == Mode::General) std::printf(" lambda=%g ell=%d", p.lambda, p.ell);
        else std::printf(" load_cap=%zu", p.load_cap);
        std::printf(" steps=%zu checkpoints=%zu violations=%zu\n", result.steps, result.rows.size(),
                    result.total_violations());
        for (const auto& f : result.failures) std::fprintf(stderr, "  %s\n", f.c_str());
        return result.ok() ? 0 : kExitViolation;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitUsage;
    } catch (const ReplayError& e) {
        std::fprintf(stderr, "replay error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
