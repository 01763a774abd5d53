#ifndef EDCS_HARNESS_PARAMS_HPP
#define EDCS_HARNESS_PARAMS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "../general_edcs.hpp"
#include "../orientation.hpp"

namespace edcs::harness {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Mode { General, SmallArboricity };

inline const char* to_string(Mode m) { return m == Mode::General ? "general" : "small_arboricity"; }

inline Mode parse_mode(const std::string& s) {
    if (s == "general") return Mode::General;
    if (s == "small_arboricity") return Mode::SmallArboricity;
    throw ConfigError("unknown mode '" + s + "' (expected general or small_arboricity)");
}

/// User-facing knobs; anything unset is derived by plan_parameters.
struct ParameterRequest {
    Mode mode = Mode::General;
    double eps = 0.5;
    std::optional<int> beta;
    std::optional<double> lambda;
    std::size_t alpha = 1;
};

/// Fully resolved parameters and the bounds every run is checked against.
struct ResolvedParams {
    Mode mode = Mode::General;
    double eps = 0.5;
    int beta = 0;
    double lambda = 0.0;  // general mode only
    int ell = 0;          // general mode only
    std::size_t alpha = 1;
    std::size_t load_cap = 0;  // small-arboricity orientation cap

    std::size_t max_path_length = 0;
    std::size_t max_changes_per_update = 0;
    std::size_t max_changes_per_unit = 0;  // weighted mode only
    double mu_h_factor = 0.0;              // mu(H) >= factor * mu(G)
    double ratio_bound = 0.0;              // mu(G) / |M| <= bound, general mode only

    GeneralParams general() const { return GeneralParams::from_ell(beta, ell); }
};

namespace detail {
inline long long ceil_tol(double x) { return static_cast<long long>(std::ceil(x - 1e-9)); }
}  // namespace detail

/// Resolves beta/lambda and derived bounds.
///
/// general: eps < 2/3, lambda = eps/4, beta = ceil(m_max^(1/4) * eps^(1/2)) raised to the
///   least value >= 12/lambda with lambda*beta a multiple of 6 and beta/ell integral.
/// small_arboricity: eps < 1, beta = ceil(8/eps^2) + 1 (must exceed 8/eps^2).
inline ResolvedParams plan_parameters(const ParameterRequest& req, std::size_t m_max, std::size_t n_vertices) {
    ResolvedParams out;
    out.mode = req.mode;
    out.eps = req.eps;
    out.alpha = req.alpha;
    if (req.mode == Mode::General) {
        if (!(req.eps > 0.0 && req.eps < 2.0 / 3.0)) {
            throw ConfigError("general mode needs 0 < eps < 2/3, got " + std::to_string(req.eps));
        }
        double lambda = req.lambda.value_or(req.eps / 4.0);
        if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in (0, 1)");
        long long min_beta = detail::ceil_tol(12.0 / lambda);
        auto acceptable = [&](long long b) {
            double lb = lambda * static_cast<double>(b);
            double rounded = std::round(lb);
            if (std::abs(lb - rounded) > 1e-9 || rounded < 6) return false;
            auto lbi = static_cast<long long>(rounded);
            return lbi % 6 == 0 && b % (lbi / 6) == 0;
        };
        long long beta = 0;
        if (req.beta) {
            beta = *req.beta;
            if (beta < min_beta) {
                throw ConfigError("beta " + std::to_string(beta) + " below 12/lambda = " + std::to_string(min_beta));
            }
            if (!acceptable(beta)) throw ConfigError("lambda*beta must be a multiple of 6 dividing beta into 6/lambda buckets");
        } else {
            double m4 = std::pow(static_cast<double>(std::max<std::size_t>(1, m_max)), 0.25);
            long long preset = detail::ceil_tol(m4 * std::sqrt(req.eps));
            long long b = std::max(preset, min_beta);
            const long long limit = b + 1'000'000;
            while (b <= limit && !acceptable(b)) ++b;
            if (b > limit) throw ConfigError("no beta makes lambda*beta a multiple of 6; choose lambda explicitly");
            beta = b;
        }
        auto params = GeneralParams::make(static_cast<int>(beta), lambda);
        out.beta = params.beta;
        out.ell = params.ell;
        out.lambda = lambda;
        out.max_path_length = params.max_path_length();
        out.max_changes_per_update = params.max_changes_per_update();
        out.mu_h_factor = 2.0 / 3.0 - req.eps;
        out.ratio_bound = (1.5 + req.eps) * (1.0 + req.eps);
    } else {
        if (!(req.eps > 0.0 && req.eps < 1.0)) {
            throw ConfigError("small_arboricity mode needs 0 < eps < 1, got " + std::to_string(req.eps));
        }
        double floor_beta = 8.0 / (req.eps * req.eps);
        long long beta = req.beta ? *req.beta : detail::ceil_tol(floor_beta) + 1;
        if (static_cast<double>(beta) <= floor_beta) {
            throw ConfigError("beta must exceed 8/eps^2 = " + std::to_string(floor_beta));
        }
        if (req.alpha == 0) throw ConfigError("alpha must be positive");
        out.beta = static_cast<int>(beta);
        out.load_cap = default_arboricity_cap(req.alpha, n_vertices);
        out.max_path_length = 2 * static_cast<std::size_t>(beta) + 1;
        out.max_changes_per_unit = 4 * static_cast<std::size_t>(beta);
        out.max_changes_per_update = 4 * static_cast<std::size_t>(beta) * static_cast<std::size_t>(beta);
        out.mu_h_factor = 1.0 - req.eps;
        out.ratio_bound = 0.0;
    }
    return out;
}

}  // namespace edcs::harness

#endif  // EDCS_HARNESS_PARAMS_HPP
