#include "arena/rating.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "arena/rng.hpp"

namespace arena {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

}  // namespace

double expected_score(double e_a, double e_b) {
    require_finite(e_a, "e_a");
    require_finite(e_b, "e_b");
    return 1.0 / (1.0 + std::pow(10.0, (e_b - e_a) / 400.0));
}

std::pair<double, double> update_pair(double e_a, double e_b, bool a_won,
                                      double k) {
    require_finite(e_a, "e_a");
    require_finite(e_b, "e_b");
    require_finite(k, "k");
    if (k <= 0.0) {
        throw std::domain_error("k must be positive");
    }
    const double p_a = expected_score(e_a, e_b);
    const double w_a = a_won ? 1.0 : 0.0;
    const double delta = k * (w_a - p_a);
    return {e_a + delta, e_b - delta};
}

std::vector<Rating> init_ratings(const std::vector<std::string>& instance_ids,
                                 const EloConfig& cfg) {
    if (cfg.k_factor <= 0.0 || cfg.init_spread < 0.0) {
        throw std::invalid_argument("invalid EloConfig");
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : instance_ids) {
        if (!seen.insert(id).second) {
            throw std::invalid_argument("duplicate instance id: " + id);
        }
    }

    Rng rng(derive_seed(cfg.seed, 0x696e6974ULL));  // "init" stream
    std::vector<Rating> out;
    out.reserve(instance_ids.size());
    std::unordered_set<double> used;
    for (const auto& id : instance_ids) {
        double elo;
        do {
            elo = cfg.init_center +
                  cfg.init_spread * (2.0 * rng.next_double() - 1.0);
        } while (cfg.init_spread > 0.0 && !used.insert(elo).second);
        if (cfg.init_spread == 0.0) {
            elo = cfg.init_center;
        }
        out.push_back({id, elo});
    }
    return out;
}

double rating_to_score(double e, double anchor) {
    return expected_score(e, anchor);
}

}  // namespace arena
