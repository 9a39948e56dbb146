#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace arena {

struct Rating {
    std::string instance_id;
    double elo = 0.0;
};

struct EloConfig {
    double k_factor = 32.0;
    double init_center = 1000.0;
    double init_spread = 0.5;
    uint64_t seed = 0;
};

// Expected win probability of a over b: 1 / (1 + 10^((e_b - e_a)/400)).
double expected_score(double e_a, double e_b);

// One Elo update for both sides of a match. Deltas are zero-sum and each
// bounded by k in magnitude. Throws std::domain_error on non-finite input
// or k <= 0.
std::pair<double, double> update_pair(double e_a, double e_b, bool a_won,
                                      double k);

// Seeded uniform initialization on [center - spread, center + spread].
// Ratings are forced pairwise distinct (re-draw on exact collision) so
// downstream rank sorts are unambiguous. Throws std::invalid_argument on
// duplicate ids.
std::vector<Rating> init_ratings(const std::vector<std::string>& instance_ids,
                                 const EloConfig& cfg);

// Monotone map from Elo to (0,1): the expected score against a fixed anchor.
double rating_to_score(double e, double anchor = 1000.0);

}  // namespace arena
