#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arena/rating.hpp"
#include "arena/rng.hpp"

namespace arena {

struct RoundSchedule {
    int round_index = 0;
    // Pairs are stored in dataset order within each pair.
    std::vector<std::pair<std::string, std::string>> pairs;
    std::optional<std::string> bye;
};

// Symmetric, irreflexive record of which pairs have played and how often.
class MatchHistory {
public:
    void record(const std::string& a, const std::string& b);
    bool played(const std::string& a, const std::string& b) const;
    int count(const std::string& a, const std::string& b) const;

    const std::map<std::pair<std::string, std::string>, int>& counts() const {
        return counts_;
    }
    void set_count(const std::string& a, const std::string& b, int n);

private:
    // Canonical key: lexicographically smaller id first.
    std::map<std::pair<std::string, std::string>, int> counts_;
};

enum class SchedulerKind { Random, Graph, Swiss };

// Uniformly random matching: draw two ids at a time without replacement.
// Odd count leaves the last remaining id as the bye. Repeats across rounds
// are allowed.
RoundSchedule schedule_random(const std::vector<std::string>& ids, Rng& rng,
                              int round_index = 0);

// Farthest-first pairing on the played-matches graph. Distances are
// unweighted shortest paths (BFS per node); disconnected pairs count as
// n_total. Among equal distances the pair that is smallest in dataset order
// (min index, then max index) wins. ids must be in dataset order.
RoundSchedule schedule_graph(const std::vector<std::string>& ids,
                             const MatchHistory& history, int n_total,
                             int round_index = 0);

// Dutch-system Swiss pairing: rank by elo descending (ties by input order),
// split into consecutive groups of 8, pair position i with 7 - i. A short
// final group of size g pairs i with g-1-i; odd g gives the middle
// instance the bye.
RoundSchedule schedule_swiss(const std::vector<Rating>& ratings,
                             int round_index = 0);

// Marks every scheduled pair as played and bumps its count.
void record_round(MatchHistory& history, const RoundSchedule& schedule);

}  // namespace arena
