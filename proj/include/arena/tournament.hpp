#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arena/instance.hpp"
#include "arena/judging.hpp"
#include "arena/metrics.hpp"
#include "arena/rating.hpp"
#include "arena/scheduling.hpp"

namespace arena {

struct TournamentConfig {
    SchedulerKind scheduler = SchedulerKind::Random;
    EloConfig elo;
    JudgeSpec judge;
    int rounds_target = 10;
    std::string template_name = "cola";  // built-in name or template file path
    int parallelism = 1;
};

struct RoundMetricsEntry {
    int round = 0;
    double auroc = 0.0;
    double auprc = 0.0;
};

struct RosterEntry {
    std::string id;
    std::optional<int> gold;
};

struct TournamentState {
    int version = 1;
    int round_index = 0;  // rounds completed so far
    std::vector<RosterEntry> roster;  // dataset order; anchors tie-breaks
    std::map<std::string, double> ratings;
    MatchHistory history;
    std::vector<MatchRecord> matches;
    TournamentConfig config;
    std::vector<RoundMetricsEntry> per_round_metrics;
};

// Seeds ratings and captures the roster; does not judge anything.
TournamentState init_tournament(const Dataset& instances,
                                const TournamentConfig& config);

// One full round: schedule, judge every pair (frozen ratings), apply all
// updates in batch at round end, append history/log/metrics.
void run_round(TournamentState& state, const Dataset& instances);

// init + rounds_target rounds. When out_dir is nonempty a checkpoint is
// written after every round (checkpoint.json, matches.jsonl, rounds.csv);
// a failed round leaves the previous checkpoint intact.
TournamentState run_tournament(const Dataset& instances,
                               const TournamentConfig& config,
                               const std::string& out_dir = "");

// Continue a loaded state to rounds_target. instances must match the
// checkpointed roster.
TournamentState resume_tournament(TournamentState state,
                                  const Dataset& instances,
                                  const std::string& out_dir = "");

// Canonical serialization (stable key order, round-trippable doubles).
std::string state_to_json(const TournamentState& state);
TournamentState state_from_json(const std::string& text);

void save_checkpoint(const TournamentState& state, const std::string& dir);
// Throws std::runtime_error naming the file on missing/corrupt input.
TournamentState load_checkpoint(const std::string& path);

// Labeled instances with their current rating-derived scores.
std::vector<ScoredInstance> scored_from_state(const TournamentState& state);

std::string matches_to_jsonl(const std::vector<MatchRecord>& matches);
std::string round_metrics_csv(const std::vector<RoundMetricsEntry>& entries);

}  // namespace arena
