#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "arena/rng.hpp"
#include "arena/tournament.hpp"
#include "doctest.h"

using namespace arena;
namespace fs = std::filesystem;

namespace {

// n instances in dataset order; top half positive, hidden quality strictly
// decreasing with index so the oracle ranking is unambiguous.
Dataset synth_dataset(int n) {
    Dataset data;
    for (int i = 0; i < n; ++i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "i%03d", i);
        Instance x;
        x.id = buf;
        x.fields["text"] = "instance " + std::to_string(i);
        x.gold = i < n / 2 ? 1 : 0;
        data.push_back(std::move(x));
    }
    return data;
}

std::map<std::string, double> hidden_by_rank(const Dataset& data) {
    std::map<std::string, double> hidden;
    double q = 1000.0 + 2.0 * static_cast<double>(data.size());
    for (const auto& inst : data) {
        hidden[inst.id] = q;
        q -= 4.0;
    }
    return hidden;
}

TournamentConfig base_config(const Dataset& data, JudgeKind kind,
                             SchedulerKind sched, int rounds, uint64_t seed) {
    TournamentConfig cfg;
    cfg.scheduler = sched;
    cfg.rounds_target = rounds;
    cfg.elo.seed = seed;
    cfg.judge.kind = kind;
    cfg.judge.seed = seed;
    cfg.judge.hidden = hidden_by_rank(data);
    return cfg;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("arena_tourn_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

}  // namespace

TEST_CASE("one round with two instances applies the k/2 update") {
    auto data = synth_dataset(2);
    auto cfg = base_config(data, JudgeKind::Oracle, SchedulerKind::Random, 1, 3);
    auto state = init_tournament(data, cfg);
    double e0 = state.ratings.at("i000");
    double e1 = state.ratings.at("i001");

    run_round(state, data);
    // i000 has the higher hidden quality, so it wins; expected score is
    // ~0.5 up to the +/-0.5 init jitter.
    double p = expected_score(e0, e1);
    CHECK(state.ratings.at("i000") ==
          doctest::Approx(e0 + 32.0 * (1.0 - p)).epsilon(1e-12));
    CHECK(state.ratings.at("i001") ==
          doctest::Approx(e1 - 32.0 * (1.0 - p)).epsilon(1e-12));
    CHECK(state.matches.size() == 1);
    CHECK(state.matches[0].outcome == Outcome::AWins);
}

TEST_CASE("a single instance gets a bye and no update") {
    Dataset data = synth_dataset(1);
    auto cfg = base_config(data, JudgeKind::Oracle, SchedulerKind::Swiss, 1, 1);
    auto state = init_tournament(data, cfg);
    double before = state.ratings.at("i000");
    run_round(state, data);
    CHECK(state.ratings.at("i000") == before);
    CHECK(state.matches.empty());
}

TEST_CASE("skipped matches leave both ratings unchanged") {
    auto data = synth_dataset(4);
    TournamentConfig cfg;
    cfg.rounds_target = 1;
    cfg.judge.kind = JudgeKind::Remote;
    cfg.judge.remote.endpoint = "http://127.0.0.1:1/unreachable";
    cfg.judge.max_attempts = 1;
    auto state = init_tournament(data, cfg);
    auto before = state.ratings;
    run_round(state, data);
    CHECK(state.ratings == before);
    REQUIRE(state.matches.size() == 2);
    for (const auto& m : state.matches) {
        CHECK(m.outcome == Outcome::Skipped);
    }
}

TEST_CASE("rating mass is conserved across a noisy tournament") {
    auto data = synth_dataset(100);
    auto cfg =
        base_config(data, JudgeKind::NoisyBt, SchedulerKind::Random, 20, 11);
    auto state = init_tournament(data, cfg);
    double mass0 = 0;
    for (const auto& [id, e] : state.ratings) mass0 += e;
    auto final_state = run_tournament(data, cfg);
    double mass1 = 0;
    for (const auto& [id, e] : final_state.ratings) mass1 += e;
    CHECK(std::abs(mass1 - mass0) < 1e-6 * data.size());
}

TEST_CASE("each instance appears at most once per round") {
    auto data = synth_dataset(17);
    for (auto sched : {SchedulerKind::Random, SchedulerKind::Graph,
                       SchedulerKind::Swiss}) {
        auto cfg = base_config(data, JudgeKind::NoisyBt, sched, 5, 9);
        auto state = run_tournament(data, cfg);
        std::map<std::pair<int, std::string>, int> appearances;
        for (const auto& m : state.matches) {
            appearances[{m.round_index, m.id_a}] += 1;
            appearances[{m.round_index, m.id_b}] += 1;
        }
        for (const auto& [key, count] : appearances) CHECK(count == 1);
    }
}

TEST_CASE("post-round ratings are independent of judging order") {
    // Recompute the round's batch updates under random permutations of the
    // match list; frozen pre-round ratings make order irrelevant.
    auto data = synth_dataset(32);
    auto cfg =
        base_config(data, JudgeKind::NoisyBt, SchedulerKind::Random, 1, 21);
    auto state = init_tournament(data, cfg);
    auto frozen = state.ratings;
    run_round(state, data);

    Rng shuffle_rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto matches = state.matches;
        for (size_t i = matches.size(); i > 1; --i) {
            std::swap(matches[i - 1], matches[shuffle_rng.next_below(i)]);
        }
        auto ratings = frozen;
        for (const auto& m : matches) {
            if (m.outcome == Outcome::Skipped) continue;
            auto [na, nb] =
                update_pair(frozen.at(m.id_a), frozen.at(m.id_b),
                            m.outcome == Outcome::AWins, cfg.elo.k_factor);
            ratings[m.id_a] = na;
            ratings[m.id_b] = nb;
        }
        CHECK(ratings == state.ratings);
    }
}

TEST_CASE("parallel judging yields identical results") {
    auto data = synth_dataset(24);
    auto cfg =
        base_config(data, JudgeKind::NoisyBt, SchedulerKind::Graph, 6, 2);
    auto serial = run_tournament(data, cfg);
    cfg.parallelism = 8;
    auto parallel = run_tournament(data, cfg);
    CHECK(serial.ratings == parallel.ratings);
    CHECK(state_to_json(serial) != "");
}

TEST_CASE("per-round metrics series has one labeled point per round") {
    auto data = synth_dataset(16);
    auto cfg =
        base_config(data, JudgeKind::Oracle, SchedulerKind::Swiss, 7, 4);
    auto state = run_tournament(data, cfg);
    REQUIRE(state.per_round_metrics.size() == 7);
    for (int r = 0; r < 7; ++r) {
        CHECK(state.per_round_metrics[r].round == r + 1);
        CHECK(state.per_round_metrics[r].auroc >= 0.0);
        CHECK(state.per_round_metrics[r].auroc <= 1.0);
    }

    // Unlabeled dataset: no metrics entries.
    auto unlabeled = data;
    for (auto& inst : unlabeled) inst.gold.reset();
    auto cfg2 =
        base_config(unlabeled, JudgeKind::Oracle, SchedulerKind::Swiss, 3, 4);
    auto s2 = run_tournament(unlabeled, cfg2);
    CHECK(s2.per_round_metrics.empty());
}

TEST_CASE("checkpoint save/load is a field-equal roundtrip") {
    auto data = synth_dataset(10);
    auto cfg =
        base_config(data, JudgeKind::NoisyBt, SchedulerKind::Graph, 4, 8);
    TempDir dir;
    auto state = run_tournament(data, cfg, dir.path.string());
    auto loaded = load_checkpoint((dir.path / "checkpoint.json").string());
    CHECK(state_to_json(loaded) == state_to_json(state));
}

TEST_CASE("identical config and seed give byte-identical checkpoints") {
    auto data = synth_dataset(20);
    auto cfg =
        base_config(data, JudgeKind::NoisyBt, SchedulerKind::Random, 6, 123);
    auto a = run_tournament(data, cfg);
    auto b = run_tournament(data, cfg);
    CHECK(state_to_json(a) == state_to_json(b));
}

TEST_CASE("interrupt and resume equals the uninterrupted run") {
    auto data = synth_dataset(18);
    for (auto sched : {SchedulerKind::Random, SchedulerKind::Graph,
                       SchedulerKind::Swiss}) {
        auto cfg = base_config(data, JudgeKind::NoisyBt, sched, 10, 55);
        auto full = run_tournament(data, cfg);

        // Interrupt after round 5: serialize, reload, continue.
        auto partial = init_tournament(data, cfg);
        for (int r = 0; r < 5; ++r) run_round(partial, data);
        auto reloaded = state_from_json(state_to_json(partial));
        auto resumed = resume_tournament(std::move(reloaded), data);
        CHECK(state_to_json(resumed) == state_to_json(full));
    }
}

TEST_CASE("corrupt or missing checkpoints fail loudly") {
    TempDir dir;
    auto path = dir.path / "checkpoint.json";
    CHECK_THROWS_AS(load_checkpoint(path.string()), std::runtime_error);

    auto data = synth_dataset(6);
    auto cfg =
        base_config(data, JudgeKind::Oracle, SchedulerKind::Random, 2, 1);
    save_checkpoint(run_tournament(data, cfg), dir.path.string());
    auto full = [&] {
        std::ifstream in(path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }();
    {
        std::ofstream out(path, std::ios::trunc);
        out << full.substr(0, full.size() / 2);
    }
    try {
        load_checkpoint(path.string());
        FAIL("expected load error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("checkpoint.json") !=
              std::string::npos);
    }
}

TEST_CASE("run_tournament validates inputs") {
    auto data = synth_dataset(4);
    auto cfg = base_config(data, JudgeKind::Oracle, SchedulerKind::Random, 0, 1);
    CHECK_THROWS_AS(run_tournament(data, cfg), std::invalid_argument);
    cfg.rounds_target = 1;
    CHECK_THROWS_AS(run_tournament({}, cfg), std::invalid_argument);
}

TEST_CASE("scored_from_state uses labeled instances only") {
    auto data = synth_dataset(8);
    data[3].gold.reset();
    auto cfg = base_config(data, JudgeKind::Oracle, SchedulerKind::Random, 1, 1);
    auto state = run_tournament(data, cfg);
    auto scored = scored_from_state(state);
    CHECK(scored.size() == 7);
    for (const auto& s : scored) {
        CHECK(s.score > 0.0);
        CHECK(s.score < 1.0);
    }
}
