#include "arena/tournament.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "arena/rng.hpp"
#include "json.hpp"

namespace arena {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr uint64_t kScheduleStream = 0x73636865ULL;  // random-scheduler draws

std::string scheduler_name(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::Random: return "random";
        case SchedulerKind::Graph: return "graph";
        case SchedulerKind::Swiss: return "swiss";
    }
    return "random";
}

SchedulerKind scheduler_from_name(const std::string& s) {
    if (s == "random") return SchedulerKind::Random;
    if (s == "graph") return SchedulerKind::Graph;
    if (s == "swiss") return SchedulerKind::Swiss;
    throw std::runtime_error("unknown scheduler: " + s);
}

std::string judge_name(JudgeKind k) {
    switch (k) {
        case JudgeKind::Remote: return "remote";
        case JudgeKind::Oracle: return "oracle";
        case JudgeKind::NoisyBt: return "noisy-bt";
        case JudgeKind::LabelFlip: return "label-flip";
    }
    return "oracle";
}

JudgeKind judge_from_name(const std::string& s) {
    if (s == "remote") return JudgeKind::Remote;
    if (s == "oracle") return JudgeKind::Oracle;
    if (s == "noisy-bt") return JudgeKind::NoisyBt;
    if (s == "label-flip") return JudgeKind::LabelFlip;
    throw std::runtime_error("unknown judge kind: " + s);
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::AWins: return "a_wins";
        case Outcome::BWins: return "b_wins";
        case Outcome::Skipped: return "skipped";
    }
    return "skipped";
}

Outcome outcome_from_name(const std::string& s) {
    if (s == "a_wins") return Outcome::AWins;
    if (s == "b_wins") return Outcome::BWins;
    if (s == "skipped") return Outcome::Skipped;
    throw std::runtime_error("unknown outcome: " + s);
}

json match_to_json(const MatchRecord& m) {
    return json{{"round", m.round_index},
                {"id_a", m.id_a},
                {"id_b", m.id_b},
                {"outcome", outcome_name(m.outcome)},
                {"raw_response", m.raw_response},
                {"attempts", m.attempts}};
}

MatchRecord match_from_json(const json& j) {
    MatchRecord m;
    m.round_index = j.at("round").get<int>();
    m.id_a = j.at("id_a").get<std::string>();
    m.id_b = j.at("id_b").get<std::string>();
    m.outcome = outcome_from_name(j.at("outcome").get<std::string>());
    m.raw_response = j.at("raw_response").get<std::string>();
    m.attempts = j.at("attempts").get<int>();
    return m;
}

void append_round_metrics(TournamentState& state) {
    auto scored = scored_from_state(state);
    int pos = 0, neg = 0;
    for (const auto& s : scored) (s.gold == 1 ? pos : neg) += 1;
    if (pos == 0 || neg == 0) return;  // metrics need both classes
    RoundMetricsEntry e;
    e.round = state.round_index;
    e.auroc = auroc(scored);
    e.auprc = pr_curve_and_auprc(scored).second;
    state.per_round_metrics.push_back(e);
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

}  // namespace

TournamentState init_tournament(const Dataset& instances,
                                const TournamentConfig& config) {
    if (config.rounds_target < 1) {
        throw std::invalid_argument("rounds_target must be >= 1");
    }
    if (instances.empty()) {
        throw std::invalid_argument("dataset is empty");
    }
    TournamentState state;
    state.config = config;
    std::vector<std::string> ids;
    ids.reserve(instances.size());
    for (const auto& inst : instances) {
        state.roster.push_back({inst.id, inst.gold});
        ids.push_back(inst.id);
    }
    for (const auto& r : init_ratings(ids, config.elo)) {
        state.ratings[r.instance_id] = r.elo;
    }
    return state;
}

void run_round(TournamentState& state, const Dataset& instances) {
    if (state.round_index >= state.config.rounds_target) {
        throw std::invalid_argument("tournament already at rounds_target");
    }
    if (instances.size() != state.roster.size()) {
        throw std::invalid_argument("dataset does not match roster");
    }
    std::unordered_map<std::string, const Instance*> by_id;
    std::vector<std::string> ids;
    ids.reserve(instances.size());
    for (size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].id != state.roster[i].id) {
            throw std::invalid_argument("dataset order does not match roster");
        }
        by_id[instances[i].id] = &instances[i];
        ids.push_back(instances[i].id);
    }

    const int round = state.round_index;
    RoundSchedule schedule;
    switch (state.config.scheduler) {
        case SchedulerKind::Random: {
            Rng rng(derive_seed(state.config.elo.seed, kScheduleStream,
                                static_cast<uint64_t>(round)));
            schedule = schedule_random(ids, rng, round);
            break;
        }
        case SchedulerKind::Graph:
            schedule = schedule_graph(ids, state.history,
                                      static_cast<int>(ids.size()), round);
            break;
        case SchedulerKind::Swiss: {
            std::vector<Rating> ranked;
            ranked.reserve(ids.size());
            for (const auto& id : ids) ranked.push_back({id, state.ratings.at(id)});
            schedule = schedule_swiss(ranked, round);
            break;
        }
    }

    const PromptTemplate tpl =
        resolve_template(state.config.template_name, /*pairwise=*/true);

    // Judge every pair; outcomes depend only on (seed, round, pair), so a
    // worker pool cannot change results, only wall time.
    std::vector<MatchRecord> results(schedule.pairs.size());
    const int workers = std::max(
        1, std::min<int>(state.config.parallelism,
                         static_cast<int>(schedule.pairs.size())));
    if (workers <= 1) {
        for (size_t i = 0; i < schedule.pairs.size(); ++i) {
            const auto& [a, b] = schedule.pairs[i];
            results[i] = judge_pair(state.config.judge, tpl, *by_id.at(a),
                                    *by_id.at(b), round);
        }
    } else {
        std::atomic<size_t> next{0};
        auto work = [&] {
            for (size_t i = next.fetch_add(1); i < schedule.pairs.size();
                 i = next.fetch_add(1)) {
                const auto& [a, b] = schedule.pairs[i];
                results[i] = judge_pair(state.config.judge, tpl, *by_id.at(a),
                                        *by_id.at(b), round);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // Batch update from ratings frozen at round start. Each instance plays
    // at most once per round, so deltas never stack.
    std::vector<std::pair<std::string, double>> updated;
    for (const auto& rec : results) {
        if (rec.outcome == Outcome::Skipped) continue;
        auto [na, nb] = update_pair(state.ratings.at(rec.id_a),
                                    state.ratings.at(rec.id_b),
                                    rec.outcome == Outcome::AWins,
                                    state.config.elo.k_factor);
        updated.emplace_back(rec.id_a, na);
        updated.emplace_back(rec.id_b, nb);
    }
    for (const auto& [id, elo] : updated) state.ratings[id] = elo;

    record_round(state.history, schedule);
    for (auto& rec : results) state.matches.push_back(std::move(rec));
    state.round_index += 1;
    append_round_metrics(state);
}

namespace {

void checkpoint_if(const TournamentState& state, const std::string& out_dir) {
    if (!out_dir.empty()) save_checkpoint(state, out_dir);
}

TournamentState run_rounds(TournamentState state, const Dataset& instances,
                           const std::string& out_dir) {
    while (state.round_index < state.config.rounds_target) {
        run_round(state, instances);
        checkpoint_if(state, out_dir);
    }
    return state;
}

}  // namespace

TournamentState run_tournament(const Dataset& instances,
                               const TournamentConfig& config,
                               const std::string& out_dir) {
    return run_rounds(init_tournament(instances, config), instances, out_dir);
}

TournamentState resume_tournament(TournamentState state,
                                  const Dataset& instances,
                                  const std::string& out_dir) {
    return run_rounds(std::move(state), instances, out_dir);
}

std::string state_to_json(const TournamentState& state) {
    json roster = json::array();
    for (const auto& e : state.roster) {
        json entry = {{"id", e.id}};
        entry["gold"] = e.gold ? json(*e.gold) : json(nullptr);
        roster.push_back(entry);
    }
    json ratings = json::object();
    for (const auto& [id, elo] : state.ratings) ratings[id] = elo;

    json history = json::array();
    for (const auto& [pair, n] : state.history.counts()) {
        history.push_back(json::array({pair.first, pair.second, n}));
    }
    json matches = json::array();
    for (const auto& m : state.matches) matches.push_back(match_to_json(m));

    json metrics = json::array();
    for (const auto& e : state.per_round_metrics) {
        metrics.push_back(
            {{"round", e.round}, {"auroc", e.auroc}, {"auprc", e.auprc}});
    }

    const auto& c = state.config;
    json config = {
        {"scheduler", scheduler_name(c.scheduler)},
        {"elo",
         {{"k_factor", c.elo.k_factor},
          {"init_center", c.elo.init_center},
          {"init_spread", c.elo.init_spread},
          {"seed", c.elo.seed}}},
        {"judge",
         {{"kind", judge_name(c.judge.kind)},
          {"endpoint", c.judge.remote.endpoint},
          {"model", c.judge.remote.model},
          {"temperature", c.judge.remote.temperature},
          {"max_tokens", c.judge.remote.max_tokens},
          {"max_inflight", c.judge.remote.max_inflight},
          {"hidden", json(c.judge.hidden)},
          {"flip_prob", c.judge.flip_prob},
          {"seed", c.judge.seed},
          {"max_attempts", c.judge.max_attempts}}},
        {"rounds_target", c.rounds_target},
        {"template", c.template_name},
        {"parallelism", c.parallelism},
    };

    json doc = {
        {"schema_version", state.version},
        {"round_index", state.round_index},
        {"roster", roster},
        {"ratings", ratings},
        {"history", history},
        {"matches", matches},
        {"per_round_metrics", metrics},
        {"config", config},
    };
    return doc.dump(2) + "\n";
}

TournamentState state_from_json(const std::string& text) {
    json doc = json::parse(text);  // throws on malformed input
    TournamentState state;
    state.version = doc.at("schema_version").get<int>();
    if (state.version != 1) {
        throw std::runtime_error("unsupported checkpoint schema version " +
                                 std::to_string(state.version));
    }
    state.round_index = doc.at("round_index").get<int>();
    for (const auto& e : doc.at("roster")) {
        RosterEntry r;
        r.id = e.at("id").get<std::string>();
        if (!e.at("gold").is_null()) r.gold = e.at("gold").get<int>();
        state.roster.push_back(std::move(r));
    }
    for (const auto& [id, elo] : doc.at("ratings").items()) {
        state.ratings[id] = elo.get<double>();
    }
    for (const auto& h : doc.at("history")) {
        state.history.set_count(h.at(0).get<std::string>(),
                                h.at(1).get<std::string>(), h.at(2).get<int>());
    }
    for (const auto& m : doc.at("matches")) {
        state.matches.push_back(match_from_json(m));
    }
    for (const auto& e : doc.at("per_round_metrics")) {
        state.per_round_metrics.push_back({e.at("round").get<int>(),
                                           e.at("auroc").get<double>(),
                                           e.at("auprc").get<double>()});
    }

    const json& c = doc.at("config");
    TournamentConfig cfg;
    cfg.scheduler = scheduler_from_name(c.at("scheduler").get<std::string>());
    cfg.elo.k_factor = c.at("elo").at("k_factor").get<double>();
    cfg.elo.init_center = c.at("elo").at("init_center").get<double>();
    cfg.elo.init_spread = c.at("elo").at("init_spread").get<double>();
    cfg.elo.seed = c.at("elo").at("seed").get<uint64_t>();
    const json& jj = c.at("judge");
    cfg.judge.kind = judge_from_name(jj.at("kind").get<std::string>());
    cfg.judge.remote.endpoint = jj.at("endpoint").get<std::string>();
    cfg.judge.remote.model = jj.at("model").get<std::string>();
    cfg.judge.remote.temperature = jj.at("temperature").get<double>();
    cfg.judge.remote.max_tokens = jj.at("max_tokens").get<int>();
    cfg.judge.remote.max_inflight = jj.at("max_inflight").get<int>();
    cfg.judge.hidden =
        jj.at("hidden").get<std::map<std::string, double>>();
    cfg.judge.flip_prob = jj.at("flip_prob").get<double>();
    cfg.judge.seed = jj.at("seed").get<uint64_t>();
    cfg.judge.max_attempts = jj.at("max_attempts").get<int>();
    cfg.rounds_target = c.at("rounds_target").get<int>();
    cfg.template_name = c.at("template").get<std::string>();
    cfg.parallelism = c.at("parallelism").get<int>();
    state.config = std::move(cfg);

    if (state.ratings.size() != state.roster.size()) {
        throw std::runtime_error("checkpoint ratings do not cover roster");
    }
    return state;
}

void save_checkpoint(const TournamentState& state, const std::string& dir) {
    fs::create_directories(dir);
    write_file_atomic(fs::path(dir) / "checkpoint.json", state_to_json(state));
    write_file_atomic(fs::path(dir) / "matches.jsonl",
                      matches_to_jsonl(state.matches));
    write_file_atomic(fs::path(dir) / "rounds.csv",
                      round_metrics_csv(state.per_round_metrics));
}

TournamentState load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return state_from_json(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error("corrupt checkpoint " + path + ": " +
                                 e.what());
    }
}

std::vector<ScoredInstance> scored_from_state(const TournamentState& state) {
    std::vector<ScoredInstance> out;
    for (const auto& e : state.roster) {
        if (!e.gold) continue;
        out.push_back({e.id,
                       rating_to_score(state.ratings.at(e.id),
                                       state.config.elo.init_center),
                       *e.gold});
    }
    return out;
}

std::string matches_to_jsonl(const std::vector<MatchRecord>& matches) {
    std::string out;
    for (const auto& m : matches) out += match_to_json(m).dump() + "\n";
    return out;
}

std::string round_metrics_csv(const std::vector<RoundMetricsEntry>& entries) {
    std::ostringstream out;
    out << "round,auroc,auprc\n";
    out.precision(17);
    for (const auto& e : entries) {
        out << e.round << "," << e.auroc << "," << e.auprc << "\n";
    }
    return out.str();
}

}  // namespace arena
