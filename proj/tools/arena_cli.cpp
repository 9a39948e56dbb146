// arena: pairwise-comparison tournaments and zero-shot baselines for
// binary-classification datasets, with Elo-derived ROC/PR reporting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arena/ingest.hpp"
#include "arena/judging.hpp"
#include "arena/metrics.hpp"
#include "arena/rng.hpp"
#include "arena/tournament.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace arena;

namespace {

struct DatasetOpts {
    std::string path;
    std::string format = "cola-tsv";
    std::vector<std::string> text_fields{"text"};
    std::string label_field;
    std::string positive_value = "1";
};

struct JudgeOpts {
    std::string kind = "oracle";
    std::string endpoint;
    std::string model;
    double temperature = 0.0;
    int max_tokens = 512;
    double flip_prob = 0.1;
    double hidden_scale = 400.0;
    int max_attempts = 3;
};

void add_dataset_flags(CLI::App* cmd, DatasetOpts& d) {
    cmd->add_option("--dataset", d.path, "Dataset file path")->required();
    cmd->add_option("--format", d.format, "Dataset format")
        ->check(CLI::IsMember({"cola-tsv", "jsonl"}));
    cmd->add_option("--text-fields", d.text_fields,
                    "JSONL text field names (multiple get rendered into one "
                    "text block)");
    cmd->add_option("--label-field", d.label_field, "JSONL gold label field");
    cmd->add_option("--positive-value", d.positive_value,
                    "JSONL label value mapped to the positive class");
}

void add_judge_flags(CLI::App* cmd, JudgeOpts& j) {
    cmd->add_option("--judge", j.kind, "Judge kind")
        ->check(CLI::IsMember({"remote", "oracle", "noisy-bt", "label-flip"}));
    cmd->add_option("--endpoint", j.endpoint,
                    "Chat-completions endpoint URL (remote judge)");
    cmd->add_option("--model", j.model, "Model name (remote judge)");
    cmd->add_option("--temperature", j.temperature, "Sampling temperature");
    cmd->add_option("--max-tokens", j.max_tokens, "Max output tokens");
    cmd->add_option("--flip-prob", j.flip_prob,
                    "Label-flip judge noise epsilon in [0, 0.5]")
        ->check(CLI::Range(0.0, 0.5));
    cmd->add_option("--hidden-scale", j.hidden_scale,
                    "Elo gap between classes for simulated judges");
    cmd->add_option("--max-attempts", j.max_attempts,
                    "Retry budget per remote call")
        ->check(CLI::PositiveNumber);
}

Dataset load_dataset(const DatasetOpts& d) {
    if (d.format == "cola-tsv") return load_cola_tsv(d.path);
    JsonlOptions opts;
    opts.text_fields = d.text_fields;
    if (!d.label_field.empty()) opts.label_field = d.label_field;
    opts.positive_value = d.positive_value;
    return load_jsonl(d.path, opts);
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Simulated judges need per-instance quality scores. We derive them from
// gold labels: the classes sit hidden_scale Elo apart, with a small seeded
// jitter so every instance is distinct.
std::map<std::string, double> hidden_from_gold(const Dataset& data,
                                               double scale, uint64_t seed) {
    std::map<std::string, double> out;
    for (const auto& inst : data) {
        Rng rng(derive_seed(seed, 0x68696464ULL, fnv1a(inst.id)));
        double base = 0.0;
        if (inst.gold) base = *inst.gold == 1 ? scale / 2.0 : -scale / 2.0;
        out[inst.id] = base + (rng.next_double() - 0.5) * scale / 50.0;
    }
    return out;
}

JudgeSpec build_judge(const JudgeOpts& j, const Dataset& data, uint64_t seed) {
    JudgeSpec spec;
    spec.seed = seed;
    spec.max_attempts = j.max_attempts;
    spec.flip_prob = j.flip_prob;
    if (j.kind == "remote") {
        spec.kind = JudgeKind::Remote;
        if (j.endpoint.empty()) {
            throw CLI::ValidationError("--endpoint is required for --judge remote");
        }
        spec.remote.endpoint = j.endpoint;
        spec.remote.model = j.model;
        spec.remote.temperature = j.temperature;
        spec.remote.max_tokens = j.max_tokens;
    } else if (j.kind == "oracle" || j.kind == "noisy-bt") {
        spec.kind = j.kind == "oracle" ? JudgeKind::Oracle : JudgeKind::NoisyBt;
        spec.hidden = hidden_from_gold(data, j.hidden_scale, seed);
    } else {
        spec.kind = JudgeKind::LabelFlip;
    }
    return spec;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

json threshold_metrics_json(const ThresholdMetrics& m) {
    return {{"threshold", m.threshold}, {"f1", m.f1},
            {"precision", m.precision}, {"recall", m.recall},
            {"accuracy", m.accuracy}};
}

json curve_report_json(const CurveReport& rep) {
    json roc = json::array(), pr = json::array();
    for (auto [fpr, tpr] : rep.roc_points) roc.push_back({fpr, tpr});
    for (auto [rec, prec] : rep.pr_points) pr.push_back({rec, prec});
    return {{"auroc", rep.auroc},
            {"auprc", rep.auprc},
            {"best_threshold", threshold_metrics_json(rep.best)},
            {"roc_points", roc},
            {"pr_points", pr}};
}

std::string ratings_csv(const TournamentState& state) {
    std::ostringstream out;
    out.precision(17);
    out << "id,elo,score,gold\n";
    for (const auto& e : state.roster) {
        double elo = state.ratings.at(e.id);
        out << e.id << "," << elo << ","
            << rating_to_score(elo, state.config.elo.init_center) << ",";
        if (e.gold) out << *e.gold;
        out << "\n";
    }
    return out.str();
}

void write_manifest(const fs::path& dir, const json& config_echo,
                    const std::vector<std::string>& artifacts) {
    json manifest = {{"config", config_echo}, {"artifacts", artifacts}};
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

// Writes the label-dependent report when possible; returns whether it was.
bool write_state_reports(const TournamentState& state, const fs::path& dir) {
    write_text(dir / "ratings.csv", ratings_csv(state));
    write_text(dir / "rounds.csv", round_metrics_csv(state.per_round_metrics));
    auto scored = scored_from_state(state);
    int pos = 0, neg = 0;
    for (const auto& s : scored) (s.gold == 1 ? pos : neg) += 1;
    if (pos == 0 || neg == 0) return false;
    CurveReport rep = curve_report(scored);
    write_text(dir / "report.json", curve_report_json(rep).dump(2) + "\n");
    std::printf("auroc=%.6f auprc=%.6f best_f1=%.6f at threshold=%.6f\n",
                rep.auroc, rep.auprc, rep.best.f1, rep.best.threshold);
    return true;
}

int cmd_tournament(const DatasetOpts& d, const JudgeOpts& j,
                   const std::string& scheduler, int rounds, uint64_t seed,
                   double k_factor, double init_spread, int parallelism,
                   const std::string& out_dir, const std::string& tpl,
                   const std::string& resume_path) {
    Dataset data = load_dataset(d);

    TournamentState state;
    if (!resume_path.empty()) {
        state = load_checkpoint(resume_path);
        state = resume_tournament(std::move(state), data, out_dir);
    } else {
        TournamentConfig cfg;
        if (scheduler == "random") cfg.scheduler = SchedulerKind::Random;
        else if (scheduler == "graph") cfg.scheduler = SchedulerKind::Graph;
        else cfg.scheduler = SchedulerKind::Swiss;
        cfg.rounds_target = rounds;
        cfg.elo.seed = seed;
        cfg.elo.k_factor = k_factor;
        cfg.elo.init_spread = init_spread;
        cfg.judge = build_judge(j, data, seed);
        cfg.parallelism = parallelism;
        cfg.template_name = tpl;
        state = run_tournament(data, cfg, out_dir);
    }

    fs::create_directories(out_dir);
    save_checkpoint(state, out_dir);
    write_state_reports(state, out_dir);
    json echo = json::parse(state_to_json(state))["config"];
    echo["dataset"] = d.path;
    echo["seed"] = seed;
    write_manifest(out_dir, echo,
                   {"checkpoint.json", "matches.jsonl", "rounds.csv",
                    "ratings.csv", "report.json", "manifest.json"});
    std::printf("tournament complete: %d rounds, %zu matches -> %s\n",
                state.round_index, state.matches.size(), out_dir.c_str());
    return 0;
}

int cmd_zeroshot(const DatasetOpts& d, const JudgeOpts& j,
                 const std::string& style_name, uint64_t seed,
                 const std::string& out_dir, const std::string& tpl_name) {
    Dataset data = load_dataset(d);
    JudgeSpec judge = build_judge(j, data, seed);
    PromptTemplate tpl = resolve_template(tpl_name, /*pairwise=*/false);
    PromptStyle style = style_name == "precision" ? PromptStyle::Precision
                        : style_name == "recall"  ? PromptStyle::Recall
                                                  : PromptStyle::Plain;

    fs::create_directories(out_dir);
    std::vector<std::optional<int>> preds;
    std::vector<int> gold;
    bool all_labeled = true;
    std::string jsonl;
    for (const auto& inst : data) {
        SinglePrediction p = classify_single(judge, tpl, inst, style);
        std::optional<int> pred;
        if (p.label) pred = *p.label == Label::Pos ? 1 : 0;
        preds.push_back(pred);
        if (inst.gold) gold.push_back(*inst.gold);
        else all_labeled = false;
        json rec = {{"id", inst.id},
                    {"prediction", pred ? json(*pred) : json(nullptr)},
                    {"raw_response", p.raw_response},
                    {"attempts", p.attempts}};
        rec["gold"] = inst.gold ? json(*inst.gold) : json(nullptr);
        jsonl += rec.dump() + "\n";
    }
    write_text(fs::path(out_dir) / "predictions.jsonl", jsonl);

    json report;
    if (all_labeled && !gold.empty()) {
        ClassificationReport r = classification_report(preds, gold);
        report = {{"precision", r.precision},
                  {"recall", r.recall},
                  {"f1", r.f1},
                  {"accuracy", r.accuracy},
                  {"precision_defined", r.precision_defined},
                  {"recall_defined", r.recall_defined},
                  {"extraction_failures", r.extraction_failures}};
        std::printf("precision=%.4f recall=%.4f f1=%.4f accuracy=%.4f "
                    "failures=%d\n",
                    r.precision, r.recall, r.f1, r.accuracy,
                    r.extraction_failures);
    } else {
        int failures = 0;
        for (const auto& p : preds) failures += !p.has_value();
        report = {{"note", "gold labels unavailable; metrics not computed"},
                  {"extraction_failures", failures}};
        std::fprintf(stderr, "dataset has unlabeled instances; skipping "
                             "classification metrics\n");
    }
    write_text(fs::path(out_dir) / "report.json", report.dump(2) + "\n");
    json echo = {{"dataset", d.path}, {"judge", j.kind},
                 {"style", style_name}, {"template", tpl_name},
                 {"seed", seed}};
    write_manifest(out_dir, echo,
                   {"predictions.jsonl", "report.json", "manifest.json"});
    return 0;
}

int cmd_report(const std::string& checkpoint_path, const std::string& out_dir) {
    TournamentState state = load_checkpoint(checkpoint_path);
    fs::create_directories(out_dir);
    bool labeled = write_state_reports(state, out_dir);
    if (!labeled) {
        std::fprintf(stderr,
                     "checkpoint has no (or single-class) gold labels; "
                     "wrote ratings table only, label-dependent metrics "
                     "unavailable\n");
    }
    json echo = {{"checkpoint", checkpoint_path}};
    write_manifest(out_dir, echo,
                   {"ratings.csv", "rounds.csv", "report.json",
                    "manifest.json"});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elo tournament ranking and zero-shot baselines for binary "
                 "classification datasets"};
    app.require_subcommand(1);

    DatasetOpts dataset;
    JudgeOpts judge;
    std::string scheduler = "random";
    int rounds = 10;
    uint64_t seed = 0;
    double k_factor = 32.0;
    double init_spread = 0.5;
    int parallelism = 1;
    std::string out_dir = "arena-out";
    std::string template_name = "cola";
    std::string resume_path;
    std::string style = "plain";
    std::string checkpoint_path;

    CLI::App* t = app.add_subcommand(
        "tournament", "Run a pairwise-comparison tournament");
    add_dataset_flags(t, dataset);
    add_judge_flags(t, judge);
    t->add_option("--scheduler", scheduler, "Pairing strategy")
        ->check(CLI::IsMember({"random", "graph", "swiss"}));
    t->add_option("--rounds", rounds, "Number of rounds")
        ->check(CLI::PositiveNumber);
    t->add_option("--seed", seed, "RNG seed");
    t->add_option("--k-factor", k_factor, "Elo K-factor")
        ->check(CLI::PositiveNumber);
    t->add_option("--init-spread", init_spread,
                  "Half-width of the initial rating jitter around 1000");
    t->add_option("--parallelism", parallelism,
                  "Max concurrently judged matches")
        ->check(CLI::PositiveNumber);
    t->add_option("--out", out_dir, "Output directory");
    t->add_option("--template", template_name,
                  "Pairwise prompt template (cola, clinifact, or file path)");
    t->add_option("--resume", resume_path, "Resume from a checkpoint file");

    CLI::App* z = app.add_subcommand(
        "zeroshot", "Classify each instance once (baseline)");
    add_dataset_flags(z, dataset);
    add_judge_flags(z, judge);
    z->add_option("--style", style, "Prompt steering style")
        ->check(CLI::IsMember({"plain", "precision", "recall"}));
    z->add_option("--seed", seed, "RNG seed");
    z->add_option("--out", out_dir, "Output directory");
    z->add_option("--template", template_name,
                  "Single-instance prompt template");

    CLI::App* r = app.add_subcommand(
        "report", "Recompute metrics from a saved checkpoint");
    r->add_option("checkpoint", checkpoint_path, "Checkpoint JSON path")
        ->required();
    r->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (t->parsed()) {
            return cmd_tournament(dataset, judge, scheduler, rounds, seed,
                                  k_factor, init_spread, parallelism, out_dir,
                                  template_name, resume_path);
        }
        if (z->parsed()) {
            return cmd_zeroshot(dataset, judge, style, seed, out_dir,
                                template_name);
        }
        return cmd_report(checkpoint_path, out_dir);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
