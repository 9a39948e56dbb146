// Python module: thin bindings over the core library. Naming mirrors the
// C++ API; containers cross the boundary as native Python types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arena/ingest.hpp"
#include "arena/instance.hpp"
#include "arena/judging.hpp"
#include "arena/metrics.hpp"
#include "arena/rating.hpp"
#include "arena/rng.hpp"
#include "arena/scheduling.hpp"
#include "arena/tournament.hpp"

namespace py = pybind11;
using namespace arena;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pairwise Elo tournament ranking for binary classification";

    // --- core data types ---------------------------------------------------
    py::class_<Instance>(m, "Instance")
        .def(py::init<>())
        .def(py::init([](std::string id, std::map<std::string, std::string> f,
                         std::optional<int> gold) {
                 return Instance{std::move(id), std::move(f), gold};
             }),
             py::arg("id"), py::arg("fields"),
             py::arg("gold") = std::nullopt)
        .def_readwrite("id", &Instance::id)
        .def_readwrite("fields", &Instance::fields)
        .def_readwrite("gold", &Instance::gold);

    py::class_<Rating>(m, "Rating")
        .def(py::init<>())
        .def_readwrite("instance_id", &Rating::instance_id)
        .def_readwrite("elo", &Rating::elo);

    py::class_<EloConfig>(m, "EloConfig")
        .def(py::init<>())
        .def_readwrite("k_factor", &EloConfig::k_factor)
        .def_readwrite("init_center", &EloConfig::init_center)
        .def_readwrite("init_spread", &EloConfig::init_spread)
        .def_readwrite("seed", &EloConfig::seed);

    m.def("expected_score", &expected_score, py::arg("e_a"), py::arg("e_b"));
    m.def("update_pair", &update_pair, py::arg("e_a"), py::arg("e_b"),
          py::arg("a_won"), py::arg("k"));
    m.def("init_ratings", &init_ratings, py::arg("instance_ids"),
          py::arg("config"));
    m.def("rating_to_score", &rating_to_score, py::arg("elo"),
          py::arg("anchor") = 1000.0);

    // --- scheduling ---------------------------------------------------------
    py::enum_<SchedulerKind>(m, "SchedulerKind")
        .value("RANDOM", SchedulerKind::Random)
        .value("GRAPH", SchedulerKind::Graph)
        .value("SWISS", SchedulerKind::Swiss);

    py::class_<RoundSchedule>(m, "RoundSchedule")
        .def_readonly("round_index", &RoundSchedule::round_index)
        .def_readonly("pairs", &RoundSchedule::pairs)
        .def_readonly("bye", &RoundSchedule::bye);

    py::class_<MatchHistory>(m, "MatchHistory")
        .def(py::init<>())
        .def("record", &MatchHistory::record)
        .def("played", &MatchHistory::played)
        .def("count", &MatchHistory::count);

    m.def(
        "schedule_random",
        [](const std::vector<std::string>& ids, uint64_t seed,
           int round_index) {
            Rng rng(seed);
            return schedule_random(ids, rng, round_index);
        },
        py::arg("ids"), py::arg("seed"), py::arg("round_index") = 0);
    m.def("schedule_graph", &schedule_graph, py::arg("ids"),
          py::arg("history"), py::arg("n_total"), py::arg("round_index") = 0);
    m.def("schedule_swiss", &schedule_swiss, py::arg("ratings"),
          py::arg("round_index") = 0);

    // --- judging ------------------------------------------------------------
    py::enum_<Choice>(m, "Choice").value("A", Choice::A).value("B", Choice::B);
    py::enum_<Label>(m, "Label")
        .value("POS", Label::Pos)
        .value("NEG", Label::Neg);
    py::enum_<Outcome>(m, "Outcome")
        .value("A_WINS", Outcome::AWins)
        .value("B_WINS", Outcome::BWins)
        .value("SKIPPED", Outcome::Skipped);
    py::enum_<PromptStyle>(m, "PromptStyle")
        .value("PLAIN", PromptStyle::Plain)
        .value("PRECISION", PromptStyle::Precision)
        .value("RECALL", PromptStyle::Recall);
    py::enum_<JudgeKind>(m, "JudgeKind")
        .value("REMOTE", JudgeKind::Remote)
        .value("ORACLE", JudgeKind::Oracle)
        .value("NOISY_BT", JudgeKind::NoisyBt)
        .value("LABEL_FLIP", JudgeKind::LabelFlip);

    py::class_<PromptTemplate>(m, "PromptTemplate")
        .def_readwrite("name", &PromptTemplate::name)
        .def_readwrite("body", &PromptTemplate::body)
        .def_readwrite("positive_class", &PromptTemplate::positive_class)
        .def_readwrite("negative_class", &PromptTemplate::negative_class);

    m.def("resolve_template", &resolve_template, py::arg("name_or_path"),
          py::arg("pairwise") = true);
    m.def("render_pairwise_prompt", &render_pairwise_prompt, py::arg("tpl"),
          py::arg("a"), py::arg("b"));
    m.def("render_single_prompt", &render_single_prompt, py::arg("tpl"),
          py::arg("x"), py::arg("style") = PromptStyle::Plain);
    m.def("extract_choice", &extract_choice, py::arg("response"),
          py::arg("tpl"));
    m.def("extract_label", &extract_label, py::arg("response"),
          py::arg("tpl"));

    py::class_<RemoteParams>(m, "RemoteParams")
        .def(py::init<>())
        .def_readwrite("endpoint", &RemoteParams::endpoint)
        .def_readwrite("model", &RemoteParams::model)
        .def_readwrite("temperature", &RemoteParams::temperature)
        .def_readwrite("max_tokens", &RemoteParams::max_tokens)
        .def_readwrite("max_inflight", &RemoteParams::max_inflight);

    py::class_<JudgeSpec>(m, "JudgeSpec")
        .def(py::init<>())
        .def_readwrite("kind", &JudgeSpec::kind)
        .def_readwrite("remote", &JudgeSpec::remote)
        .def_readwrite("hidden", &JudgeSpec::hidden)
        .def_readwrite("flip_prob", &JudgeSpec::flip_prob)
        .def_readwrite("seed", &JudgeSpec::seed)
        .def_readwrite("max_attempts", &JudgeSpec::max_attempts);

    py::class_<MatchRecord>(m, "MatchRecord")
        .def_readonly("round_index", &MatchRecord::round_index)
        .def_readonly("id_a", &MatchRecord::id_a)
        .def_readonly("id_b", &MatchRecord::id_b)
        .def_readonly("outcome", &MatchRecord::outcome)
        .def_readonly("raw_response", &MatchRecord::raw_response)
        .def_readonly("attempts", &MatchRecord::attempts);

    m.def("judge_pair", &judge_pair, py::arg("judge"), py::arg("tpl"),
          py::arg("a"), py::arg("b"), py::arg("round_index") = 0,
          py::call_guard<py::gil_scoped_release>());

    // --- metrics ------------------------------------------------------------
    py::class_<ScoredInstance>(m, "ScoredInstance")
        .def(py::init<>())
        .def(py::init([](std::string id, double score, int gold) {
                 return ScoredInstance{std::move(id), score, gold};
             }),
             py::arg("instance_id"), py::arg("score"), py::arg("gold"))
        .def_readwrite("instance_id", &ScoredInstance::instance_id)
        .def_readwrite("score", &ScoredInstance::score)
        .def_readwrite("gold", &ScoredInstance::gold);

    py::class_<ThresholdMetrics>(m, "ThresholdMetrics")
        .def_readonly("threshold", &ThresholdMetrics::threshold)
        .def_readonly("f1", &ThresholdMetrics::f1)
        .def_readonly("precision", &ThresholdMetrics::precision)
        .def_readonly("recall", &ThresholdMetrics::recall)
        .def_readonly("accuracy", &ThresholdMetrics::accuracy);

    py::class_<ClassificationReport>(m, "ClassificationReport")
        .def_readonly("precision", &ClassificationReport::precision)
        .def_readonly("recall", &ClassificationReport::recall)
        .def_readonly("f1", &ClassificationReport::f1)
        .def_readonly("accuracy", &ClassificationReport::accuracy)
        .def_readonly("precision_defined",
                      &ClassificationReport::precision_defined)
        .def_readonly("recall_defined", &ClassificationReport::recall_defined)
        .def_readonly("extraction_failures",
                      &ClassificationReport::extraction_failures);

    py::class_<CurveReport>(m, "CurveReport")
        .def_readonly("roc_points", &CurveReport::roc_points)
        .def_readonly("pr_points", &CurveReport::pr_points)
        .def_readonly("auroc", &CurveReport::auroc)
        .def_readonly("auprc", &CurveReport::auprc)
        .def_readonly("best", &CurveReport::best);

    m.def("roc_curve", &roc_curve, py::arg("scored"));
    m.def("auroc", &auroc, py::arg("scored"));
    m.def("pr_curve_and_auprc", &pr_curve_and_auprc, py::arg("scored"));
    m.def("best_f1_threshold", &best_f1_threshold, py::arg("scored"));
    m.def("classification_report", &classification_report,
          py::arg("predictions"), py::arg("gold"));
    m.def("curve_report", &curve_report, py::arg("scored"));

    // --- ingest -------------------------------------------------------------
    py::class_<JsonlOptions>(m, "JsonlOptions")
        .def(py::init<>())
        .def_readwrite("text_fields", &JsonlOptions::text_fields)
        .def_readwrite("label_field", &JsonlOptions::label_field)
        .def_readwrite("positive_value", &JsonlOptions::positive_value)
        .def_readwrite("render_combined_text",
                       &JsonlOptions::render_combined_text);

    m.def("load_cola_tsv", &load_cola_tsv, py::arg("path"));
    m.def("load_jsonl", &load_jsonl, py::arg("path"),
          py::arg("options") = JsonlOptions{});

    // --- tournament ---------------------------------------------------------
    py::class_<TournamentConfig>(m, "TournamentConfig")
        .def(py::init<>())
        .def_readwrite("scheduler", &TournamentConfig::scheduler)
        .def_readwrite("elo", &TournamentConfig::elo)
        .def_readwrite("judge", &TournamentConfig::judge)
        .def_readwrite("rounds_target", &TournamentConfig::rounds_target)
        .def_readwrite("template_name", &TournamentConfig::template_name)
        .def_readwrite("parallelism", &TournamentConfig::parallelism);

    py::class_<RoundMetricsEntry>(m, "RoundMetricsEntry")
        .def_readonly("round", &RoundMetricsEntry::round)
        .def_readonly("auroc", &RoundMetricsEntry::auroc)
        .def_readonly("auprc", &RoundMetricsEntry::auprc);

    py::class_<TournamentState>(m, "TournamentState")
        .def_readonly("round_index", &TournamentState::round_index)
        .def_readonly("ratings", &TournamentState::ratings)
        .def_readonly("matches", &TournamentState::matches)
        .def_readonly("per_round_metrics",
                      &TournamentState::per_round_metrics)
        .def_readonly("config", &TournamentState::config);

    m.def("init_tournament", &init_tournament, py::arg("instances"),
          py::arg("config"));
    m.def("run_round", &run_round, py::arg("state"), py::arg("instances"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_tournament", &run_tournament, py::arg("instances"),
          py::arg("config"), py::arg("out_dir") = "",
          py::call_guard<py::gil_scoped_release>());
    m.def("resume_tournament", &resume_tournament, py::arg("state"),
          py::arg("instances"), py::arg("out_dir") = "",
          py::call_guard<py::gil_scoped_release>());
    m.def("state_to_json", &state_to_json, py::arg("state"));
    m.def("state_from_json", &state_from_json, py::arg("text"));
    m.def("save_checkpoint", &save_checkpoint, py::arg("state"),
          py::arg("dir"));
    m.def("load_checkpoint", &load_checkpoint, py::arg("path"));
    m.def("scored_from_state", &scored_from_state, py::arg("state"));

    m.attr("API_KEY_ENV_VAR") = kApiKeyEnvVar;
}
