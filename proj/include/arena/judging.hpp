#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arena/instance.hpp"

namespace arena {

enum class Choice { A, B };
enum class Label { Pos, Neg };
enum class Outcome { AWins, BWins, Skipped };
enum class PromptStyle { Plain, Precision, Recall };

// One pattern-to-meaning rule, tried in order against judge output.
struct ExtractionRule {
    enum class Target { ChoiceA, ChoiceB, LabelPos, LabelNeg };
    std::string pattern;  // case-insensitive ECMAScript regex
    Target target;
};

struct PromptTemplate {
    std::string name;
    std::string body;  // named {placeholders}; {steering} marks where the
                       // precision/recall sentence goes, if present
    std::vector<ExtractionRule> rules;
    std::string positive_class;
    std::string negative_class;
};

// Built-in templates (pairwise + single-instance for each dataset family).
PromptTemplate cola_pairwise_template();
PromptTemplate cola_single_template();
PromptTemplate clinifact_pairwise_template();
PromptTemplate clinifact_single_template();
// Load a template body from a plain-text file; rules come from `like`.
PromptTemplate load_template_file(const std::string& path,
                                  const PromptTemplate& like);
// Resolve a template by name or by path.
PromptTemplate resolve_template(const std::string& name_or_path,
                                bool pairwise);

// Slot 1 gets a's fields, slot 2 gets b's ({text1} -> a.fields["text"]).
// Throws std::runtime_error naming any unresolvable placeholder.
std::string render_pairwise_prompt(const PromptTemplate& tpl,
                                   const Instance& a, const Instance& b);

// Single-instance render; Precision/Recall styles insert the steering
// sentence at the {steering} marker (or append it when absent).
std::string render_single_prompt(const PromptTemplate& tpl, const Instance& x,
                                 PromptStyle style);

// Never throws; nullopt when nothing matches. A structured
// {"choice": ..., "reasoning": ...} object takes precedence over raw
// pattern rules.
std::optional<Choice> extract_choice(const std::string& response,
                                     const PromptTemplate& tpl);
std::optional<Label> extract_label(const std::string& response,
                                   const PromptTemplate& tpl);

struct MatchRecord {
    int round_index = 0;
    std::string id_a;
    std::string id_b;
    Outcome outcome = Outcome::Skipped;
    std::string raw_response;
    int attempts = 0;
};

enum class JudgeKind { Remote, Oracle, NoisyBt, LabelFlip };

struct RemoteParams {
    std::string endpoint;  // e.g. http://localhost:8080/v1/chat/completions
    std::string model;
    double temperature = 0.0;
    int max_tokens = 512;
    int max_inflight = 4;
};

struct JudgeSpec {
    JudgeKind kind = JudgeKind::Oracle;
    RemoteParams remote;
    std::map<std::string, double> hidden;  // Oracle / NoisyBt quality scores
    double flip_prob = 0.0;                // LabelFlip epsilon, in [0, 0.5]
    uint64_t seed = 0;
    int max_attempts = 3;
};

// Decide one match. Remote judges retry up to max_attempts render/call/
// extract cycles and return Skipped when all fail; simulated judges are
// deterministic given (seed, round, pair).
MatchRecord judge_pair(const JudgeSpec& judge, const PromptTemplate& tpl,
                       const Instance& a, const Instance& b,
                       int round_index = 0);

struct SinglePrediction {
    std::optional<Label> label;
    std::string raw_response;
    int attempts = 0;
};

SinglePrediction classify_single(const JudgeSpec& judge,
                                 const PromptTemplate& tpl, const Instance& x,
                                 PromptStyle style);

// Env var holding the bearer credential for remote judging.
inline constexpr const char* kApiKeyEnvVar = "ARENA_API_KEY";

}  // namespace arena
