#include "arena/judging.hpp"

#include <cmath>
#include <cstdlib>
#include <regex>
#include <stdexcept>

#include "arena/rating.hpp"
#include "arena/rng.hpp"
#include "httplib.h"
#include "json.hpp"

namespace arena {

namespace {

using json = nlohmann::json;
using Target = ExtractionRule::Target;

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

bool is_placeholder_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Substitutes {name} tokens via the resolver; non-identifier braces (such
// as the literal JSON in the output-format instructions) pass through.
// resolver returns nullopt for unknown names, which is a template error.
template <typename Resolver>
std::string substitute(const std::string& body, Resolver resolve) {
    std::string out;
    out.reserve(body.size());
    size_t i = 0;
    while (i < body.size()) {
        if (body[i] == '{') {
            size_t j = i + 1;
            while (j < body.size() && is_placeholder_char(body[j])) ++j;
            if (j > i + 1 && j < body.size() && body[j] == '}') {
                std::string name = body.substr(i + 1, j - i - 1);
                auto value = resolve(name);
                if (!value) {
                    throw std::runtime_error("unresolved placeholder: {" +
                                             name + "}");
                }
                out += *value;
                i = j + 1;
                continue;
            }
        }
        out += body[i++];
    }
    return out;
}

std::optional<std::string> field_of(const Instance& x,
                                    const std::string& name) {
    auto it = x.fields.find(name);
    if (it == x.fields.end()) return std::nullopt;
    return it->second;
}

std::string steering_sentence(const PromptTemplate& tpl, PromptStyle style) {
    if (style == PromptStyle::Plain) return "";
    const std::string& worse = style == PromptStyle::Precision
                                   ? tpl.positive_class
                                   : tpl.negative_class;
    const std::string& other = style == PromptStyle::Precision
                                   ? tpl.negative_class
                                   : tpl.positive_class;
    return "The consequences for wrongly guessing " + worse +
           " are worse than the consequences for wrongly guessing " + other +
           ".";
}

// First rule whose pattern matches, restricted to the wanted target kinds.
template <typename T>
std::optional<T> apply_rules(const std::string& text,
                             const std::vector<ExtractionRule>& rules,
                             Target pos_target, T pos_value, Target neg_target,
                             T neg_value) {
    for (const auto& rule : rules) {
        if (rule.target != pos_target && rule.target != neg_target) continue;
        try {
            std::regex re(rule.pattern, std::regex::icase);
            if (std::regex_search(text, re)) {
                return rule.target == pos_target ? pos_value : neg_value;
            }
        } catch (const std::regex_error&) {
            // A malformed rule never aborts extraction.
        }
    }
    return std::nullopt;
}

// Pulls the "choice" string out of a structured response, tolerating
// surrounding prose around the JSON object.
std::optional<std::string> structured_choice(const std::string& response) {
    auto try_parse = [](const std::string& text) -> std::optional<std::string> {
        json j = json::parse(text, nullptr, false);
        if (j.is_object() && j.contains("choice") && j["choice"].is_string()) {
            return j["choice"].get<std::string>();
        }
        return std::nullopt;
    };
    if (auto c = try_parse(response)) return c;
    size_t first = response.find('{');
    size_t last = response.rfind('}');
    if (first != std::string::npos && last != std::string::npos &&
        last > first) {
        return try_parse(response.substr(first, last - first + 1));
    }
    return std::nullopt;
}

double hidden_of(const JudgeSpec& judge, const std::string& id) {
    auto it = judge.hidden.find(id);
    if (it == judge.hidden.end()) {
        throw std::runtime_error("judge has no hidden quality for id: " + id);
    }
    if (!std::isfinite(it->second)) {
        throw std::runtime_error("non-finite hidden quality for id: " + id);
    }
    return it->second;
}

// One chat-completions call; nullopt on transport or protocol failure.
std::optional<std::string> chat_completion(const RemoteParams& remote,
                                           const std::string& prompt) {
    std::smatch m;
    static const std::regex url_re(R"(^(https?://[^/]+)(/.*)?$)");
    if (!std::regex_match(remote.endpoint, m, url_re)) return std::nullopt;
    const std::string base = m[1];
    const std::string path = m[2].length() ? m[2].str() : "/";

    httplib::Client client(base);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);

    httplib::Headers headers;
    if (const char* key = std::getenv(kApiKeyEnvVar)) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    json req = {
        {"model", remote.model},
        {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
        {"temperature", remote.temperature},
        {"max_tokens", remote.max_tokens},
    };
    auto res = client.Post(path, headers, req.dump(), "application/json");
    if (!res || res->status != 200) return std::nullopt;
    json body = json::parse(res->body, nullptr, false);
    if (!body.is_object() || !body.contains("choices") ||
        !body["choices"].is_array() || body["choices"].empty()) {
        return std::nullopt;
    }
    const json& msg = body["choices"][0].value("message", json::object());
    if (!msg.contains("content") || !msg["content"].is_string()) {
        return std::nullopt;
    }
    return msg["content"].get<std::string>();
}

}  // namespace

std::string render_pairwise_prompt(const PromptTemplate& tpl,
                                   const Instance& a, const Instance& b) {
    return substitute(tpl.body, [&](const std::string& name)
                                    -> std::optional<std::string> {
        if (name == "steering") return "";
        if (!name.empty() && (name.back() == '1' || name.back() == '2')) {
            const Instance& src = name.back() == '1' ? a : b;
            return field_of(src, name.substr(0, name.size() - 1));
        }
        return std::nullopt;
    });
}

std::string render_single_prompt(const PromptTemplate& tpl, const Instance& x,
                                 PromptStyle style) {
    const std::string steer = steering_sentence(tpl, style);
    bool has_marker = tpl.body.find("{steering}") != std::string::npos;
    std::string rendered = substitute(
        tpl.body, [&](const std::string& name) -> std::optional<std::string> {
            if (name == "steering") return steer.empty() ? "" : " " + steer;
            return field_of(x, name);
        });
    if (!has_marker && !steer.empty()) rendered += " " + steer;
    return rendered;
}

std::optional<Choice> extract_choice(const std::string& response,
                                     const PromptTemplate& tpl) {
    if (auto choice_text = structured_choice(response)) {
        auto via_rules =
            apply_rules(*choice_text, tpl.rules, Target::ChoiceA, Choice::A,
                        Target::ChoiceB, Choice::B);
        if (via_rules) return via_rules;
    }
    return apply_rules(response, tpl.rules, Target::ChoiceA, Choice::A,
                       Target::ChoiceB, Choice::B);
}

std::optional<Label> extract_label(const std::string& response,
                                   const PromptTemplate& tpl) {
    if (auto choice_text = structured_choice(response)) {
        auto via_rules =
            apply_rules(*choice_text, tpl.rules, Target::LabelPos, Label::Pos,
                        Target::LabelNeg, Label::Neg);
        if (via_rules) return via_rules;
    }
    return apply_rules(response, tpl.rules, Target::LabelPos, Label::Pos,
                       Target::LabelNeg, Label::Neg);
}

MatchRecord judge_pair(const JudgeSpec& judge, const PromptTemplate& tpl,
                       const Instance& a, const Instance& b,
                       int round_index) {
    MatchRecord rec;
    rec.round_index = round_index;
    rec.id_a = a.id;
    rec.id_b = b.id;

    // Per-match generator keyed on (seed, round, pair): outcomes do not
    // depend on judging order, so matches may run concurrently.
    Rng rng(derive_seed(judge.seed, static_cast<uint64_t>(round_index),
                        fnv1a(a.id), fnv1a(b.id)));

    switch (judge.kind) {
        case JudgeKind::Oracle: {
            rec.attempts = 1;
            rec.outcome = hidden_of(judge, a.id) > hidden_of(judge, b.id)
                              ? Outcome::AWins
                              : Outcome::BWins;
            return rec;
        }
        case JudgeKind::NoisyBt: {
            rec.attempts = 1;
            double p = expected_score(hidden_of(judge, a.id),
                                      hidden_of(judge, b.id));
            rec.outcome =
                rng.next_double() < p ? Outcome::AWins : Outcome::BWins;
            return rec;
        }
        case JudgeKind::LabelFlip: {
            rec.attempts = 1;
            int ga = a.gold.value_or(0);
            int gb = b.gold.value_or(0);
            bool a_wins;
            if (ga != gb) {
                a_wins = ga > gb;
            } else {
                a_wins = rng.next_double() < 0.5;
            }
            if (rng.next_double() < judge.flip_prob) a_wins = !a_wins;
            rec.outcome = a_wins ? Outcome::AWins : Outcome::BWins;
            return rec;
        }
        case JudgeKind::Remote: {
            const std::string prompt = render_pairwise_prompt(tpl, a, b);
            for (int attempt = 1; attempt <= judge.max_attempts; ++attempt) {
                rec.attempts = attempt;
                auto response = chat_completion(judge.remote, prompt);
                if (!response) continue;
                rec.raw_response = *response;
                if (auto choice = extract_choice(*response, tpl)) {
                    rec.outcome = *choice == Choice::A ? Outcome::AWins
                                                       : Outcome::BWins;
                    return rec;
                }
            }
            rec.outcome = Outcome::Skipped;
            return rec;
        }
    }
    rec.outcome = Outcome::Skipped;
    return rec;
}

SinglePrediction classify_single(const JudgeSpec& judge,
                                 const PromptTemplate& tpl, const Instance& x,
                                 PromptStyle style) {
    SinglePrediction out;
    Rng rng(derive_seed(judge.seed, 0x636C7366ULL, fnv1a(x.id)));

    switch (judge.kind) {
        case JudgeKind::Oracle:
            out.attempts = 1;
            out.label =
                hidden_of(judge, x.id) > 0.0 ? Label::Pos : Label::Neg;
            return out;
        case JudgeKind::NoisyBt: {
            out.attempts = 1;
            double p = expected_score(hidden_of(judge, x.id), 0.0);
            out.label = rng.next_double() < p ? Label::Pos : Label::Neg;
            return out;
        }
        case JudgeKind::LabelFlip: {
            out.attempts = 1;
            if (!x.gold) return out;
            bool pos = *x.gold == 1;
            if (rng.next_double() < judge.flip_prob) pos = !pos;
            out.label = pos ? Label::Pos : Label::Neg;
            return out;
        }
        case JudgeKind::Remote: {
            const std::string prompt = render_single_prompt(tpl, x, style);
            for (int attempt = 1; attempt <= judge.max_attempts; ++attempt) {
                out.attempts = attempt;
                auto response = chat_completion(judge.remote, prompt);
                if (!response) continue;
                out.raw_response = *response;
                if (auto label = extract_label(*response, tpl)) {
                    out.label = label;
                    return out;
                }
            }
            return out;
        }
    }
    return out;
}

}  // namespace arena
