#include "arena/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace arena {

namespace {

using json = nlohmann::json;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void parse_fail(const std::string& path, size_t line,
                             const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

std::string upper_first(const std::string& s) {
    std::string out = s;
    if (!out.empty()) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

}  // namespace

Dataset load_cola_tsv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    Dataset out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, '\t')) cols.push_back(col);
        // A trailing empty column is dropped by getline; pad annotation col.
        if (cols.size() == 3) cols.push_back("");
        if (cols.size() != 4) {
            parse_fail(path, lineno,
                       "expected 4 tab-separated columns, got " +
                           std::to_string(cols.size()));
        }
        // Column layout: source, label, original annotation, sentence.
        if (cols[1] != "0" && cols[1] != "1") {
            parse_fail(path, lineno, "label must be 0 or 1, got '" + cols[1] +
                                         "'");
        }
        Instance inst;
        inst.id = std::to_string(out.size());
        inst.gold = cols[1] == "1" ? 1 : 0;
        inst.fields["text"] = cols[3];
        out.push_back(std::move(inst));
    }
    return out;
}

Dataset load_jsonl(const std::string& path, const JsonlOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);

    Dataset out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        json obj = json::parse(line, nullptr, false);
        if (!obj.is_object()) {
            parse_fail(path, lineno, "malformed JSON object");
        }

        Instance inst;
        if (obj.contains("id")) {
            inst.id = obj["id"].is_string()
                          ? obj["id"].get<std::string>()
                          : obj["id"].dump();
        } else {
            inst.id = std::to_string(out.size());
        }

        std::string combined;
        for (const auto& field : opts.text_fields) {
            if (!obj.contains(field) || !obj[field].is_string()) {
                parse_fail(path, lineno, "missing text field '" + field + "'");
            }
            const std::string value = obj[field].get<std::string>();
            inst.fields[field] = value;
            if (!combined.empty()) combined += " ";
            combined += upper_first(field) + ": " + value;
        }
        if (opts.render_combined_text && opts.text_fields.size() > 1) {
            inst.fields["text"] = combined;
        }

        if (opts.label_field) {
            if (!obj.contains(*opts.label_field)) {
                parse_fail(path, lineno,
                           "missing label field '" + *opts.label_field + "'");
            }
            const json& lv = obj[*opts.label_field];
            std::string raw = lv.is_string() ? lv.get<std::string>() : lv.dump();
            inst.gold = lower(raw) == lower(opts.positive_value) ? 1 : 0;
        }
        out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace arena
