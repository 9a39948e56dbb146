#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arena/instance.hpp"

namespace arena {

// CoLA-style TSV: source \t label(0/1) \t original annotation \t sentence.
// Ids are zero-based row indices. Throws std::runtime_error with the line
// number on malformed rows.
Dataset load_cola_tsv(const std::string& path);

struct JsonlOptions {
    std::vector<std::string> text_fields{"text"};
    std::optional<std::string> label_field;
    std::string positive_value = "1";  // case-insensitive match => gold = 1
    // When multiple text fields are given they are rendered into a single
    // "text" field as "Field: value" lines (CliniFact-style claim/abstract).
    bool render_combined_text = true;
};

// Generic JSON-lines loader: one object per line, fields copied by name.
// Ids come from an "id" field when present, else the row index.
Dataset load_jsonl(const std::string& path, const JsonlOptions& opts);

}  // namespace arena
