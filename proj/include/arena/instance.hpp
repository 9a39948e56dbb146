#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arena {

// One dataset item. `fields` feeds prompt templating; `gold` is the binary
// label (1 = positive class) when the dataset is labeled.
struct Instance {
    std::string id;
    std::map<std::string, std::string> fields;
    std::optional<int> gold;
};

using Dataset = std::vector<Instance>;

}  // namespace arena
