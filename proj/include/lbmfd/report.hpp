#pragma once

#include <string>

#include "json.hpp"

namespace lbmfd {

// Command output. The structured JSON document is the source of truth; the
// text rendering is generated from it, so the two always carry the same data.
class Report {
public:
    nlohmann::json& root() { return root_; }
    const nlohmann::json& root() const { return root_; }

    std::string text() const;
    std::string json_str() const { return root_.dump(2); }

private:
    nlohmann::json root_ = nlohmann::json::object();
};

}  // namespace lbmfd
