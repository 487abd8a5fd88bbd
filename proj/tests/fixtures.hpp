#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

inline const nlohmann::json& derived() {
    static const nlohmann::json j = [] {
        std::ifstream in(std::string(PDCLUST_FIXTURE_DIR) + "/derived.json");
        return nlohmann::json::parse(in);
    }();
    return j;
}
