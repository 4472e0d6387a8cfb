#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pdl {

/// Outcome of one checked claim. Witnesses are (label, value) pairs in a
/// fixed order so that reports are reproducible.
struct Certificate {
    std::string claim;
    std::string anchor;
    bool verdict = false;
    std::vector<std::pair<std::string, std::string>> witnesses;

    void add(std::string label, std::string value) { witnesses.emplace_back(std::move(label), std::move(value)); }
};

} // namespace pdl
