#pragma once

#include <string>
#include <utility>

#include "braidforge/braid.hpp"
#include "braidforge/grid.hpp"
#include "braidforge/recognize.hpp"

namespace braidforge {

inline constexpr int kSchemaVersion = 1;

// All readers throw ParseError on malformed documents.

std::string word_to_json(const BraidWord& w);
BraidWord word_from_json(const std::string& text);

// {"verticals": [...], "horizontals": [...], "intervals": [...]}
std::string grid_to_json(const ArcPresentation& g, const ShearingConfig& sc = {});
std::pair<ArcPresentation, ShearingConfig> grid_from_json(const std::string& text);

std::string certificate_to_json(const MoveCertificate& c);
MoveCertificate certificate_from_json(const std::string& text);

// Timing is written as 0 when with_timing is false.
std::string verdict_to_json(const Verdict& v, TargetMove kind, bool with_timing = true);

}  // namespace braidforge
