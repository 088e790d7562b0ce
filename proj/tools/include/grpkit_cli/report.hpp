#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grpkit/divdiff.hpp"
#include "grpkit/grp.hpp"
#include "grpkit/mps.hpp"

namespace grpkit::cli {

inline constexpr std::size_t kMaxPrintedTerms = 200;

struct Report {
    MapGerm germ;
    AnalysisTable table;
    std::optional<GrpVerdict> verdict;
    std::vector<MultiplePointSpace> equations;  // only with --equations
    std::optional<double> elapsed_ms;
};

std::string version();

nlohmann::json germ_json(const MapGerm& germ);
nlohmann::json to_json(const Report& report);
std::string render_text(const Report& report);

/// "f1^i = ..." and "f2^i = ..." lines of one multiple point space.
std::string render_equations(const MultiplePointSpace& d);

}  // namespace grpkit::cli
