#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ownerscope/analysis/reports.hpp"
#include "ownerscope/analysis/sweeps.hpp"

namespace ownerscope::analysis {

// Machine-readable report forms. Key order and float formatting are
// deterministic, so identical inputs and seed reproduce identical bytes.
nlohmann::json to_json(const CorrelationReport& report);
nlohmann::json to_json(const std::vector<ModelFit>& fits);
nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const LocalityResult& result);

// Aligned-text tables for humans.
void render_text(std::ostream& out, const CorrelationReport& report);
void render_text(std::ostream& out, const std::vector<ModelFit>& fits);
void render_text(std::ostream& out, const SweepReport& report);
void render_text(std::ostream& out, const LocalityResult& result);

}  // namespace ownerscope::analysis
