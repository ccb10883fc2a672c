#pragma once

#include "ksq/contextuality.hpp"
#include "ksq/dilation.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace ksq {

enum class ReportFormat { text, machine };

ReportFormat report_format_from_string(const std::string& s);  // "text" | "machine"

nlohmann::json scenario_summary_json(const Scenario& s);
nlohmann::json completeness_json(const CompletenessReport& report);
nlohmann::json psd_json(const Scenario& s);
nlohmann::json parity_json(const Scenario& s, const std::optional<ParityCertificate>& cert);
nlohmann::json search_json(const Scenario& s, const Verdict& verdict);
nlohmann::json census_json(const Scenario& s, const Census& census);
nlohmann::json histogram_json(const OutcomeHistogram& histogram);
nlohmann::json gof_json(const GoodnessOfFit& fit);

nlohmann::json make_report(const std::string& command);

// Render the machine report as human-readable text; the two formats carry
// the same facts.
std::string render_text(const nlohmann::json& report);

}  // namespace ksq
