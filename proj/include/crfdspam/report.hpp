#ifndef CRFDSPAM_REPORT_HPP_
#define CRFDSPAM_REPORT_HPP_

#include <span>
#include <string>

#include <json.hpp>

#include "crfdspam/evaluate.hpp"
#include "crfdspam/importance.hpp"

// Report payload rendering. All output is deterministic for identical
// inputs: key order is fixed, doubles are printed in shortest round-trip
// form, and no wall-clock values appear in a payload.

namespace crfdspam {

nlohmann::ordered_json metrics_to_json(const MetricsRecord& r);
nlohmann::ordered_json report_to_json(const EvaluationReport& report);
nlohmann::ordered_json improvement_to_json(std::span<const ImprovementRow> rows);
nlohmann::ordered_json importance_to_json(std::span<const RankedFeature> ranking);

// One table row per algorithm with the TraAcc..AUC column layout.
std::string report_to_markdown(const EvaluationReport& report);
std::string improvement_to_markdown(std::span<const ImprovementRow> rows);
std::string importance_to_markdown(std::span<const RankedFeature> ranking);

// Plot-ready feature,importance CSV.
std::string importance_to_csv(std::span<const RankedFeature> ranking);

}  // namespace crfdspam

#endif  // CRFDSPAM_REPORT_HPP_
