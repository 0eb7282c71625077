#pragma once

#include <string>

#include <json.hpp>

#include "znsparse/campaign.hpp"
#include "znsparse/kernel.hpp"
#include "znsparse/recovery.hpp"
#include "znsparse/signal.hpp"

namespace znsparse {

using json = nlohmann::json;

// Wire formats. Signals: {"n": N, "re": [...], "im": [...]}.
// Frequency sets: {"n": N, "omega": [...]}.
// Problems: {"n": N, "omega": [...], "re": [...], "im": [...]} with the
// observed values aligned with the omega order.

json signal_to_json(const CyclicSignal& x);
CyclicSignal signal_from_json(const json& j);

json frequency_set_to_json(const FrequencySet& omega);
FrequencySet frequency_set_from_json(const json& j);

json problem_to_json(const RecoveryProblem& problem);
RecoveryProblem problem_from_json(const json& j);

json result_to_json(const RecoveryResult& result);

json kernel_to_json(const IdempotentKernel& k, bool include_values = true);
json condition_iv_to_json(const ConditionIVResult& r);
json certificate_to_json(const Certificate& cert, bool include_values = true);
json nullspace_to_json(const NullspaceReport& r);

json bound_to_json(const BoundValue& b);

json campaign_spec_to_json(const CampaignSpec& spec);
CampaignSpec campaign_spec_from_json(const json& j);
json campaign_report_to_json(const CampaignReport& report);
std::string campaign_trials_csv(const CampaignReport& report);

json small_n_report_to_json(const SmallNReport& report);
json worked_example_to_json(const WorkedExampleReport& report);

}  // namespace znsparse
