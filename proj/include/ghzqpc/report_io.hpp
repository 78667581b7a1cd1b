#pragma once

#include <string>

#include <json.hpp>

#include "ghzqpc/adversary.hpp"
#include "ghzqpc/analysis.hpp"
#include "ghzqpc/channel.hpp"
#include "ghzqpc/protocol.hpp"

namespace ghzqpc {

// All emitters use alphabetically ordered keys and shortest round-trip
// number formatting, so equal values serialize to identical bytes.
nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& j);

std::string csv_header();
std::string to_csv_line(const ExperimentReport& report);

nlohmann::json to_json(const EavesdropCheck& check);
nlohmann::json to_json(const TpDecodeRecord& record);
nlohmann::json to_json(const TranscriptEvent& event);
nlohmann::json to_json(const RunOutcome& outcome, bool include_transcript);
nlohmann::json to_json(const ConstraintReport& report);
nlohmann::json to_json(const TruthTableResult& result);
nlohmann::json to_json(const EfficiencyResult& result);
nlohmann::json to_json(const CorrectnessResult& result);
nlohmann::json to_json(const GhzAlgebraCheck& check);

// 4 rows x 4 entries, each entry [re, im].
nlohmann::json unitary_to_json(const TwoQubitUnitary& u);
TwoQubitUnitary unitary_from_json(const nlohmann::json& j);
TwoQubitUnitary load_unitary_file(const std::string& path);

}  // namespace ghzqpc
