#include "ghzqpc/report_io.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace ghzqpc {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string number_text(double x) { return json(x).dump(); }

}  // namespace

json to_json(const ExperimentReport& report) {
  json j;
  j["name"] = report.name;
  j["parameters"] = report.parameters;
  j["trials"] = report.trials;
  j["estimate"] = report.estimate;
  j["analytic"] = report.analytic ? json(*report.analytic) : json(nullptr);
  j["std_error"] = report.std_error;
  j["pass"] = report.pass;
  return j;
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport report;
  report.name = j.at("name").get<std::string>();
  report.parameters = j.at("parameters").get<std::string>();
  report.trials = j.at("trials").get<long long>();
  report.estimate = j.at("estimate").get<double>();
  if (!j.at("analytic").is_null()) report.analytic = j.at("analytic").get<double>();
  report.std_error = j.at("std_error").get<double>();
  report.pass = j.at("pass").get<bool>();
  return report;
}

std::string csv_header() { return "name,parameters,trials,estimate,analytic,std_error,pass"; }

std::string to_csv_line(const ExperimentReport& report) {
  std::ostringstream out;
  out << csv_escape(report.name) << ',' << csv_escape(report.parameters) << ','
      << report.trials << ',' << number_text(report.estimate) << ','
      << (report.analytic ? number_text(*report.analytic) : std::string()) << ','
      << number_text(report.std_error) << ',' << (report.pass ? "true" : "false");
  return out.str();
}

json to_json(const EavesdropCheck& check) {
  json j;
  j["decoy_count"] = check.decoy_count;
  j["mismatches"] = check.mismatches;
  j["error_rate"] = check.error_rate;
  j["pass"] = check.pass;
  return j;
}

json to_json(const TpDecodeRecord& record) {
  json j;
  j["m1"] = record.m1;
  j["m2"] = record.m2;
  j["c"] = record.c;
  j["m2_prime"] = record.m2_prime;
  return j;
}

json to_json(const TranscriptEvent& event) {
  json j;
  j["step"] = event.step;
  j["actor"] = event.actor;
  j["detail"] = event.detail;
  return j;
}

json to_json(const RunOutcome& outcome, bool include_transcript) {
  json j;
  j["verdict"] = std::string(to_string(outcome.verdict));
  j["rc"] = outcome.rc;
  j["eavesdrop_error_rate"] = outcome.eavesdrop_error_rate;
  j["alice_check"] = to_json(outcome.alice_check);
  j["bob_check"] = to_json(outcome.bob_check);
  j["records_alice"] = json::array();
  for (const auto& r : outcome.records_alice) j["records_alice"].push_back(to_json(r));
  j["records_bob"] = json::array();
  for (const auto& r : outcome.records_bob) j["records_bob"].push_back(to_json(r));
  if (include_transcript) {
    j["transcript"] = json::array();
    for (const auto& e : outcome.transcript) j["transcript"].push_back(to_json(e));
  }
  return j;
}

json to_json(const ConstraintReport& report) {
  json j;
  j["lambda_01_mag"] = report.lambda_01_mag;
  j["lambda_10_mag"] = report.lambda_10_mag;
  j["cross_term_distance"] = report.cross_term_distance;
  j["satisfied"] = report.satisfied;
  return j;
}

json to_json(const TruthTableResult& result) {
  json j;
  j["all_pass"] = result.all_pass;
  j["rows"] = json::array();
  for (const auto& row : result.rows) {
    json r;
    r["index"] = row.index;
    r["k_ab"] = row.k_ab;
    r["k_ac"] = row.k_ac;
    r["k_bc"] = row.k_bc;
    r["m_a1"] = row.m_a1;
    r["m_b1"] = row.m_b1;
    r["r_a"] = row.r_a;
    r["r_b"] = row.r_b;
    r["c_a"] = row.c_a;
    r["c_b"] = row.c_b;
    r["a_complemented"] = row.a_complemented;
    r["b_complemented"] = row.b_complemented;
    r["pass"] = row.pass;
    j["rows"].push_back(r);
  }
  return j;
}

json to_json(const EfficiencyResult& result) {
  json j;
  j["n"] = result.n;
  j["numerator"] = result.numerator;
  j["denominator"] = result.denominator;
  j["value"] = result.value;
  j["bounds_ok"] = result.bounds_ok;
  return j;
}

json to_json(const CorrectnessResult& result) {
  json j;
  j["cases"] = result.cases;
  j["failures"] = result.failures;
  j["all_pass"] = result.all_pass;
  j["failure_notes"] = result.failure_notes;
  return j;
}

json to_json(const GhzAlgebraCheck& check) {
  json j;
  j["qubit_count"] = check.qubit_count;
  j["max_orthonormality_error"] = check.max_orthonormality_error;
  j["max_completeness_error"] = check.max_completeness_error;
  j["pass"] = check.pass;
  return j;
}

json unitary_to_json(const TwoQubitUnitary& u) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c)
      row.push_back(json::array({u.at(r, c).real(), u.at(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

TwoQubitUnitary unitary_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4)
    throw std::runtime_error("unitary: expected a JSON array of 4 rows");
  std::array<Complex, 16> m;
  for (int r = 0; r < 4; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || row.size() != 4)
      throw std::runtime_error("unitary: each row must hold 4 entries");
    for (int c = 0; c < 4; ++c) {
      const json& entry = row.at(static_cast<std::size_t>(c));
      if (!entry.is_array() || entry.size() != 2 || !entry.at(0).is_number() ||
          !entry.at(1).is_number())
        throw std::runtime_error("unitary: each entry must be [re, im]");
      m[static_cast<std::size_t>(r * 4 + c)] =
          Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  try {
    return TwoQubitUnitary::from_matrix(m);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("unitary: ") + e.what());
  }
}

TwoQubitUnitary load_unitary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open unitary file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  return unitary_from_json(j);
}

}  // namespace ghzqpc
