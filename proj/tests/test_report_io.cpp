#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "ghzqpc/report_io.hpp"

using namespace ghzqpc;
using nlohmann::json;

TEST_CASE("experiment report round-trips through JSON exactly") {
  ExperimentReport report;
  report.name = "detection/intercept_resend";
  report.parameters = "l=4 seed=9";
  report.trials = 10000;
  report.estimate = 0.6842;
  report.analytic = 0.68359375;
  report.std_error = 0.004645;
  report.pass = true;

  const json j = to_json(report);
  const ExperimentReport back = report_from_json(j);
  CHECK(back.name == report.name);
  CHECK(back.parameters == report.parameters);
  CHECK(back.trials == report.trials);
  CHECK(back.estimate == report.estimate);  // bit-exact via shortest round-trip repr
  CHECK(back.analytic == report.analytic);
  CHECK(back.std_error == report.std_error);
  CHECK(back.pass == report.pass);

  // the dumped text also round-trips
  const ExperimentReport reparsed = report_from_json(json::parse(j.dump()));
  CHECK(reparsed.estimate == report.estimate);
  CHECK(reparsed.std_error == report.std_error);
}

TEST_CASE("missing analytic serializes as null and comes back empty") {
  ExperimentReport report;
  report.name = "x";
  report.trials = 10;
  const json j = to_json(report);
  CHECK(j.at("analytic").is_null());
  CHECK_FALSE(report_from_json(j).analytic.has_value());
}

TEST_CASE("csv line matches the documented column order") {
  ExperimentReport report;
  report.name = "guess/tp";
  report.parameters = "N=4 n=2";
  report.trials = 1000;
  report.estimate = 0.25;
  report.analytic = 0.25;
  report.std_error = 0.125;
  report.pass = true;
  CHECK(csv_header() == "name,parameters,trials,estimate,analytic,std_error,pass");
  CHECK(to_csv_line(report) == "guess/tp,N=4 n=2,1000,0.25,0.25,0.125,true");

  report.analytic.reset();
  report.pass = false;
  CHECK(to_csv_line(report) == "guess/tp,N=4 n=2,1000,0.25,,0.125,false");

  // fields containing commas or quotes get quoted
  report.parameters = "a,b \"c\"";
  CHECK(to_csv_line(report) == "guess/tp,\"a,b \"\"c\"\"\",1000,0.25,,0.125,false");
}

TEST_CASE("unitary serialization round-trips and validates") {
  const TwoQubitUnitary cx = TwoQubitUnitary::cnot();
  const json j = unitary_to_json(cx);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 4);
  const TwoQubitUnitary back = unitary_from_json(j);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(back.at(r, c) == cx.at(r, c));

  CHECK_THROWS_AS((void)unitary_from_json(json::parse("[1,2,3]")), std::runtime_error);
  CHECK_THROWS_AS((void)unitary_from_json(json::parse("[[],[],[],[]]")), std::runtime_error);
  // right shape, not unitary
  const char* text =
      "[[[1,0],[0,0],[0,0],[0,0]],"
      " [[1,0],[0,0],[0,0],[0,0]],"
      " [[0,0],[0,0],[1,0],[0,0]],"
      " [[0,0],[0,0],[0,0],[1,0]]]";
  CHECK_THROWS_AS((void)unitary_from_json(json::parse(text)), std::runtime_error);
}

TEST_CASE("unitary files load from disk") {
  const std::string path = "test_unitary_tmp.json";
  {
    std::ofstream out(path);
    out << unitary_to_json(TwoQubitUnitary::identity()).dump();
  }
  const TwoQubitUnitary u = load_unitary_file(path);
  CHECK(u.at(0, 0) == Complex(1, 0));
  CHECK(u.at(3, 3) == Complex(1, 0));
  std::remove(path.c_str());
  CHECK_THROWS_AS((void)load_unitary_file("does_not_exist.json"), std::runtime_error);
}

TEST_CASE("run outcome serialization carries the protocol fields") {
  ProtocolConfig pc;
  pc.group_size = 2;
  pc.decoy_count = 2;
  Rng rng(99);
  const RunOutcome outcome = run_protocol(pc, Secret::from_bits("1011"),
                                          Secret::from_bits("1011"), AttackModel{}, rng);
  const json j = to_json(outcome, false);
  CHECK(j.at("verdict") == "equal");
  CHECK(j.at("rc").size() == 2);
  CHECK(j.at("eavesdrop_error_rate") == 0.0);
  CHECK(j.at("alice_check").at("pass") == true);
  CHECK(j.at("records_alice").size() == 2);
  CHECK(j.find("transcript") == j.end());

  const json with_log = to_json(outcome, true);
  CHECK(with_log.at("transcript").is_array());
  CHECK(!with_log.at("transcript").empty());
}

TEST_CASE("json emission is deterministic: keys sorted, repeated dumps identical") {
  ExperimentReport report;
  report.name = "z";
  report.parameters = "a";
  report.trials = 3;
  report.estimate = 1.0 / 3.0;
  report.std_error = 0.27216552697590873;
  const std::string once = to_json(report).dump(2);
  const std::string twice = to_json(report).dump(2);
  CHECK(once == twice);
  CHECK(once.find("\"analytic\"") < once.find("\"estimate\""));
  CHECK(once.find("\"estimate\"") < once.find("\"name\""));
}
