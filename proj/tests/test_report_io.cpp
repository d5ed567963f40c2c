#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "battery.hpp"
#include "ineq/experiment.hpp"
#include "ineq/report_io.hpp"

using namespace ineq;
using namespace ineq::testing;

TEST(Numbers, Formats) {
  EXPECT_EQ(format_json_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_json_number(0.25), "0.25");
  EXPECT_EQ(format_json_number(NAN), "null");
  EXPECT_EQ(format_tsv_number(1.0 / 3), "0.333333333333");
  EXPECT_EQ(format_tsv_number(INFINITY), "nan");
}

TEST(IndexReportJson, FlatWithResiduals) {
  std::ostringstream os;
  write_json(os, index_report(figure_one()));
  const auto j = nlohmann::json::parse(os.str());
  for (const char* key : {"gini_mean_difference", "gini_dorfman", "gini_lorenz",
                          "hoover_mean_deviation", "hoover_cdf", "hoover_max", "r_share",
                          "p_share", "mean"}) {
    EXPECT_TRUE(j.at(key).is_number()) << key;
  }
  EXPECT_TRUE(j.at("residuals").at("within_tolerance").get<bool>());
  EXPECT_NEAR(j.at("gini_dorfman").get<double>(), 5.0 / 24, 1e-10);
}

TEST(IndexReportJson, RoundTripsDoubles) {
  std::ostringstream os;
  const auto r = index_report(Distribution::gamma(2.0, 1.0));
  write_json(os, r);
  const auto j = nlohmann::json::parse(os.str());
  EXPECT_EQ(j.at("gini_dorfman").get<double>(), r.gini_dorfman);
  EXPECT_EQ(j.at("mean").get<double>(), r.mean);
}

TEST(ConvergenceReportIo, JsonAndTsv) {
  const auto e = counterexample2(10);
  DiagnosticsOptions options;
  options.parameters = e.parameters;
  const auto r = sequence_diagnostics(e.sequence, e.limit, options);
  std::ostringstream js, ts;
  write_json(js, r);
  write_tsv(ts, r);
  const auto j = nlohmann::json::parse(js.str());
  EXPECT_EQ(j.at("verdict"), "weak_only");
  EXPECT_EQ(j.at("steps").size(), 10u);
  EXPECT_EQ(j.at("steps")[9].at("parameter").get<double>(), 10.0);
  EXPECT_TRUE(j.at("diagnostics").at("scheffe_consistent").get<bool>());

  std::istringstream lines(ts.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 11);
  EXPECT_EQ(ts.str().substr(0, 15), "index\tparameter");
}

TEST(ConvergenceReportIo, NullLimitIndicesForDiracAtZero) {
  const std::vector<Distribution> seq{Distribution::atom(1), Distribution::atom(0.5)};
  const auto r = sequence_diagnostics(seq, Distribution::atom(0));
  std::ostringstream js;
  write_json(js, r);
  const auto j = nlohmann::json::parse(js.str());
  EXPECT_TRUE(j.at("limit").at("gini").is_null());
}
