#include "ineq/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string_view>
#include <utility>
#include <vector>

namespace ineq {
namespace {

std::string format(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

// Flat key/value objects rendered with a fixed field order.
class JsonObject {
 public:
  JsonObject& number(std::string_view key, double v) {
    return raw(key, format_json_number(v));
  }
  JsonObject& boolean(std::string_view key, bool v) { return raw(key, v ? "true" : "false"); }
  JsonObject& string(std::string_view key, std::string_view v) {
    return raw(key, '"' + std::string(v) + '"');
  }
  JsonObject& raw(std::string_view key, std::string value) {
    fields_.emplace_back(std::string(key), std::move(value));
    return *this;
  }

  std::string render(int indent) const {
    const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
    std::string s = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      s += i ? ",\n" : "\n";
      s += pad + '"' + fields_[i].first + "\": " + fields_[i].second;
    }
    s += '\n' + std::string(static_cast<std::size_t>(indent), ' ') + '}';
    return s;
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string optional_number(const std::optional<double>& v) {
  return v ? format_json_number(*v) : "null";
}

}  // namespace

std::string format_json_number(double x) {
  return std::isfinite(x) ? format("%.17g", x) : "null";
}

std::string format_tsv_number(double x) {
  return std::isfinite(x) ? format("%.12g", x) : "nan";
}

void write_json(std::ostream& out, const IndexReport& r) {
  JsonObject residuals;
  residuals.number("gini", r.gini_residual)
      .number("hoover", r.hoover_residual)
      .number("robin_hood", r.robin_hood_residual)
      .number("max_cross_route", r.max_cross_route_residual)
      .number("tolerance", r.tolerance)
      .boolean("within_tolerance", r.within_tolerance());

  JsonObject obj;
  obj.number("mean", r.mean)
      .boolean("exact", r.exact)
      .number("gini", r.exact ? r.gini_mean_difference : r.gini_dorfman)
      .number("hoover", r.hoover_cdf)
      .number("gini_mean_difference", r.gini_mean_difference)
      .number("gini_dorfman", r.gini_dorfman)
      .number("gini_lorenz", r.gini_lorenz)
      .number("hoover_mean_deviation", r.hoover_mean_deviation)
      .number("hoover_cdf", r.hoover_cdf)
      .number("hoover_max", r.hoover_max)
      .number("r_share", r.r_share)
      .number("p_share", r.p_share)
      .raw("residuals", residuals.render(2));
  out << obj.render(0) << '\n';
}

void write_json(std::ostream& out, const ConvergenceReport& r) {
  std::string steps = "[";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const ConvergenceStep& s = r.steps[i];
    JsonObject o;
    o.number("index", s.index)
        .number("parameter", s.parameter)
        .number("w1_to_limit", s.w1_to_limit)
        .number("mean", s.mean)
        .number("gini", s.gini)
        .number("hoover", s.hoover)
        .number("lorenz_sup_error", s.lorenz_sup_error)
        .number("ui_tail_at_alpha", s.ui_tail_at_alpha)
        .number("weak_probe_error", s.weak_probe_error)
        .number("cdf_sup_error", s.cdf_sup_error);
    steps += (i ? ",\n    " : "\n    ") + o.render(4);
  }
  steps += r.steps.empty() ? "]" : "\n  ]";

  JsonObject limit;
  limit.number("mean", r.limit.mean)
      .raw("gini", optional_number(r.limit.gini))
      .raw("hoover", optional_number(r.limit.hoover));

  JsonObject diag;
  diag.boolean("w1_small", r.w1_small)
      .boolean("means_converge", r.means_converge)
      .boolean("weak_probes_pass", r.weak_probes_pass)
      .boolean("uniformly_integrable", r.uniformly_integrable)
      .string("verdict_from_means", to_string(r.verdict_from_means))
      .string("verdict_from_ui", to_string(r.verdict_from_ui))
      .boolean("scheffe_consistent", r.scheffe_consistent())
      .number("tolerance", r.tolerance)
      .number("alpha", r.alpha);

  JsonObject obj;
  obj.string("verdict", to_string(r.verdict))
      .string("deciding_diagnostic", r.deciding_diagnostic)
      .raw("limit", limit.render(2))
      .raw("diagnostics", diag.render(2))
      .raw("steps", steps);
  out << obj.render(0) << '\n';
}

void write_tsv(std::ostream& out, const ConvergenceReport& r) {
  out << "index\tparameter\tw1_to_limit\tmean\tgini\thoover\tlorenz_sup_error"
         "\tui_tail_at_alpha\tweak_probe_error\tcdf_sup_error\n";
  for (const ConvergenceStep& s : r.steps) {
    out << s.index;
    for (double v : {s.parameter, s.w1_to_limit, s.mean, s.gini, s.hoover, s.lorenz_sup_error,
                     s.ui_tail_at_alpha, s.weak_probe_error, s.cdf_sup_error}) {
      out << '\t' << format_tsv_number(v);
    }
    out << '\n';
  }
}

}  // namespace ineq
