#include "ineq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ineq/errors.hpp"
#include "ineq/experiment.hpp"
#include "ineq/indices.hpp"
#include "ineq/lorenz.hpp"
#include "ineq/report_io.hpp"
#include "ineq/spec_parser.hpp"
#include "ineq/wasserstein.hpp"

namespace ineq {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool json = false;
  bool tsv = false;
  std::string out_path;
};

std::string tsv(double x) { return format_tsv_number(x); }

// Writes to --out when given, otherwise to the console stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& console) : console_(console) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : console_; }

 private:
  std::ofstream file_;
  std::ostream& console_;
};

void cmd_index(const std::string& spec, const GlobalFlags& g, std::ostream& out) {
  const Distribution d = parse_distribution_spec(spec);
  IndexReport r = index_report(d);
  if (g.tol) r.tolerance = *g.tol;
  Sink sink(g.out_path, out);
  std::ostream& os = sink.stream();
  if (g.tsv) {
    os << "key\tvalue\n";
    const std::pair<const char*, double> rows[] = {
        {"mean", r.mean},
        {"gini_mean_difference", r.gini_mean_difference},
        {"gini_dorfman", r.gini_dorfman},
        {"gini_lorenz", r.gini_lorenz},
        {"hoover_mean_deviation", r.hoover_mean_deviation},
        {"hoover_cdf", r.hoover_cdf},
        {"hoover_max", r.hoover_max},
        {"r_share", r.r_share},
        {"p_share", r.p_share},
        {"gini_residual", r.gini_residual},
        {"hoover_residual", r.hoover_residual},
        {"robin_hood_residual", r.robin_hood_residual},
        {"max_cross_route_residual", r.max_cross_route_residual},
    };
    for (const auto& [key, value] : rows) os << key << '\t' << tsv(value) << '\n';
  } else {
    write_json(os, r);
  }
}

void cmd_lorenz(const std::string& spec, int res, bool with_kendall, const GlobalFlags& g,
                std::ostream& out) {
  const Distribution d = parse_distribution_spec(spec);
  const LorenzCurve curve(d);
  Sink sink(g.out_path, out);
  std::ostream& os = sink.stream();

  std::vector<KendallPoint> kendall;
  if (with_kendall) {
    std::vector<double> t(d.breakpoints().begin(), d.breakpoints().end());
    const double top = d.truncation_point();
    for (int i = 0; i <= res; ++i) t.push_back(top * i / res);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    kendall = kendall_points(d, t);
  }

  if (g.json) {
    os << "{\n  \"mean\": " << format_json_number(d.mean()) << ",\n  \"curve\": [";
    for (int i = 0; i <= res; ++i) {
      const double p = static_cast<double>(i) / res;
      os << (i ? ",\n" : "\n") << "    {\"p\": " << format_json_number(p)
         << ", \"L\": " << format_json_number(curve(p))
         << ", \"Lambda\": " << format_json_number(pseudo_lorenz(d, p)) << '}';
    }
    os << "\n  ]";
    if (with_kendall) {
      os << ",\n  \"kendall\": [";
      for (std::size_t i = 0; i < kendall.size(); ++i) {
        os << (i ? ",\n" : "\n") << "    {\"x\": " << format_json_number(kendall[i].x)
           << ", \"y\": " << format_json_number(kendall[i].y) << '}';
      }
      os << "\n  ]";
    }
    os << "\n}\n";
    return;
  }

  os << "p\tL\tLambda\n";
  for (int i = 0; i <= res; ++i) {
    const double p = static_cast<double>(i) / res;
    os << tsv(p) << '\t' << tsv(curve(p)) << '\t' << tsv(pseudo_lorenz(d, p)) << '\n';
  }
  if (with_kendall) {
    os << "\nx\ty\n";
    for (const KendallPoint& k : kendall) os << tsv(k.x) << '\t' << tsv(k.y) << '\n';
  }
}

void cmd_w1(const std::string& a, const std::string& b, bool verbose, const GlobalFlags& g,
            std::ostream& out) {
  const W1Routes r = w1_routes(parse_distribution_spec(a), parse_distribution_spec(b));
  Sink sink(g.out_path, out);
  std::ostream& os = sink.stream();
  if (g.json) {
    os << "{\"w1\": " << format_json_number(r.value());
    if (verbose) {
      os << ", \"quantile_route\": " << format_json_number(r.quantile_route)
         << ", \"cdf_route\": " << format_json_number(r.cdf_route)
         << ", \"exact\": " << (r.exact ? "true" : "false");
    }
    os << "}\n";
    return;
  }
  os << tsv(r.value()) << '\n';
  if (verbose) {
    os << "quantile_route\t" << tsv(r.quantile_route) << '\n'
       << "cdf_route\t" << tsv(r.cdf_route) << '\n'
       << "exact\t" << (r.exact ? "true" : "false") << '\n';
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open experiment file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void cmd_converge(const std::string& what, int steps, const GlobalFlags& g, std::ostream& out) {
  ConvergenceReport report;
  if (what == "counterexample1" || what == "counterexample2") {
    const Experiment e = what == "counterexample1" ? counterexample1(steps) : counterexample2(steps);
    DiagnosticsOptions options;
    if (g.tol) options.tolerance = *g.tol;
    options.parameters = e.parameters;
    report = sequence_diagnostics(e.sequence, e.limit, options);
  } else {
    ExperimentSpec spec = ExperimentSpec::from_json(read_text_file(what));
    if (g.seed) spec.seed = *g.seed;
    if (g.tol) spec.tolerance = *g.tol;
    report = run_experiment(spec);
  }

  if (!g.out_path.empty()) {
    for (const char* ext : {".json", ".tsv"}) {
      const std::string path = g.out_path + ext;
      std::ofstream f(path);
      if (!f) throw ValidationError("cannot write '" + path + "'");
      if (std::string(ext) == ".json") {
        write_json(f, report);
      } else {
        write_tsv(f, report);
      }
    }
    out << "verdict: " << to_string(report.verdict) << '\n';
    return;
  }
  if (g.tsv) {
    write_tsv(out, report);
    out << "# verdict: " << to_string(report.verdict) << '\n';
  } else {
    write_json(out, report);
  }
}

std::string spec_number(double x) { return tsv(x); }

void cmd_extremal(double h, std::optional<double> alpha, std::optional<double> mean,
                  const GlobalFlags& g, std::ostream& out) {
  if (!(h > 0.0 && h < 1.0)) throw ValidationError("h must lie in (0, 1)");
  if (alpha.has_value() != mean.has_value()) {
    throw ValidationError("--alpha and --mean must be given together");
  }
  const GiniRange range = gini_range_given_hoover(h);
  Sink sink(g.out_path, out);
  std::ostream& os = sink.stream();
  os << '[' << spec_number(range.low) << ", " << spec_number(range.high)
     << (range.high_exclusive ? ")" : "]") << '\n';
  if (!alpha) return;

  const Distribution d = extremal_bimodal(h, *mean, *alpha);
  std::string text = "mix(";
  const auto x = d.atom_locations();
  const auto w = d.atom_weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) text += ',';
    text += spec_number(w[i]) + "*atom(" + spec_number(x[i]) + ')';
  }
  text += ')';
  os << text << '\n';
  os << "G=" << spec_number(gini(d)) << " H=" << spec_number(hoover(d)) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inequality indices, Lorenz curves and Wasserstein convergence diagnostics"};
  app.name("ineq");
  app.require_subcommand(1);

  GlobalFlags g;
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed for stochastic experiments");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance for verdicts and route residuals")
                      ->check(CLI::PositiveNumber);
  auto* json_flag = app.add_flag("--json", g.json, "Emit JSON");
  auto* tsv_flag = app.add_flag("--tsv", g.tsv, "Emit TSV");
  json_flag->excludes(tsv_flag);
  app.add_option("--out", g.out_path,
                 "Output path (for converge: a prefix receiving .json and .tsv)");

  const std::string spec_help =
      "Distribution: file:<path> or atom(x) | uniform(a,b) | lognormal(m,s) | "
      "gamma(k,theta) | exp(rate) | mix(w1*e1,...,wk*ek)";

  std::string spec_a, spec_b;
  auto* index = app.add_subcommand("index", "All Gini and Hoover routes with residuals (JSON)");
  index->add_option("spec", spec_a, spec_help)->required();

  int res = 100;
  bool kendall = false;
  auto* lorenz_cmd = app.add_subcommand("lorenz", "Lorenz and pseudo-Lorenz curve table");
  lorenz_cmd->add_option("spec", spec_a, spec_help)->required();
  lorenz_cmd->add_option("--res", res, "Grid resolution (rows = res + 1)")
      ->check(CLI::Range(2, 1 << 24));
  lorenz_cmd->add_flag("--kendall", kendall, "Append the Kendall parametric points");

  bool verbose = false;
  auto* w1_cmd = app.add_subcommand("w1", "Wasserstein-1 distance between two distributions");
  w1_cmd->add_option("a", spec_a, spec_help)->required();
  w1_cmd->add_option("b", spec_b, spec_help)->required();
  w1_cmd->add_flag("--verbose", verbose, "Print both route values");

  std::string experiment;
  int steps = 50;
  auto* converge = app.add_subcommand(
      "converge", "Run a convergence experiment (JSON file, counterexample1 or counterexample2)");
  converge->add_option("experiment", experiment, "Experiment JSON path or built-in name")
      ->required();
  converge->add_option("--steps", steps, "Steps of a built-in scenario")
      ->check(CLI::Range(1, 1 << 20));

  double h = 0.0;
  double alpha = 0.0, mean = 0.0;
  auto* extremal = app.add_subcommand("extremal", "Gini range at fixed Hoover and its extremals");
  extremal->add_option("hoover", h, "Hoover value h in (0, 1)")->required();
  auto* alpha_opt = extremal->add_option("--alpha", alpha, "Mass of the lower atom");
  auto* mean_opt = extremal->add_option("--mean", mean, "Mean of the extremal distribution");

  for (CLI::App* sub : {index, lorenz_cmd, w1_cmd, converge, extremal}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (*seed_opt) g.seed = seed;
  if (*tol_opt) g.tol = tol;

  try {
    if (*index) {
      cmd_index(spec_a, g, out);
    } else if (*lorenz_cmd) {
      cmd_lorenz(spec_a, res, kendall, g, out);
    } else if (*w1_cmd) {
      cmd_w1(spec_a, spec_b, verbose, g, out);
    } else if (*converge) {
      cmd_converge(experiment, steps, g, out);
    } else if (*extremal) {
      cmd_extremal(h, *alpha_opt ? std::optional(alpha) : std::nullopt,
                   *mean_opt ? std::optional(mean) : std::nullopt, g, out);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace ineq
