#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <string>
#include <vector>

#include "zicure/csv.hpp"
#include "zicure/estimator.hpp"
#include "zicure/kaplan_meier.hpp"
#include "zicure/report.hpp"
#include "zicure/simulator.hpp"

namespace fs = std::filesystem;
using zicure::ModelVariant;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string pattern_label(const std::vector<double>& x) {
  if (x.empty()) return "all";
  std::string label;
  char buf[48];
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", x[i]);
    if (i) label += '_';
    label += buf;
  }
  return label;
}

// distinct zero-side covariate patterns, descending so dummy group (1,0,..)
// prints before the reference (0,0,..)
std::vector<std::vector<double>> distinct_patterns(const zicure::Dataset& data) {
  std::set<std::vector<double>, std::greater<>> seen;
  for (const auto& row : data.rows) seen.insert(row.covariates_zero);
  return {seen.begin(), seen.end()};
}

struct FitCommand {
  std::string input;
  std::string model = "zipcr";
  std::string time_col = "time";
  std::string event_col = "event";
  std::vector<std::string> covariates;
  std::vector<std::string> zero_covariates;
  std::vector<std::string> cure_covariates;
  double level = 0.95;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int max_iterations = 500;
  double gradient_tolerance = 1e-5;
  double objective_rel_tol = 1e-10;
  int restarts = 3;
};

int run_fit(const FitCommand& cmd) {
  zicure::IngestSpec spec;
  spec.time_column = cmd.time_col;
  spec.event_column = cmd.event_col;
  spec.covariate_columns = cmd.covariates;
  spec.zero_covariate_columns = cmd.zero_covariates;
  spec.cure_covariate_columns = cmd.cure_covariates;
  const zicure::IngestResult ingest = zicure::ingest_file(cmd.input, spec);

  std::vector<std::string> warnings;
  const zicure::DatasetSummary summary = zicure::summarize(ingest.data);
  if (summary.zero_rows == 0) {
    warnings.push_back("no zero-time observations: the zero-inflation mass is unidentified "
                       "and its coefficients will drift to the boundary");
  }
  if (summary.zero_censored_rows > 0) {
    warnings.push_back(std::to_string(summary.zero_censored_rows) +
                       " zero-time row(s) carry a censoring flag; they enter the likelihood "
                       "through the zero branch regardless");
  }

  std::vector<ModelVariant> variants;
  if (cmd.model == "zipcr") {
    variants = {ModelVariant::zipcr};
  } else if (cmd.model == "zicr") {
    variants = {ModelVariant::zicr};
  } else if (cmd.model == "both") {
    variants = {ModelVariant::zipcr, ModelVariant::zicr};
  } else {
    throw std::runtime_error("unknown model '" + cmd.model + "' (use zipcr, zicr or both)");
  }

  zicure::FitConfig config;
  config.max_iterations = cmd.max_iterations;
  config.gradient_tolerance = cmd.gradient_tolerance;
  config.objective_rel_tol = cmd.objective_rel_tol;
  config.restarts = cmd.restarts;
  config.seed = cmd.seed;
  config.confidence_level = cmd.level;

  const auto param_names =
      zicure::parameter_names(ingest.covariate_names, ingest.cure_covariate_names);
  const auto patterns = distinct_patterns(ingest.data);
  const bool patterns_usable = patterns.size() <= 64;
  if (!patterns_usable) {
    warnings.push_back("more than 64 distinct covariate patterns; skipping per-group "
                       "outcome and curve files");
  }

  fs::create_directories(fs::path(cmd.out_dir) / "curves");

  nlohmann::json report;
  std::vector<std::pair<std::string, std::vector<zicure::GroupOutcome>>> outcomes_by_model;
  std::string summary_text;
  bool all_converged = true;
  std::vector<std::pair<ModelVariant, zicure::FitResult>> fits;

  for (ModelVariant variant : variants) {
    zicure::FitResult fit = zicure::fit(ingest.data, variant, config);
    all_converged = all_converged && fit.converged;
    std::vector<zicure::GroupOutcome> outcomes;
    if (patterns_usable && fit.converged) {
      outcomes = zicure::group_outcomes(fit, patterns);
      outcomes_by_model.emplace_back(zicure::variant_name(variant), outcomes);
    }
    nlohmann::json j = zicure::fit_report_json(fit, param_names, outcomes, warnings);
    summary_text += zicure::summary_table(fit, param_names) + "\n";
    if (variants.size() == 1) {
      report = std::move(j);
    } else {
      report["fits"][zicure::variant_name(variant)] = std::move(j);
    }
    fits.emplace_back(variant, std::move(fit));
  }

  if (variants.size() > 1) {
    report["model"] = "both";
    report["n"] = ingest.data.n();
    const auto& zipcr = report["fits"]["zipcr"];
    const auto& zicr = report["fits"]["zicr"];
    report["preferred"] =
        zipcr["aic"].get<double>() <= zicr["aic"].get<double>() ? "zipcr" : "zicr";
    char line[160];
    std::snprintf(line, sizeof line, "AIC comparison: zipcr = %.2f, zicr = %.2f -> prefer %s\n",
                  zipcr["aic"].get<double>(), zicr["aic"].get<double>(),
                  report["preferred"].get<std::string>().c_str());
    summary_text += line;
  }
  report["meta"] = {{"tool", "zicure 0.1.0"}, {"input", cmd.input}, {"seed", cmd.seed}};

  // curve files: per-stratum KM overlayed with each converged model's curve
  if (patterns_usable && !patterns.empty()) {
    double t_max = 0.0;
    for (const auto& row : ingest.data.rows) t_max = std::max(t_max, row.time);
    std::vector<double> grid;
    if (t_max > 0.0) {
      const int steps = 200;
      grid.reserve(steps + 1);
      for (int i = 0; i <= steps; ++i) grid.push_back(t_max * i / steps);
    } else {
      grid.push_back(0.0);
    }
    for (const auto& pattern : patterns) {
      const std::string label = pattern_label(pattern);
      zicure::Dataset subset;
      for (const auto& row : ingest.data.rows) {
        if (row.covariates_zero == pattern) subset.rows.push_back(row);
      }
      std::vector<zicure::SurvivalCurve> curves;
      curves.push_back(zicure::kaplan_meier(subset, label));
      for (const auto& [variant, fit] : fits) {
        if (!fit.converged) continue;
        const std::string fit_label =
            variants.size() == 1 ? label : label + "/" + zicure::variant_name(variant);
        curves.push_back(zicure::fitted_curve(fit, pattern, variant, grid, fit_label));
      }
      zicure::write_text_file((fs::path(cmd.out_dir) / "curves" / (label + ".csv")).string(),
                              zicure::curves_csv(curves));
    }
  }

  for (const auto& w : warnings) summary_text += "warning: " + w + "\n";
  zicure::write_text_file((fs::path(cmd.out_dir) / "fit_report.json").string(),
                          report.dump(2) + "\n");
  zicure::write_text_file((fs::path(cmd.out_dir) / "group_outcomes.csv").string(),
                          zicure::group_outcomes_csv(outcomes_by_model));
  zicure::write_text_file((fs::path(cmd.out_dir) / "summary.txt").string(), summary_text);
  std::cout << summary_text;

  return all_converged ? 0 : 2;
}

struct SimulateCommand {
  std::string out = "simulated.csv";
  std::string model = "zipcr";
  std::string group_sizes = "1626,1574,938";
  std::string group_covariates = "1,0;0,1;0,0";
  std::string params = "-1.4108,0.3832,0.5245,1.8575,-0.8011,-0.5504,0.1337,3.2746";
  double censor_time = 35.657;
  std::uint64_t seed = 1;
};

int run_simulate(const SimulateCommand& cmd) {
  zicure::SimulationDesign design;
  for (const auto& tok : split(cmd.group_sizes, ',')) {
    design.group_sizes.push_back(std::stoul(tok));
  }
  for (const auto& grp : split(cmd.group_covariates, ';')) {
    std::vector<double> x;
    if (!grp.empty()) {
      for (const auto& tok : split(grp, ',')) x.push_back(std::stod(tok));
    }
    design.group_covariates.push_back(std::move(x));
  }
  std::vector<double> flat;
  for (const auto& tok : split(cmd.params, ',')) flat.push_back(std::stod(tok));
  const std::size_t q =
      design.group_covariates.empty() ? 0 : design.group_covariates.front().size();
  design.true_params = zicure::ParameterVector::from_flat(flat, q);
  design.censor_time = cmd.censor_time;
  design.seed = cmd.seed;

  const ModelVariant variant =
      cmd.model == "zicr" ? ModelVariant::zicr : ModelVariant::zipcr;
  if (cmd.model != "zipcr" && cmd.model != "zicr") {
    throw std::runtime_error("simulate: model must be zipcr or zicr");
  }
  const zicure::Dataset data = zicure::simulate(design, variant);

  std::vector<std::string> names;
  for (std::size_t j = 0; j < q; ++j) names.push_back("x" + std::to_string(j + 1));
  zicure::write_dataset_csv(cmd.out, data, names);
  std::cout << "wrote " << data.n() << " rows to " << cmd.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-inflated cure-rate survival modelling for loan portfolios"};
  app.require_subcommand(0, 1);

  FitCommand fit_cmd;
  app.add_option("--input", fit_cmd.input, "input CSV path");
  app.add_option("--model", fit_cmd.model, "zipcr | zicr | both");
  app.add_option("--time-col", fit_cmd.time_col, "time column name");
  app.add_option("--event-col", fit_cmd.event_col, "event column name (1 event, 0 censored)");
  app.add_option("--covariates", fit_cmd.covariates,
                 "covariate columns (prefix 'cat:' forces dummy expansion)")
      ->delimiter(',');
  app.add_option("--zero-covariates", fit_cmd.zero_covariates,
                 "distinct covariate columns for the zero-inflation link")
      ->delimiter(',');
  app.add_option("--cure-covariates", fit_cmd.cure_covariates,
                 "distinct covariate columns for the cure link")
      ->delimiter(',');
  app.add_option("--level", fit_cmd.level, "confidence level (default 0.95)");
  app.add_option("--out", fit_cmd.out_dir, "output directory (default .)");
  app.add_option("--seed", fit_cmd.seed, "seed for restart jitter");
  app.add_option("--max-iterations", fit_cmd.max_iterations, "optimizer iteration cap");
  app.add_option("--gradient-tolerance", fit_cmd.gradient_tolerance,
                 "scaled gradient infinity-norm tolerance");
  app.add_option("--objective-rel-tol", fit_cmd.objective_rel_tol,
                 "relative objective-change tolerance");
  app.add_option("--restarts", fit_cmd.restarts, "jittered restarts on non-convergence");

  SimulateCommand sim_cmd;
  CLI::App* sim = app.add_subcommand("simulate", "generate a synthetic portfolio CSV");
  sim->add_option("--out", sim_cmd.out, "output CSV path");
  sim->add_option("--model", sim_cmd.model, "zipcr | zicr generating process");
  sim->add_option("--group-sizes", sim_cmd.group_sizes, "comma list of per-group counts");
  sim->add_option("--group-covariates", sim_cmd.group_covariates,
                  "semicolon-separated covariate patterns, e.g. '1,0;0,1;0,0'");
  sim->add_option("--params", sim_cmd.params,
                  "flat parameter list [beta_kappa.., beta_theta.., alpha_log, lambda_log]");
  sim->add_option("--censor-time", sim_cmd.censor_time, "administrative censoring cutoff");
  sim->add_option("--seed", sim_cmd.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) return run_simulate(sim_cmd);
    if (fit_cmd.input.empty()) {
      std::cerr << "error: --input is required (or use the simulate subcommand)\n";
      return 1;
    }
    return run_fit(fit_cmd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
