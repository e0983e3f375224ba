#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "zicure/estimator.hpp"
#include "zicure/kaplan_meier.hpp"

namespace zicure {

// Round to `digits` significant decimal digits (report precision). Report
// AIC/BIC are recomputed from the rounded log-likelihood through this same
// helper, so re-deriving them from a written report reproduces the stored
// values exactly.
double round_sig(double v, int digits = 10);

std::string variant_name(ModelVariant variant);

// Parameter names in flat layout order, e.g. beta_kappa.intercept,
// beta_kappa.x1, ..., alpha_log, lambda_log.
std::vector<std::string> parameter_names(const std::vector<std::string>& zero_cov_names,
                                         const std::vector<std::string>& cure_cov_names);

// Single-model report object: model, n, k, parameters, estimates,
// std_errors, ci, z_ratios, log_lik, aic, bic, converged, group_outcomes, ...
nlohmann::json fit_report_json(const FitResult& fit, const std::vector<std::string>& param_names,
                               const std::vector<GroupOutcome>& outcomes,
                               const std::vector<std::string>& warnings);

// Plain-text estimates table (parameter, estimate, se, |est|/se, CI).
std::string summary_table(const FitResult& fit, const std::vector<std::string>& param_names);

std::string group_outcomes_csv(const std::vector<std::pair<std::string, std::vector<GroupOutcome>>>&
                                   outcomes_by_model);

std::string curves_csv(const std::vector<SurvivalCurve>& curves);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace zicure
