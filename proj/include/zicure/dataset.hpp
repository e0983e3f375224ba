#pragma once

#include <cstddef>
#include <vector>

namespace zicure {

// One subject: lifetime, event indicator (1 = observed event, 0 = right
// censored) and the covariates entering the zero-inflation and cure links.
// The two covariate vectors usually alias the same values; they are stored
// separately because the links accept distinct sets.
struct Observation {
  double time = 0.0;
  int event = 1;
  std::vector<double> covariates_zero;
  std::vector<double> covariates_cure;
};

struct Dataset {
  std::vector<Observation> rows;

  std::size_t n() const { return rows.size(); }
  std::size_t q() const { return rows.empty() ? 0 : rows.front().covariates_zero.size(); }
};

struct DatasetSummary {
  std::size_t n = 0;
  std::size_t zero_rows = 0;           // time exactly 0.0
  std::size_t zero_censored_rows = 0;  // time 0 with event flag 0 (suspicious)
  std::size_t events_positive = 0;     // uncensored with time > 0
  std::size_t censored_rows = 0;
};

DatasetSummary summarize(const Dataset& data);

}  // namespace zicure
