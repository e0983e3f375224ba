#include "zicure/dataset.hpp"

namespace zicure {

DatasetSummary summarize(const Dataset& data) {
  DatasetSummary s;
  s.n = data.n();
  for (const auto& row : data.rows) {
    if (row.time == 0.0) {
      ++s.zero_rows;
      if (row.event == 0) ++s.zero_censored_rows;
    } else if (row.event == 1) {
      ++s.events_positive;
    } else {
      ++s.censored_rows;
    }
  }
  return s;
}

}  // namespace zicure
