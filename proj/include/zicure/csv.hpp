#pragma once

#include <string>
#include <vector>

#include "zicure/dataset.hpp"

namespace zicure {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Minimal RFC-ish CSV reader: comma separated, optional double quotes, CRLF
// tolerated. Throws std::runtime_error for a missing or empty file.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& origin = "<string>");

struct IngestSpec {
  std::string time_column = "time";
  std::string event_column = "event";
  // Shared covariate columns (x_zero = x_cure). A "cat:" prefix forces dummy
  // expansion; columns with non-numeric cells are expanded automatically.
  // The lexicographically last level is the reference.
  std::vector<std::string> covariate_columns;
  // Optional distinct sets; when nonempty they override the shared list for
  // the respective link.
  std::vector<std::string> zero_covariate_columns;
  std::vector<std::string> cure_covariate_columns;
};

struct IngestResult {
  Dataset data;
  std::vector<std::string> covariate_names;       // expanded, zero-inflation side
  std::vector<std::string> cure_covariate_names;  // expanded, cure side
  bool shared_covariates = true;
};

// Parses and validates: time nonnegative finite, event in {0,1}, covariates
// numeric after expansion. Errors name the offending data row (1-based).
IngestResult ingest(const CsvTable& table, const IngestSpec& spec);
IngestResult ingest_file(const std::string& path, const IngestSpec& spec);

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& covariate_names);

}  // namespace zicure
