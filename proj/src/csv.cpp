#include "zicure/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zicure {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

bool parse_number(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
  throw std::runtime_error("row " + std::to_string(row) + ": " + what);
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw std::runtime_error("column '" + name + "' not found in input");
  }
  return static_cast<std::size_t>(it - table.header.begin());
}

struct ColumnPlan {
  std::size_t index = 0;
  bool categorical = false;
  std::vector<std::string> dummy_levels;  // non-reference levels, sorted
  std::vector<std::string> names;         // expanded column names
};

std::vector<ColumnPlan> plan_columns(const CsvTable& table,
                                     const std::vector<std::string>& columns) {
  std::vector<ColumnPlan> plans;
  for (const std::string& raw : columns) {
    ColumnPlan plan;
    std::string name = raw;
    if (name.rfind("cat:", 0) == 0) {
      plan.categorical = true;
      name = name.substr(4);
    }
    plan.index = column_index(table, name);
    if (!plan.categorical) {
      // auto-detect: any non-numeric cell makes the column categorical
      for (const auto& row : table.rows) {
        double v;
        if (!trim(row[plan.index]).empty() && !parse_number(row[plan.index], v)) {
          plan.categorical = true;
          break;
        }
      }
    }
    if (plan.categorical) {
      std::set<std::string> levels;
      for (const auto& row : table.rows) levels.insert(trim(row[plan.index]));
      if (levels.size() < 2) {
        throw std::runtime_error("categorical column '" + name + "' needs >= 2 levels");
      }
      // lexicographically last level is the reference
      plan.dummy_levels.assign(levels.begin(), std::prev(levels.end()));
      for (const auto& lvl : plan.dummy_levels) plan.names.push_back(name + "=" + lvl);
    } else {
      plan.names.push_back(name);
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::vector<double> expand_row(const std::vector<std::string>& row,
                               const std::vector<ColumnPlan>& plans, std::size_t row_no) {
  std::vector<double> x;
  for (const auto& plan : plans) {
    const std::string cell = trim(row[plan.index]);
    if (cell.empty()) row_error(row_no, "missing covariate cell");
    if (plan.categorical) {
      for (const auto& lvl : plan.dummy_levels) x.push_back(cell == lvl ? 1.0 : 0.0);
    } else {
      double v;
      if (!parse_number(cell, v)) row_error(row_no, "non-numeric covariate '" + cell + "'");
      if (!std::isfinite(v)) row_error(row_no, "non-finite covariate");
      x.push_back(v);
    }
  }
  return x;
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!have_header && trim(line).empty()) continue;
    auto fields = split_line(line);
    if (!have_header) {
      for (auto& f : fields) f = trim(f);
      table.header = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
      if (fields.size() != table.header.size()) {
        row_error(table.rows.size() + 1, "expected " + std::to_string(table.header.size()) +
                                             " fields, got " + std::to_string(fields.size()));
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header || table.rows.empty()) {
    throw std::runtime_error(origin + ": empty input (need a header row and data rows)");
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path);
}

IngestResult ingest(const CsvTable& table, const IngestSpec& spec) {
  const std::size_t time_idx = column_index(table, spec.time_column);
  const std::size_t event_idx = column_index(table, spec.event_column);

  const auto& zero_cols = spec.zero_covariate_columns.empty() ? spec.covariate_columns
                                                              : spec.zero_covariate_columns;
  const auto& cure_cols = spec.cure_covariate_columns.empty() ? spec.covariate_columns
                                                              : spec.cure_covariate_columns;
  const bool shared = &zero_cols == &cure_cols || zero_cols == cure_cols;

  const auto zero_plans = plan_columns(table, zero_cols);
  const auto cure_plans = shared ? zero_plans : plan_columns(table, cure_cols);

  IngestResult result;
  result.shared_covariates = shared;
  for (const auto& p : zero_plans)
    result.covariate_names.insert(result.covariate_names.end(), p.names.begin(),
                                  p.names.end());
  for (const auto& p : cure_plans)
    result.cure_covariate_names.insert(result.cure_covariate_names.end(), p.names.begin(),
                                       p.names.end());
  if (result.covariate_names.size() != result.cure_covariate_names.size()) {
    throw std::runtime_error("zero and cure covariate sets must have equal dimension (got " +
                             std::to_string(result.covariate_names.size()) + " vs " +
                             std::to_string(result.cure_covariate_names.size()) + ")");
  }

  result.data.rows.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::size_t row_no = i + 1;
    Observation obs;

    double t;
    if (!parse_number(row[time_idx], t)) {
      row_error(row_no, "missing or non-numeric time '" + trim(row[time_idx]) + "'");
    }
    if (!std::isfinite(t) || t < 0.0) row_error(row_no, "negative or non-finite time");
    obs.time = t;

    double ev;
    if (!parse_number(row[event_idx], ev) || (ev != 0.0 && ev != 1.0)) {
      row_error(row_no, "event flag must be 0 or 1, got '" + trim(row[event_idx]) + "'");
    }
    obs.event = static_cast<int>(ev);

    obs.covariates_zero = expand_row(row, zero_plans, row_no);
    obs.covariates_cure = shared ? obs.covariates_zero : expand_row(row, cure_plans, row_no);
    result.data.rows.push_back(std::move(obs));
  }
  return result;
}

IngestResult ingest_file(const std::string& path, const IngestSpec& spec) {
  return ingest(read_csv(path), spec);
}

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& covariate_names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "time,event";
  for (const auto& name : covariate_names) out << ',' << name;
  out << '\n';
  char buf[64];
  for (const auto& row : data.rows) {
    std::snprintf(buf, sizeof buf, "%.10g", row.time);
    out << buf << ',' << row.event;
    for (double v : row.covariates_zero) {
      std::snprintf(buf, sizeof buf, "%.10g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace zicure
