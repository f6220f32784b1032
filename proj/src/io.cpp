#include "qbic/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qbic {

int RawTable::column_index(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

const std::vector<double>& RawTable::column(const std::string& name) const {
  const int i = column_index(name);
  if (i < 0) throw SchemaError("no such column: " + name);
  return columns[i];
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

RawTable load_csv(const std::string& path, const std::vector<std::string>& schema) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open file: " + path);
  std::string line;
  if (!std::getline(f, line)) throw ParseError(path + ": empty file (header required)");
  RawTable table;
  for (const auto& name : split_csv_line(line)) table.names.push_back(trim(name));
  table.columns.assign(table.names.size(), {});

  size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != table.names.size())
      throw ParseError(path + ": row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(table.names.size()));
    for (size_t c = 0; c < cells.size(); ++c) {
      const std::string cell = trim(cells[c]);
      try {
        size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        table.columns[c].push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path + ": unparseable cell at row " + std::to_string(row) +
                         ", column '" + table.names[c] + "'");
      }
    }
  }
  for (const auto& required : schema)
    if (table.column_index(required) < 0)
      throw SchemaError("missing column '" + required + "' in " + path);
  return table;
}

void write_csv(const RawTable& table, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write file: " + path);
  f << std::setprecision(17);
  for (size_t i = 0; i < table.names.size(); ++i)
    f << (i ? "," : "") << table.names[i];
  f << '\n';
  for (size_t r = 0; r < table.rows(); ++r) {
    for (size_t c = 0; c < table.columns.size(); ++c)
      f << (c ? "," : "") << table.columns[c][r];
    f << '\n';
  }
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  RawTable t;
  t.names.push_back("y");
  t.columns.push_back(std::vector<double>(data.y.data(), data.y.data() + data.n()));
  for (Eigen::Index c = 0; c < data.p(); ++c) {
    t.names.push_back(data.column_names.empty() ? "x" + std::to_string(c + 1)
                                                : data.column_names[c]);
    std::vector<double> col(data.n());
    for (Eigen::Index r = 0; r < data.n(); ++r) col[r] = data.X(r, c);
    t.columns.push_back(std::move(col));
  }
  write_csv(t, path);
}

RawTable normalize(const RawTable& table, const std::vector<std::string>& columns) {
  RawTable out = table;
  for (const auto& name : columns) {
    const int i = out.column_index(name);
    if (i < 0) throw SchemaError("normalize: no such column: " + name);
    auto& col = out.columns[i];
    const size_t n = col.size();
    if (n < 2) throw DegenerateColumn("normalize: column '" + name + "' too short");
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0))
      throw DegenerateColumn("normalize: column '" + name + "' has zero variance");
    for (double& v : col) v = (v - mean) / sd;
  }
  return out;
}

std::vector<double> seasonal_indicator(const std::vector<double>& series, int lag) {
  if (lag < 1) throw Error("seasonal_indicator: lag must be >= 1");
  if (series.size() <= static_cast<size_t>(lag))
    throw InsufficientHistory("seasonal_indicator: series length must exceed the lag");
  std::vector<double> out(series.size() - lag);
  for (size_t t = lag; t < series.size(); ++t)
    out[t - lag] = (series[t] - series[t - lag] >= 0.0) ? 1.0 : 0.0;
  return out;
}

Dataset build_lagged_design(const RawTable& table, const std::vector<double>& response,
                            const std::vector<std::string>& predictors, int response_lag) {
  if (response_lag < 0) throw Error("build_lagged_design: lag must be >= 0");
  if (response.size() > table.rows())
    throw Error("build_lagged_design: response longer than the table");
  const size_t offset = table.rows() - response.size();  // right alignment

  std::vector<const std::vector<double>*> cols;
  for (const auto& name : predictors) cols.push_back(&table.column(name));

  std::vector<size_t> usable;  // response indices with full predictor history
  for (size_t i = 0; i < response.size(); ++i) {
    const long src = static_cast<long>(offset + i) - response_lag;
    if (src >= 0) usable.push_back(i);
  }
  if (usable.empty())
    throw InsufficientHistory("build_lagged_design: no rows remain after lag alignment");

  Dataset data;
  data.y.resize(usable.size());
  data.X.resize(usable.size(), static_cast<Eigen::Index>(cols.size()));
  for (size_t r = 0; r < usable.size(); ++r) {
    const size_t i = usable[r];
    const size_t src = offset + i - response_lag;
    data.y[r] = response[i];
    for (size_t c = 0; c < cols.size(); ++c) data.X(r, c) = (*cols[c])[src];
  }
  data.column_names = predictors;
  data.validate();
  return data;
}

}  // namespace qbic
