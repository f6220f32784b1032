#pragma once

#include <optional>

#include "qbic/dataset.hpp"

namespace qbic {

// Columnar table of named real-valued series, as parsed from CSV.
struct RawTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // all the same length

  size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  int column_index(const std::string& name) const;  // -1 when absent
  const std::vector<double>& column(const std::string& name) const;
};

// Parses a header-first CSV of decimal reals. When `schema` is nonempty every
// listed column must be present (SchemaError otherwise). Unparseable cells
// raise ParseError with row/column.
RawTable load_csv(const std::string& path, const std::vector<std::string>& schema = {});

void write_csv(const RawTable& table, const std::string& path);
void write_dataset_csv(const Dataset& data, const std::string& path);

// z-score standardization ((x - mean) / sd, sd with n-1 denominator) of the
// selected columns; the rest pass through unchanged.
RawTable normalize(const RawTable& table, const std::vector<std::string>& columns);

// entry t (for t >= lag) is 1 iff series[t] - series[t-lag] >= 0; output
// length = input length - lag.
std::vector<double> seasonal_indicator(const std::vector<double>& series, int lag = 12);

// Aligns y_t against x_{t - response_lag}; rows without full history are
// dropped. `response` may be shorter than the table when it was produced by
// seasonal differencing; it is right-aligned against the table rows.
Dataset build_lagged_design(const RawTable& table, const std::vector<double>& response,
                            const std::vector<std::string>& predictors, int response_lag);

}  // namespace qbic
