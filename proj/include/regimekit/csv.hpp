#pragma once

#include <string>
#include <vector>

#include "regimekit/series.hpp"

namespace regimekit {

// Loads quarterly series from a CSV file. Layout: header row, one date
// column (labels "YYYYQn"), remaining columns numeric. Comma delimiter,
// '.' decimal point, UTF-8 (a BOM is tolerated). Rows must be
// consecutive quarters; a gap, duplicate, or non-numeric cell is a
// LoadError naming the row and column. `value_columns` empty means all
// non-date columns; otherwise every requested column must exist.
// Returned series follow the file's column order.
std::vector<Series> load_csv(const std::string& path,
                             const std::string& date_column = "period",
                             const std::vector<std::string>& value_columns = {});

// Writes series sharing one contiguous period range as a CSV in the same
// dialect load_csv reads. All series must cover the identical range.
void write_csv(const std::string& path, const std::vector<Series>& columns,
               const std::string& date_column = "period");

// Lookup by name; throws DomainError when absent.
const Series& find_series(const std::vector<Series>& table, const std::string& name);

} // namespace regimekit
