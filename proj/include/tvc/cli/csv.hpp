#pragma once

#include "tvc/core/sample.hpp"

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace tvc::cli {

struct CsvSample {
    TimeSeriesSample sample;
    /// Regressor column names from the header (x1..xp in canonical files).
    std::vector<std::string> regressor_names;
    bool had_time_column = false;
};

/**
 * @brief Reads `t,y,x1,...,xp` or `y,x1,...,xp` with a header line.
 *
 * A time column, if present, must be strictly increasing in (0, 1]; the
 * model itself always uses t_i = i/n. Malformed rows (wrong field count,
 * non-numeric or non-finite values) throw Error(Parse) naming the line.
 */
CsvSample read_sample_csv(std::istream& in, const std::string& source = "input");
CsvSample read_sample_csv_file(const std::string& path);

/// Writes `t,y,x1,...,xp` with round-trip precision.
void write_sample_csv(std::ostream& out, const TimeSeriesSample& sample);

/// Splits one CSV line on commas and trims surrounding whitespace of each field.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace tvc::cli
