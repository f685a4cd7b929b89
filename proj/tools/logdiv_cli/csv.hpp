#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

// Parse/format failure; line is 1-based, 0 when not tied to a line.
struct CsvError : std::runtime_error {
  int line;
  CsvError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
  explicit CsvError(const std::string& msg) : std::runtime_error(msg), line(0) {}
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a header column; throws CsvError naming it when absent.
  int column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  // Count of consecutive columns name1, name2, ... starting at 1.
  int series_length(const std::string& prefix) const;
};

// Reads a CSV file: '#' lines are comments, the first data line is the
// required header, every following row must match its width and parse as
// doubles.  Empty cells are not allowed.
CsvTable read_csv(const std::string& path);

// %.17g, round-trip exact for doubles.
std::string format_double(double v);

// Writes comment lines (already starting with '#'), the header, and rows.
// Cells holding NaN are written empty.
void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// As write_csv but with free-form string cells.
void write_csv_strings(const std::string& path,
                       const std::vector<std::string>& comments,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

}  // namespace cli
