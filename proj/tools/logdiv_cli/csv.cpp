#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cli {

int CsvTable::column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  throw CsvError("missing required column '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header)
    if (h == name) return true;
  return false;
}

int CsvTable::series_length(const std::string& prefix) const {
  int n = 0;
  while (has_column(prefix + std::to_string(n + 1))) ++n;
  return n;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto cells = split_cells(t);
    if (!have_header) {
      for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i].empty())
          throw CsvError(lineno, "empty header cell in column " +
                                     std::to_string(i + 1));
      table.header = cells;
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size())
      throw CsvError(lineno, "expected " + std::to_string(table.header.size()) +
                                 " cells, found " + std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].empty())
        throw CsvError(lineno, "empty cell in column '" + table.header[i] + "'");
      try {
        size_t used = 0;
        row[i] = std::stod(cells[i], &used);
        if (used != cells[i].size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        throw CsvError(lineno, "cannot parse '" + cells[i] + "' in column '" +
                                   table.header[i] + "' as a number");
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw CsvError("'" + path + "' has no header row");
  return table;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv_strings(const std::string& path,
                       const std::vector<std::string>& comments,
                       const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw CsvError("cannot write '" + path + "'");
  for (const auto& c : comments) out << c << "\n";
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  if (!out) throw CsvError("write to '" + path + "' failed");
}

void write_csv(const std::string& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<std::string>> cells;
  cells.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::string> r;
    r.reserve(row.size());
    for (double v : row) r.push_back(std::isnan(v) ? "" : format_double(v));
    cells.push_back(std::move(r));
  }
  write_csv_strings(path, comments, header, cells);
}

}  // namespace cli
