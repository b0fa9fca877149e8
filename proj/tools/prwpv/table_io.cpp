#include "table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace prwpv::cli {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_real(const std::string& text, double& value) {
  if (text.empty()) return false;
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  in >> value;
  return in && in.peek() == std::char_traits<char>::eof() && std::isfinite(value);
}

}  // namespace

double LossSample::rhat() const noexcept {
  if (losses.empty()) return 0.0;
  return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(n());
}

std::vector<double> read_unit_column(std::istream& in, const std::string& column) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty input: expected header '" + column + "'");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  if (trim(line) != column) {
    throw DataError("line 1: expected header '" + column + "', got '" + trim(line) + "'");
  }
  std::vector<double> values;
  std::int64_t line_no = 1;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string cell = trim(line);
    if (cell.empty()) continue;
    ++row;
    const std::string where =
        "row " + std::to_string(row) + " (line " + std::to_string(line_no) + ")";
    if (cell.find(',') != std::string::npos) {
      throw DataError(where + ": expected a single '" + column + "' column, got '" + cell + "'");
    }
    double v = 0.0;
    if (!parse_real(cell, v)) throw DataError(where + ": not a number: '" + cell + "'");
    if (v < 0.0 || v > 1.0) throw DataError(where + ": " + column + " " + cell + " outside [0, 1]");
    values.push_back(v);
  }
  if (values.empty()) throw DataError("no data rows under header '" + column + "'");
  return values;
}

LossSample read_losses(std::istream& in) { return LossSample{read_unit_column(in, "loss")}; }

LossSample read_losses_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open losses file '" + path + "'");
  try {
    return read_losses(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::vector<double> read_pvalues_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open p-values file '" + path + "'");
  try {
    return read_unit_column(in, "pvalue");
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

double round_half_away(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

std::string format_value(double x, int digits) {
  if (digits < 0) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  }
  const double r = round_half_away(x, digits);
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << (r == 0.0 ? 0.0 : r);  // no "-0.0000"
  return out.str();
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    if (!parse_real(trim(item), v)) {
      throw std::invalid_argument(flag + ": not a number: '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument(flag + ": empty list");
  return values;
}

std::vector<double> table_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 44; ++i) grid.push_back(static_cast<double>(i) / 660.0);
  return grid;
}

std::vector<double> parse_grid(const std::string& text) {
  if (text == "table") return table_grid();
  const auto parts = parse_real_list(
      [&] {
        std::string s = text;
        for (char& c : s) {
          if (c == ':') c = ',';
        }
        return s;
      }(),
      "--grid");
  if (parts.size() != 3) {
    throw std::invalid_argument("--grid: expected start:step:stop or 'table', got '" + text + "'");
  }
  const double start = parts[0];
  const double step = parts[1];
  const double stop = parts[2];
  if (!(start >= 0.0 && stop <= 1.0 && start <= stop)) {
    throw std::invalid_argument("--grid: need 0 <= start <= stop <= 1, got '" + text + "'");
  }
  if (!(step > 0.0)) throw std::invalid_argument("--grid: step must be > 0");
  const double span = (stop - start) / step;
  if (span > 1e7) throw std::invalid_argument("--grid: more than 1e7 points");
  const auto count = static_cast<std::int64_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    grid.push_back(std::min(1.0, start + static_cast<double>(i) * step));
  }
  return grid;
}

}  // namespace prwpv::cli
