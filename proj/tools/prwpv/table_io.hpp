#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace prwpv::cli {

/// Bad input data (as opposed to bad flags); carries a message naming the
/// offending row.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Losses read from a single-column CSV.
struct LossSample {
  std::vector<double> losses;

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(losses.size()); }
  double rhat() const noexcept;
};

/// Reads a one-column CSV whose header is `column` (UTF-8, optional BOM,
/// LF or CRLF). Blank lines are skipped. Every value must parse fully and
/// lie in [0, 1]; failures throw DataError citing the data row and line.
std::vector<double> read_unit_column(std::istream& in, const std::string& column);

LossSample read_losses(std::istream& in);
LossSample read_losses_file(const std::string& path);

std::vector<double> read_pvalues_file(const std::string& path);

/// Half-away-from-zero rounding to `digits` decimals.
double round_half_away(double x, int digits);

/// Fixed-point text of round_half_away(x, digits); digits < 0 prints the
/// shortest round-trip representation instead.
std::string format_value(double x, int digits);

/// Comma separated list of reals ("0.5,0.5").
std::vector<double> parse_real_list(const std::string& text, const std::string& flag);

/// "start:step:stop" (inclusive) or "table" for the 45-point i/660 grid.
std::vector<double> parse_grid(const std::string& text);

/// R-hat values 0, 1/660, ..., 44/660 of the reference comparison table.
std::vector<double> table_grid();

}  // namespace prwpv::cli
