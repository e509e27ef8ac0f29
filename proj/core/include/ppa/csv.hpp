#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ppa {

/// Shortest-stable decimal form: 17 significant digits, round-trips exactly.
std::string format_real(double v);

/// Minimal CSV writer: LF line endings, header row written on construction,
/// fields with commas or quotes quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& fields);
  std::size_t columns() const { return columns_; }

 private:
  std::ostream& out_;
  std::size_t columns_;
};

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace ppa
