#pragma once

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace steklov::io {

/// Same text as printf("%.17g") in the C locale, so every double round-trips.
/// Non-finite values print as nan, inf and -inf.
std::string format_number(double x);

/// Comma-separated rows with a header line and '\n' endings. Fields are
/// written verbatim, so callers must not pass text containing commas.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  CsvWriter& field(double x);
  CsvWriter& field(long long x);
  CsvWriter& field(int x) { return field(static_cast<long long>(x)); }
  CsvWriter& field(std::string_view text);
  void end_row();

  std::size_t columns() const { return columns_; }

 private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

/// Writes `content` to `path`, replacing any existing file. Throws
/// std::runtime_error if the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace steklov::io
