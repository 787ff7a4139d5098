#include "steklov/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace steklov::io {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 17);
  return {buf.data(), res.ptr};
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(out), columns_(header.size()) {
  for (std::string_view name : header) field(name);
  end_row();
}

void CsvWriter::separator() {
  if (filled_ == columns_) throw std::logic_error("CsvWriter: too many fields in row");
  if (filled_ > 0) out_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::field(double x) {
  separator();
  out_ << format_number(x);
  return *this;
}

CsvWriter& CsvWriter::field(long long x) {
  separator();
  std::array<char, 24> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  out_.write(buf.data(), res.ptr - buf.data());
  return *this;
}

CsvWriter& CsvWriter::field(std::string_view text) {
  separator();
  out_ << text;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CsvWriter: row has missing fields");
  out_ << '\n';
  filled_ = 0;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.close();
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace steklov::io
