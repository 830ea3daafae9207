#pragma once

#include <string>
#include <vector>

namespace fed::io {

/// Shortest round-trippable-ish decimal ("%.12g"); deterministic for a fixed
/// libc, which is what the bit-identical-output contract rests on.
std::string format_double(double x);

/// Accumulates a CSV document: '#'-prefixed metadata lines, one plain header
/// line naming the columns, then data rows. No timestamps, no locale.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void comment(const std::string& text);
  void row(const std::vector<double>& values);  // size must match columns

  const std::string& str() const { return body_; }
  std::size_t rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::string body_;
  std::size_t rows_ = 0;
  bool header_written_ = false;

  void finish_header();
};

/// Writes text to path ("-" or empty means stdout). Throws std::runtime_error
/// on I/O failure.
void write_text(const std::string& path, const std::string& text);

}  // namespace fed::io
