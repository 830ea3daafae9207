#include "fed/csv.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "fed/errors.hpp"

namespace fed::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw ConfigError("CsvWriter: no columns");
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  if (header_written_)
    throw ConfigError("CsvWriter: metadata must precede data rows");
  body_ += "# ";
  body_ += key;
  body_ += " = ";
  body_ += value;
  body_ += '\n';
}

void CsvWriter::meta(const std::string& key, double value) {
  meta(key, format_double(value));
}

void CsvWriter::comment(const std::string& text) {
  if (header_written_)
    throw ConfigError("CsvWriter: comments must precede data rows");
  body_ += "# ";
  body_ += text;
  body_ += '\n';
}

void CsvWriter::finish_header() {
  if (header_written_) return;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i > 0) body_ += ',';
    body_ += columns_[i];
  }
  body_ += '\n';
  header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw ConfigError("CsvWriter: row width does not match column count");
  finish_header();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) body_ += ',';
    body_ += format_double(values[i]);
  }
  body_ += '\n';
  ++rows_;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fed::io
