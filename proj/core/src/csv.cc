#include "snnlab/csv.h"

#include <charconv>
#include <cmath>

#include "snnlab/error.h"

namespace snnlab {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string QuoteCsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_row = [&] {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
    row.clear();
    field.clear();
    field_started = false;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      ++i;
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\n' || (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
      if (c == '\r') ++i;
      end_row();
    } else {
      field += c;
      field_started = true;
    }
    ++i;
  }
  if (quoted) throw FormatError("CSV: unterminated quoted field");
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw IoError("cannot open " + path + " for writing");
  if (header.empty()) throw InvalidArgument("CSV header must not be empty");
  Write(header);
}

void CsvWriter::Write(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw DimensionError(path_ + ": row has " + std::to_string(fields.size()) +
                         " columns, header has " + std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << QuoteCsvField(fields[i]);
  }
  out_ << '\n';
  if (!out_) throw IoError("write failed: " + path_);
}

void CsvWriter::Close() {
  out_.close();
  if (out_.fail()) throw IoError("close failed: " + path_);
}

CsvWriter::Row& CsvWriter::Row::operator<<(std::string_view text) {
  fields_.emplace_back(text);
  return *this;
}
CsvWriter::Row& CsvWriter::Row::operator<<(double value) {
  fields_.push_back(FormatDouble(value));
  return *this;
}
CsvWriter::Row& CsvWriter::Row::operator<<(int value) {
  fields_.push_back(std::to_string(value));
  return *this;
}
CsvWriter::Row& CsvWriter::Row::operator<<(long value) {
  fields_.push_back(std::to_string(value));
  return *this;
}
CsvWriter::Row& CsvWriter::Row::operator<<(long long value) {
  fields_.push_back(std::to_string(value));
  return *this;
}
CsvWriter::Row& CsvWriter::Row::operator<<(unsigned long value) {
  fields_.push_back(std::to_string(value));
  return *this;
}
CsvWriter::Row& CsvWriter::Row::operator<<(unsigned long long value) {
  fields_.push_back(std::to_string(value));
  return *this;
}
void CsvWriter::Row::End() { writer_.Write(fields_); }

}  // namespace snnlab
