#ifndef SNNLAB_CSV_H_
#define SNNLAB_CSV_H_

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace snnlab {

// Shortest decimal text that round-trips to the same double.
std::string FormatDouble(double value);

// Quotes a field when it contains a comma, quote, CR or LF; inner quotes
// are doubled.
std::string QuoteCsvField(std::string_view field);

// Parses CSV text into rows of unquoted fields. Accepts LF and CRLF line
// ends and quoted fields spanning lines. Throws FormatError on an
// unterminated quote.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

// Writes a header row on construction and checks that every later row has
// the same number of columns. Lines end with LF.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> header);

  class Row {
   public:
    explicit Row(CsvWriter& writer) : writer_(writer) {}
    Row& operator<<(std::string_view text);
    Row& operator<<(const char* text) { return *this << std::string_view(text); }
    Row& operator<<(const std::string& text) { return *this << std::string_view(text); }
    Row& operator<<(double value);
    Row& operator<<(int value);
    Row& operator<<(long value);
    Row& operator<<(long long value);
    Row& operator<<(unsigned long value);
    Row& operator<<(unsigned long long value);
    void End();

   private:
    CsvWriter& writer_;
    std::vector<std::string> fields_;
  };

  Row NewRow() { return Row(*this); }
  void Write(const std::vector<std::string>& fields);
  void Close();
  std::size_t columns() const { return columns_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace snnlab

#endif  // SNNLAB_CSV_H_
