#pragma once

// Deterministic CSV output: '#'-prefixed manifest header, one header row,
// shortest-round-trip decimal cells, LF line endings.

#include <complex>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace psilab {

// Shortest decimal string that round-trips to the same double.
std::string fmt_double(double v);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;  // kept in order
  std::string zeros_checksum;  // 16 hex digits, or "-" when no zeros file
  int precision_bits = 53;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
};

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void manifest(const RunManifest& m);
  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace psilab
