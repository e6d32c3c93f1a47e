#include "psilab/csvio.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>

#include "psilab/version.hpp"

namespace psilab {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void RunManifest::add(const std::string& key, const std::string& value) {
  params.emplace_back(key, value);
}

void RunManifest::add(const std::string& key, double value) {
  params.emplace_back(key, fmt_double(value));
}

void RunManifest::add(const std::string& key, long long value) {
  params.emplace_back(key, std::to_string(value));
}

void CsvWriter::manifest(const RunManifest& m) {
  out_ << "# psilab " << kVersion << "\n";
  out_ << "# command: " << m.command << "\n";
  for (const auto& [key, value] : m.params)
    out_ << "# param " << key << ": " << value << "\n";
  out_ << "# zeros_fnv1a64: "
       << (m.zeros_checksum.empty() ? "-" : m.zeros_checksum) << "\n";
  out_ << "# precision_bits: " << m.precision_bits << "\n";
}

void CsvWriter::comment(const std::string& text) {
  out_ << "# " << text << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace psilab
