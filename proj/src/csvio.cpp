// SPDX-License-Identifier: Apache-2.0
#include "st2d/csvio.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace st2d {

namespace {

void write_row(std::ostream& os, const FerRecord& r) {
  std::ostringstream row;
  row.precision(9);  // >= 6 significant digits for fer by contract
  row << r.ebn0_db << ',' << r.frames << ',' << r.frame_errors << ',' << r.fer
      << ',' << r.bit_errors << ',' << r.ber << ',' << r.seconds << '\n';
  os << row.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double to_double(const std::string& s) {
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

long to_long(const std::string& s) {
  size_t pos = 0;
  const long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("csv: bad count '" + s + "'");
  return v;
}

}  // namespace

void write_fer_csv(std::ostream& os, std::span<const FerRecord> records) {
  os << kFerCsvHeader << '\n';
  for (const auto& r : records) write_row(os, r);
}

void write_fer_csv_labeled(std::ostream& os, const LabeledRecords& records) {
  os << "label," << kFerCsvHeader << '\n';
  for (const auto& [label, r] : records) {
    if (label.find(',') != std::string::npos) {
      throw std::invalid_argument("csv: label contains a comma");
    }
    os << label << ',';
    write_row(os, r);
  }
}

LabeledRecords read_fer_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool labeled;
  if (line == kFerCsvHeader) {
    labeled = false;
  } else if (line == std::string("label,") + kFerCsvHeader) {
    labeled = true;
  } else {
    throw std::invalid_argument("csv: unrecognized header '" + line + "'");
  }

  LabeledRecords out;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    const size_t expect = labeled ? 8 : 7;
    if (fields.size() != expect) {
      throw std::invalid_argument("csv: wrong field count in '" + line + "'");
    }
    size_t i = 0;
    std::string label = labeled ? fields[i++] : std::string();
    FerRecord r;
    r.ebn0_db = to_double(fields[i++]);
    r.frames = to_long(fields[i++]);
    r.frame_errors = to_long(fields[i++]);
    const double fer_text = to_double(fields[i++]);
    r.bit_errors = to_long(fields[i++]);
    r.ber = to_double(fields[i++]);
    r.seconds = to_double(fields[i++]);
    // fer is redundant given the integer columns; re-derive for exactness.
    r.fer = r.frames > 0 ? double(r.frame_errors) / double(r.frames) : fer_text;
    out.emplace_back(std::move(label), r);
  }
  return out;
}

}  // namespace st2d
