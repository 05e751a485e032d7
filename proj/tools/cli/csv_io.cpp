#include "cli/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ffdm/error.hpp"

namespace ffdm::cli {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text) {
  const char* first = text.data();
  const char* last = first + text.size();
  while (first != last && *first == ' ') ++first;
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::InvalidProfile, "not a number in CSV: '" + text + "'");
  }
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<CsvSection>& sections) {
  for (std::size_t s = 0; s < sections.size(); ++s) {
    if (s > 0) os << '\n';
    const auto& sec = sections[s];
    for (std::size_t c = 0; c < sec.header.size(); ++c) os << (c ? "," : "") << sec.header[c];
    os << '\n';
    for (const auto& row : sec.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
      os << '\n';
    }
  }
}

std::vector<CsvSection> read_csv(std::istream& is) {
  std::vector<CsvSection> sections;
  bool want_header = true;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      want_header = true;
      continue;
    }
    auto cells = split(line);
    if (want_header) {
      sections.push_back({std::move(cells), {}});
      want_header = false;
      continue;
    }
    auto& sec = sections.back();
    if (cells.size() != sec.header.size()) {
      throw Error(ErrorCode::InvalidProfile, "CSV row has " + std::to_string(cells.size()) +
                                                 " cells, header has " +
                                                 std::to_string(sec.header.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c));
    sec.rows.push_back(std::move(row));
  }
  return sections;
}

CsvSection solution_section(const Solution& solution) {
  CsvSection sec{{"x", "T"}, {}};
  sec.rows.reserve(solution.values.size());
  for (std::size_t i = 0; i < solution.values.size(); ++i) {
    sec.rows.push_back({solution.nodes[i], solution.values[i]});
  }
  return sec;
}

std::vector<CsvSection> weight_sections(const WeightTable& table) {
  CsvSection w{{"k", "w"}, {}};
  for (long k = -table.kmax(); k <= table.kmax(); ++k) {
    w.rows.push_back({static_cast<double>(k), table.w(k)});
  }
  CsvSection tails{{"j", "sL", "sR"}, {}};
  for (long j = 1; j <= table.kmax(); ++j) {
    tails.rows.push_back({static_cast<double>(j), table.tail_left(j), table.tail_right(j)});
  }
  return {std::move(w), std::move(tails)};
}

ObservedProfile read_profile(std::istream& is, std::optional<double> left,
                             std::optional<double> right) {
  const auto sections = read_csv(is);
  if (sections.size() != 1 || sections[0].header != std::vector<std::string>{"x", "T_obs"}) {
    throw Error(ErrorCode::InvalidProfile, "profile CSV must be a single table with header x,T_obs");
  }
  const auto& rows = sections[0].rows;
  if (rows.empty()) throw Error(ErrorCode::InvalidProfile, "profile CSV has no data rows");
  ObservedProfile profile{{}, left.value_or(rows.front()[0]), right.value_or(rows.back()[0])};
  for (const auto& r : rows) profile.points.push_back({r[0], r[1]});
  validate_profile(profile);
  return profile;
}

}  // namespace ffdm::cli
