#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ffdm/fit.hpp"
#include "ffdm/kernel.hpp"
#include "ffdm/solve.hpp"

namespace ffdm::cli {

/// Shortest form that is still "%.17g": 17 significant digits, round-trip exact.
std::string format_number(double v);

/// One header line followed by numeric rows.
struct CsvSection {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Sections are separated by a single blank line.
void write_csv(std::ostream& os, const std::vector<CsvSection>& sections);
/// Throws InvalidProfile on ragged rows or unparsable numbers.
std::vector<CsvSection> read_csv(std::istream& is);

/// Header `x,T`, one row per node.
CsvSection solution_section(const Solution& solution);
/// `k,w` for k = -kmax..kmax, then `j,sL,sR` for j = 1..kmax.
std::vector<CsvSection> weight_sections(const WeightTable& table);

/// Parses a `x,T_obs` profile. Domain bounds default to the first and last
/// abscissa. Throws InvalidProfile.
ObservedProfile read_profile(std::istream& is, std::optional<double> left = std::nullopt,
                             std::optional<double> right = std::nullopt);

}  // namespace ffdm::cli
