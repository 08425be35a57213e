#include "csv_compare.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace cloakwave::cli {
namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse(const std::string& s, double& x) {
  if (s.empty()) return false;
  char* end = nullptr;
  x = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

Real golden_tolerance() {
  if (const char* env = std::getenv("CLOAKWAVE_SEED_TOL")) {
    double x = 0;
    if (parse(env, x) && x >= 0) return x;
  }
  return 1e-9L;
}

CsvComparison compare_csv(const std::string& actual, const std::string& expected, Real tol) {
  const auto a = split_lines(actual);
  const auto b = split_lines(expected);
  if (a.size() != b.size()) {
    return {false, "row count " + std::to_string(a.size()) + " != " + std::to_string(b.size())};
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ca = split_cells(a[i]);
    const auto cb = split_cells(b[i]);
    if (ca.size() != cb.size()) return {false, "line " + std::to_string(i + 1) + ": column count differs"};
    for (std::size_t j = 0; j < ca.size(); ++j) {
      double x = 0;
      double y = 0;
      bool same = ca[j] == cb[j];
      if (!same && parse(ca[j], x) && parse(cb[j], y)) {
        same = (std::isnan(x) && std::isnan(y)) ||
               std::abs(x - y) <= double(tol) * std::max(std::abs(x), std::abs(y)) + 1e-12;
      }
      if (!same) {
        return {false, "line " + std::to_string(i + 1) + ", column " + std::to_string(j + 1) + ": '" + ca[j] +
                           "' vs '" + cb[j] + "'"};
      }
    }
  }
  return {};
}

}  // namespace cloakwave::cli
