#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace blotto {

// One player's pure strategy: a split of budget B across the n battlefields.
struct Allocation {
  std::vector<double> amounts;
  double budget = 1.0;

  std::size_t size() const { return amounts.size(); }
  double sum() const;

  // ContractError unless amounts are non-negative and |sum - budget| is
  // within rel_tol * budget.
  void validate(double rel_tol = 1e-12) const;
};

Allocation uniform_split(std::size_t n, double budget);
Allocation simplex_vertex(std::size_t n, std::size_t index, double budget);

// Whitespace/comma separated rows of numbers; '#' comments and blank lines
// are skipped. Each row must have the same width.
std::vector<std::vector<double>> parse_allocation_rows(const std::string& text);

std::string format_csv_row(const std::vector<double>& row);

}  // namespace blotto
