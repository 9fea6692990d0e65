#include "blotto/allocation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "blotto/errors.hpp"

namespace blotto {

double Allocation::sum() const {
  double s = 0.0;
  for (double x : amounts) s += x;
  return s;
}

void Allocation::validate(double rel_tol) const {
  if (amounts.empty()) throw ContractError("empty allocation");
  if (!(budget > 0.0)) throw ContractError("budget must be positive");
  for (double x : amounts) {
    if (!(x >= 0.0)) throw ContractError("allocation amounts must be >= 0");
  }
  if (std::abs(sum() - budget) > rel_tol * budget) {
    throw ContractError("allocation does not sum to the budget");
  }
}

Allocation uniform_split(std::size_t n, double budget) {
  if (n == 0) throw ContractError("empty allocation");
  Allocation a;
  a.budget = budget;
  a.amounts.assign(n, budget / static_cast<double>(n));
  return a;
}

Allocation simplex_vertex(std::size_t n, std::size_t index, double budget) {
  if (index >= n) throw ContractError("vertex index out of range");
  Allocation a;
  a.budget = budget;
  a.amounts.assign(n, 0.0);
  a.amounts[index] = budget;
  return a;
}

std::vector<std::vector<double>> parse_allocation_rows(
    const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream tokens(line);
    std::vector<double> row;
    std::string tok;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad number '" + tok + "'");
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(lineno, "row width differs from the first row");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_csv_row(const std::vector<double>& row) {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < row.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", row[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

}  // namespace blotto
