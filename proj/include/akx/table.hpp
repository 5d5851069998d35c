#pragma once

#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "akx/closed_form.hpp"
#include "akx/rational.hpp"

namespace akx {

struct TableRow {
  int t = 1;
  Rat p;
  Rat w;
  std::vector<int> optimal_r;
};

// Curve data for w(n,t,p), t = 1..tmax: a uniform grid {k/grid} joined with
// the left endpoints r/(t+2r-1) of the optimality windows, each p exactly
// once, ascending.
inline std::vector<TableRow> table_rows(int n, int tmax, int grid) {
  if (n < 1 || tmax < 1 || tmax > n) throw std::invalid_argument("need 1 <= tmax <= n");
  if (grid < 2) throw std::invalid_argument("need grid >= 2");
  std::vector<TableRow> rows;
  for (int t = 1; t <= tmax; ++t) {
    std::set<Rat> ps;
    for (int k = 1; k < grid; ++k) ps.insert(make_rat(k, grid));
    const int rstar = (n - t) / 2;
    for (int r = 1; r <= rstar; ++r) ps.insert(make_rat(r, t + 2 * r - 1));
    for (const Rat& p : ps) {
      WResult res = w_closed(n, t, p);
      rows.push_back(TableRow{t, p, res.value, res.optimal_r});
    }
  }
  return rows;
}

inline void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  os << "t,p_num,p_den,w_num,w_den,optimal_r,w_float\n";
  for (const auto& row : rows) {
    os << row.t << ',' << numerator(row.p) << ',' << denominator(row.p) << ','
       << numerator(row.w) << ',' << denominator(row.w) << ',';
    for (std::size_t i = 0; i < row.optimal_r.size(); ++i) {
      if (i) os << ';';
      os << row.optimal_r[i];
    }
    os << ',' << std::setprecision(17) << rat_double(row.w) << '\n';
  }
}

inline std::string write_table_csv_string(const std::vector<TableRow>& rows) {
  std::ostringstream ss;
  write_table_csv(ss, rows);
  return ss.str();
}

}  // namespace akx
