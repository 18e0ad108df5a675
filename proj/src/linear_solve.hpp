#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace etss::detail {

// Dense linear system A x = b over F_p. Rows are owned flat; the solver is
// plain Gauss-Jordan, which is plenty for the dealer-recovery and oracle
// systems (a few hundred unknowns at most).
struct GfSystem {
  std::uint32_t p = 2;
  std::size_t cols = 0;
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::uint32_t> rhs;

  void add_row(std::vector<std::uint32_t> row, std::uint32_t b) {
    rows.push_back(std::move(row));
    rhs.push_back(b);
  }
};

struct GfSolution {
  bool consistent = false;
  std::vector<std::uint32_t> x;
  // True where the coordinate takes the same value in every solution.
  std::vector<bool> pinned;
};

// free_value(col) supplies the value of each non-pivot variable, in
// ascending column order; pass a constant-zero function when any solution
// will do.
GfSolution solve_gf_system(GfSystem system,
                           const std::function<std::uint32_t(std::size_t)>& free_value);

}  // namespace etss::detail
