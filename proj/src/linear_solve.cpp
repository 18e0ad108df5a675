#include "linear_solve.hpp"

#include "etss/field.hpp"

namespace etss::detail {

GfSolution solve_gf_system(GfSystem system,
                           const std::function<std::uint32_t(std::size_t)>& free_value) {
  const std::uint32_t p = system.p;
  const std::size_t cols = system.cols;
  const std::size_t nrows = system.rows.size();

  std::vector<std::size_t> pivot_row_of_col(cols, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < nrows; ++col) {
    std::size_t pivot = SIZE_MAX;
    for (std::size_t r = rank; r < nrows; ++r) {
      if (system.rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == SIZE_MAX) continue;
    std::swap(system.rows[rank], system.rows[pivot]);
    std::swap(system.rhs[rank], system.rhs[pivot]);

    const std::uint32_t inv = mod_inv(system.rows[rank][col], p);
    auto& prow = system.rows[rank];
    for (std::size_t c = col; c < cols; ++c) prow[c] = mod_mul(prow[c], inv, p);
    system.rhs[rank] = mod_mul(system.rhs[rank], inv, p);

    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == rank) continue;
      const std::uint32_t f = system.rows[r][col];
      if (f == 0) continue;
      auto& row = system.rows[r];
      for (std::size_t c = col; c < cols; ++c) {
        row[c] = mod_sub(row[c], mod_mul(f, prow[c], p), p);
      }
      system.rhs[r] = mod_sub(system.rhs[r], mod_mul(f, system.rhs[rank], p), p);
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }

  GfSolution sol;
  for (std::size_t r = rank; r < nrows; ++r) {
    if (system.rhs[r] != 0) return sol;  // 0 = nonzero: no solution
  }
  sol.consistent = true;
  sol.x.assign(cols, 0);
  sol.pinned.assign(cols, false);

  for (std::size_t col = 0; col < cols; ++col) {
    if (pivot_row_of_col[col] == SIZE_MAX) sol.x[col] = free_value(col) % p;
  }
  for (std::size_t col = 0; col < cols; ++col) {
    const std::size_t r = pivot_row_of_col[col];
    if (r == SIZE_MAX) continue;
    std::uint32_t v = system.rhs[r];
    bool depends_on_free = false;
    for (std::size_t c = col + 1; c < cols; ++c) {
      const std::uint32_t a = system.rows[r][c];
      if (a == 0) continue;
      if (pivot_row_of_col[c] == SIZE_MAX) depends_on_free = true;
      v = mod_sub(v, mod_mul(a, sol.x[c], p), p);
    }
    sol.x[col] = v;
    sol.pinned[col] = !depends_on_free;
  }
  return sol;
}

}  // namespace etss::detail
