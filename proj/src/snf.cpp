#include "mws/snf.hpp"

#include <cassert>
#include <cstdlib>

namespace mws {

namespace {

struct Work {
  std::vector<std::vector<mpz_class>> R, V, Vinv;
  size_t rows, cols;

  void swap_rows(size_t i, size_t j) { std::swap(R[i], R[j]); }
  void swap_cols(size_t i, size_t j) {
    for (size_t r = 0; r < rows; ++r) std::swap(R[r][i], R[r][j]);
    for (size_t r = 0; r < cols; ++r) std::swap(V[r][i], V[r][j]);
    std::swap(Vinv[i], Vinv[j]);
  }
  // row i -= q * row k
  void row_sub(size_t i, size_t k, const mpz_class& q) {
    for (size_t c = 0; c < cols; ++c) R[i][c] -= q * R[k][c];
  }
  // col j -= q * col k  (V gets the same op; Vinv the inverse op on rows)
  void col_sub(size_t j, size_t k, const mpz_class& q) {
    for (size_t r = 0; r < rows; ++r) R[r][j] -= q * R[r][k];
    for (size_t r = 0; r < cols; ++r) V[r][j] -= q * V[r][k];
    for (size_t c = 0; c < cols; ++c) Vinv[k][c] += q * Vinv[j][c];
  }
  void negate_col(size_t j) {
    for (size_t r = 0; r < rows; ++r) R[r][j] = -R[r][j];
    for (size_t r = 0; r < cols; ++r) V[r][j] = -V[r][j];
    for (size_t c = 0; c < cols; ++c) Vinv[j][c] = -Vinv[j][c];
  }
};

}  // namespace

SnfResult smith_normal_form(std::vector<std::vector<mpz_class>> Rin) {
  size_t m = Rin.size();
  size_t n = m == 0 ? 0 : Rin[0].size();
  Work w;
  w.R = std::move(Rin);
  w.rows = m;
  w.cols = n;
  w.V.assign(n, std::vector<mpz_class>(n, 0));
  w.Vinv.assign(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) w.V[i][i] = w.Vinv[i][i] = 1;

  size_t t = std::min(m, n);
  for (size_t k = 0; k < t; ++k) {
    for (;;) {
      // find the entry of least nonzero magnitude in the trailing block
      size_t pi = k, pj = k;
      bool found = false;
      mpz_class best;
      for (size_t i = k; i < m; ++i)
        for (size_t j = k; j < n; ++j) {
          if (w.R[i][j] == 0) continue;
          mpz_class a = abs(w.R[i][j]);
          if (!found || a < best) {
            best = a;
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) goto done;  // trailing block all zero
      if (pi != k) w.swap_rows(pi, k);
      if (pj != k) w.swap_cols(pj, k);
      if (w.R[k][k] < 0) w.negate_col(k);

      bool dirty = false;
      for (size_t i = k + 1; i < m; ++i) {
        if (w.R[i][k] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.R[i][k].get_mpz_t(), w.R[k][k].get_mpz_t());
        w.row_sub(i, k, q);
        if (w.R[i][k] != 0) dirty = true;  // leftover remainder; repick pivot
      }
      for (size_t j = k + 1; j < n; ++j) {
        if (w.R[k][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.R[k][j].get_mpz_t(), w.R[k][k].get_mpz_t());
        w.col_sub(j, k, q);
        if (w.R[k][j] != 0) dirty = true;
      }
      if (dirty) continue;
      // check the pivot divides the whole trailing block; if not, fold the
      // offending column in and rerun the elimination at this k
      bool fixed = true;
      for (size_t i = k + 1; i < m && fixed; ++i)
        for (size_t j = k + 1; j < n && fixed; ++j)
          if (w.R[i][j] % w.R[k][k] != 0) {
            w.col_sub(k, j, mpz_class(-1));  // col k += col j
            fixed = false;
          }
      if (fixed) break;
    }
  }
done:
  SnfResult out;
  out.diag.resize(t);
  for (size_t k = 0; k < t; ++k) out.diag[k] = w.R[k][k];
  out.V = std::move(w.V);
  out.Vinv = std::move(w.Vinv);
#ifndef NDEBUG
  for (size_t k = 0; k + 1 < t; ++k)
    assert(out.diag[k + 1] == 0 || (out.diag[k] != 0 && out.diag[k + 1] % out.diag[k] == 0) ||
           (out.diag[k] == 0 && out.diag[k + 1] == 0));
#endif
  return out;
}

}  // namespace mws
