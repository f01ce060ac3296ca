#pragma once
#include <gmpxx.h>

#include <vector>

namespace mws {

// Smith normal form of an integer matrix R: U R V = D with U, V
// unimodular and D diagonal with d_1 | d_2 | ...  Only V and V^{-1} are
// tracked (row operations need no bookkeeping for our use: coordinates
// transform by V, new generators by V^{-1}).
struct SnfResult {
  std::vector<mpz_class> diag;                  // nonnegative, divisibility chain
  std::vector<std::vector<mpz_class>> V, Vinv;  // n x n
};

SnfResult smith_normal_form(std::vector<std::vector<mpz_class>> R);

}  // namespace mws
