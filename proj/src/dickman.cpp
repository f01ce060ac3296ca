#include "mws/dickman.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace mws {

DickmanTable::DickmanTable(double h, double u_max) {
  if (!(h > 0) || h > 1e-3) throw OutOfRange("grid step must lie in (0, 1e-3]");
  if (!(u_max >= 1)) throw OutOfRange("u_max must be >= 1");
  // snap the step so that u = 1 is exactly a grid node (rho has a kink
  // there; keeping kinks on nodes preserves the trapezoid rate)
  std::size_t per = (std::size_t)std::ceil(1.0 / h);
  h_ = 1.0 / (double)per;
  std::size_t n = (std::size_t)std::ceil(u_max / h_);
  u_max_ = (double)n * h_;
  vals_.assign(n + 1, 1.0);

  // Work with the integral form u rho(u) = int_{u-1}^{u} rho(t) dt and
  // carry the window integral: sliding by h trades the leftmost strip for
  // the rightmost, with the unknown rho_k inside the new strip.  Every
  // term is positive and of comparable scale, so rho stays positive all
  // the way down to ~1e-29 (a direct quadrature of rho' loses to absolute
  // rounding noise many orders of magnitude earlier).
  double carry = 1.0;  // u rho(u) at u = 1: int_0^1 1 dt
  for (std::size_t k = per + 1; k <= n; ++k) {
    double u = (double)k * h_;
    double left = 0.5 * h_ * (vals_[k - 1 - per] + vals_[k - per]);
    double num = carry + 0.5 * h_ * vals_[k - 1] - left;
    vals_[k] = num / (u - 0.5 * h_);
    carry = num + 0.5 * h_ * vals_[k];  // = u rho(u) at the new node
  }
}

double DickmanTable::operator()(double u) const {
  if (!(u >= 0) || u > u_max_)
    throw OutOfRange("rho(u) tabulated only on [0, " + std::to_string(u_max_) + "]");
  double x = u / h_;
  std::size_t i = (std::size_t)x;
  if (i >= vals_.size() - 1) return vals_.back();
  double t = x - (double)i;
  return vals_[i] * (1.0 - t) + vals_[i + 1] * t;
}

double dickman_rho(double u) {
  static const DickmanTable table;
  return table(u);
}

}  // namespace mws
