#pragma once
#include <vector>

#include "mws/errors.hpp"

namespace mws {

// Dickman's rho on [0, u_max]: rho = 1 on [0, 1], u rho'(u) = -rho(u-1)
// beyond, solved by stepwise quadrature of rho(u) = rho(u0) - int_{u0}^{u}
// rho(t-1)/t dt on a grid of step h (snapped so that u = 1 is a node).
class DickmanTable {
 public:
  explicit DickmanTable(double h = 2.5e-4, double u_max = 20.0);

  double operator()(double u) const;  // OutOfRange outside [0, u_max]

  double step() const { return h_; }
  double u_max() const { return u_max_; }

 private:
  double h_;
  double u_max_;
  std::vector<double> vals_;
};

// Shared table at the default step.
double dickman_rho(double u);

}  // namespace mws
