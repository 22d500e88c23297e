#pragma once

#include <iosfwd>
#include <vector>

#include "psmooth/util.hpp"

namespace psmooth {

// rho(u) on a uniform grid, solved from u rho'(u) = -rho(u-1) with rho = 1
// on [0,1]; panel quadrature and interpolation never straddle the integer
// lag points where derivatives jump
class DickmanTable {
 public:
  static constexpr int kPerUnit = 1024;  // grid points per unit interval

  static DickmanTable build(double u_max = 10.0);

  double rho(double u) const;
  double u_max() const { return (double)(v_.size() - 1) / kPerUnit; }
  const std::vector<double>& values() const { return v_; }

  void export_csv(std::ostream& out) const;
  static DickmanTable import_csv(std::istream& in);

 private:
  std::vector<double> v_;  // v_[i] = rho(i / kPerUnit)
  double interp(double x) const;  // x in grid units
};

// shared table up to u = 10
double dickman_rho(double u);

}  // namespace psmooth
