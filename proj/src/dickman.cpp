#include "psmooth/dickman.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace psmooth {

namespace {

// cubic Lagrange through 4 equally spaced points, evaluated at offset x from
// the first stencil point
double lagrange4(const double* y, double x) {
  double w0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  double w1 = x * (x - 2) * (x - 3) / 2.0;
  double w2 = -x * (x - 1) * (x - 3) / 2.0;
  double w3 = x * (x - 1) * (x - 2) / 6.0;
  return w0 * y[0] + w1 * y[1] + w2 * y[2] + w3 * y[3];
}

}  // namespace

double DickmanTable::interp(double x) const {
  long j = (long)x;
  if ((double)j == x && j >= 0 && j < (long)v_.size()) return v_[(size_t)j];
  // stencil confined to the unit segment containing x
  long seg = j / kPerUnit;
  long lo = seg * kPerUnit;
  long hi = std::min<long>((seg + 1) * kPerUnit, (long)v_.size() - 1);
  long s = std::max(lo, std::min(j - 1, hi - 3));
  return lagrange4(&v_[(size_t)s], x - (double)s);
}

DickmanTable DickmanTable::build(double u_max) {
  if (u_max < 1 || u_max > 10000) throw domain_error("rho table range must lie in [1, 10000]");
  size_t n = (size_t)std::ceil(u_max * kPerUnit) + 1;
  DickmanTable t;
  t.v_.assign(n, 1.0);
  const double h = 1.0 / kPerUnit;
  for (size_t i = kPerUnit; i + 1 < n; ++i) {
    double a = (double)i * h;
    double b = a + h;
    double mid = a + h / 2;
    double ga = t.v_[i - kPerUnit] / a;
    double gm = t.interp((double)i - kPerUnit + 0.5) / mid;
    double gb = t.v_[i + 1 - kPerUnit] / b;
    t.v_[i + 1] = t.v_[i] - h / 6.0 * (ga + 4.0 * gm + gb);
  }
  return t;
}

double DickmanTable::rho(double u) const {
  if (std::isnan(u) || u < 0) throw domain_error("rho: u must be >= 0");
  if (u <= 1) return 1.0;
  double x = u * kPerUnit;
  if (x > (double)(v_.size() - 1) + 1e-9) throw domain_error("rho: u beyond table range");
  if (x > (double)(v_.size() - 1)) x = (double)(v_.size() - 1);
  return interp(x);
}

void DickmanTable::export_csv(std::ostream& out) const {
  out << "u,rho\n";
  char buf[64];
  for (size_t i = 0; i < v_.size(); ++i) {
    double u = (double)i / kPerUnit;
    std::snprintf(buf, sizeof buf, "%.*g,%.12g\n", 12, u, v_[i]);
    out << buf;
  }
}

DickmanTable DickmanTable::import_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("u,rho", 0) != 0)
    throw domain_error("rho table import: missing header");
  DickmanTable t;
  size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string us, rs;
    if (!std::getline(ss, us, ',') || !std::getline(ss, rs))
      throw domain_error("rho table import: bad row '" + line + "'");
    double u = std::stod(us), r = std::stod(rs);
    if (std::abs(u - (double)i / kPerUnit) > 1e-9)
      throw domain_error("rho table import: grid is not uniform at row " + std::to_string(i));
    if (r <= 0 || r > 1) throw domain_error("rho table import: value out of range");
    if (!t.v_.empty() && r > t.v_.back() + 1e-15 && i > (size_t)kPerUnit)
      throw domain_error("rho table import: values must be non-increasing");
    t.v_.push_back(r);
    ++i;
  }
  if (t.v_.size() < (size_t)kPerUnit + 2) throw domain_error("rho table import: too few rows");
  return t;
}

double dickman_rho(double u) {
  static const DickmanTable table = DickmanTable::build(10.0);
  return table.rho(u);
}

}  // namespace psmooth
