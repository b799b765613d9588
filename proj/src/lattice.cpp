#include "radner/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radner {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(os.str());
  }
}

} // namespace

Bundle add(const Bundle& a, const Bundle& b) {
  require_same_dim(a.dim(), b.dim(), "add");
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = a[k] + b[k];
  return r;
}

Bundle sub(const Bundle& a, const Bundle& b) {
  require_same_dim(a.dim(), b.dim(), "sub");
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = a[k] - b[k];
  return r;
}

Bundle scale(double s, const Bundle& a) {
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = s * a[k];
  return r;
}

Bundle sup(const Bundle& a, const Bundle& b) {
  require_same_dim(a.dim(), b.dim(), "sup");
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = std::max(a[k], b[k]);
  return r;
}

Bundle inf(const Bundle& a, const Bundle& b) {
  require_same_dim(a.dim(), b.dim(), "inf");
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = std::min(a[k], b[k]);
  return r;
}

Bundle abs(const Bundle& a) {
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = std::fabs(a[k]);
  return r;
}

Bundle pos_part(const Bundle& a) {
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = std::max(a[k], 0.0);
  return r;
}

Bundle neg_part(const Bundle& a) {
  Bundle r(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) r[k] = std::max(-a[k], 0.0);
  return r;
}

double dot(const DualVector& p, const Bundle& x) {
  require_same_dim(p.dim(), x.dim(), "dot");
  double s = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) s += p[k] * x[k];
  return s;
}

bool is_nonneg(const Bundle& a, double tol) {
  for (double v : a.c)
    if (v < -tol) return false;
  return true;
}

bool leq(const Bundle& a, const Bundle& b, double tol) {
  require_same_dim(a.dim(), b.dim(), "leq");
  for (std::size_t k = 0; k < a.dim(); ++k)
    if (a[k] > b[k] + tol) return false;
  return true;
}

double sup_norm(const Bundle& a) {
  double m = 0.0;
  for (double v : a.c) m = std::max(m, std::fabs(v));
  return m;
}

double am_norm(const Bundle& y, const Bundle& unit) {
  require_same_dim(y.dim(), unit.dim(), "am_norm");
  double m = 0.0;
  for (std::size_t k = 0; k < y.dim(); ++k) {
    if (!(unit[k] > 0.0))
      throw std::invalid_argument("am_norm: not an order unit (coordinate <= 0)");
    m = std::max(m, std::fabs(y[k]) / unit[k]);
  }
  return m;
}

bool ideal_membership(const Bundle& y, const Bundle& x) {
  require_same_dim(y.dim(), x.dim(), "ideal_membership");
  for (std::size_t k = 0; k < y.dim(); ++k)
    if (y[k] != 0.0 && x[k] == 0.0) return false;
  return true;
}

bool quasi_interior(const Bundle& x) {
  for (double v : x.c)
    if (!(v > 0.0)) return false;
  return !x.c.empty();
}

namespace {

double rk_extreme(const DualVector& f, const DualVector& g, const Bundle& x,
                  bool take_sup) {
  require_same_dim(f.dim(), g.dim(), "rk_sup/rk_inf");
  require_same_dim(f.dim(), x.dim(), "rk_sup/rk_inf");
  if (!is_nonneg(x))
    throw std::invalid_argument("rk_sup/rk_inf: x must lie in the positive cone");
  double s = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) {
    double v = take_sup ? std::max(f[k], g[k]) : std::min(f[k], g[k]);
    s += v * x[k];
  }
  return s;
}

} // namespace

double rk_sup(const DualVector& f, const DualVector& g, const Bundle& x) {
  return rk_extreme(f, g, x, true);
}

double rk_inf(const DualVector& f, const DualVector& g, const Bundle& x) {
  return rk_extreme(f, g, x, false);
}

std::vector<Bundle> riesz_decompose(const std::vector<Bundle>& z,
                                    const std::vector<Bundle>& y,
                                    const Bundle& floor) {
  if (z.empty() || z.size() != y.size())
    throw std::invalid_argument("riesz_decompose: need matching nonempty z and y");
  const std::size_t m = z.size();
  const std::size_t dim = z[0].dim();
  for (const Bundle& b : z) require_same_dim(b.dim(), dim, "riesz_decompose");
  for (const Bundle& b : y) require_same_dim(b.dim(), dim, "riesz_decompose");
  require_same_dim(floor.dim(), dim, "riesz_decompose");

  for (std::size_t i = 0; i < m; ++i)
    if (!leq(floor, y[i]))
      throw std::invalid_argument("riesz_decompose: floor exceeds a cap y_i");

  std::vector<Bundle> out(m, Bundle(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    double total = 0.0, cap_total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      total += z[i][k];
      cap_total += y[i][k];
    }
    if (total > cap_total + 1e-12 * std::max(1.0, std::fabs(cap_total)))
      throw std::invalid_argument("riesz_decompose: totals exceed caps");
    if (total < m * floor[k] - 1e-12 * std::max(1.0, std::fabs(total)))
      throw std::invalid_argument("riesz_decompose: totals below the floors");

    // Water-filling in index order: give agent i as much as its cap allows
    // while reserving the floor for everyone after it. The per-coordinate
    // sum is preserved exactly by assigning the final remainder last.
    double rem = total;
    for (std::size_t i = 0; i < m; ++i) {
      double reserve = floor[k] * static_cast<double>(m - 1 - i);
      double take = std::min(y[i][k], rem - reserve);
      take = std::max(take, floor[k]);
      if (i + 1 == m) take = rem; // exact: last agent absorbs rounding
      out[i][k] = take;
      rem -= take;
    }
  }
  return out;
}

SpaceClassification classify_space(const SpaceDescriptor& d) {
  SpaceClassification c;
  switch (d.family) {
    case SpaceFamily::Rn:
    case SpaceFamily::EllInfinity:
    case SpaceFamily::LInfinity:
    case SpaceFamily::CK:
      c.has_interior_point = true;
      c.has_quasi_interior_point = true;
      c.theorems = {1, 4, 5, 6};
      c.remarks = {};
      return c;
    case SpaceFamily::EllP:
    case SpaceFamily::LP:
      if (!(d.p >= 1.0) || !std::isfinite(d.p))
        throw std::invalid_argument("classify_space: exponent p must satisfy 1 <= p < infinity");
      c.has_interior_point = false;
      c.has_quasi_interior_point = true;
      c.theorems = {2, 4};
      c.remarks = {4, 6};
      return c;
    case SpaceFamily::MKUncountable:
      c.has_interior_point = false;
      c.has_quasi_interior_point = false;
      c.theorems = {3, 4};
      c.remarks = {4, 6};
      return c;
  }
  throw std::invalid_argument("classify_space: unknown family");
}

SpaceFamily parse_space_family(const std::string& name) {
  if (name == "Rn" || name == "rn") return SpaceFamily::Rn;
  if (name == "ell_infinity") return SpaceFamily::EllInfinity;
  if (name == "L_infinity") return SpaceFamily::LInfinity;
  if (name == "C_K") return SpaceFamily::CK;
  if (name == "ell_p") return SpaceFamily::EllP;
  if (name == "L_p") return SpaceFamily::LP;
  if (name == "M_K") return SpaceFamily::MKUncountable;
  throw std::invalid_argument("unknown space family: " + name);
}

std::string format_classification(const SpaceClassification& c) {
  std::ostringstream os;
  os << "interior: " << (c.has_interior_point ? "yes" : "no")
     << ", quasi-interior: " << (c.has_quasi_interior_point ? "yes" : "no");
  os << ", theorems ";
  bool first = true;
  for (int t : c.theorems) {
    if (!first) os << ",";
    os << t;
    first = false;
  }
  if (!c.remarks.empty()) {
    os << ", remarks ";
    first = true;
    for (int r : c.remarks) {
      if (!first) os << ",";
      os << r;
      first = false;
    }
  }
  return os.str();
}

} // namespace radner
