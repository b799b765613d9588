#ifndef RADNER_LATTICE_HPP
#define RADNER_LATTICE_HPP

#include <cstddef>
#include <set>
#include <string>
#include <vector>

// Finite-dimensional Riesz lattice kernel: coordinatewise order operations on
// commodity bundles, order-unit norms, principal-ideal tests, sup/inf of
// linear functionals, constructive decomposition, and the classification
// table for the standard commodity-space families.

namespace radner {

/// A commodity bundle: a point of R^l with the coordinatewise order.
struct Bundle {
  std::vector<double> c;

  Bundle() = default;
  explicit Bundle(std::size_t dim, double fill = 0.0) : c(dim, fill) {}
  Bundle(std::initializer_list<double> init) : c(init) {}

  std::size_t dim() const { return c.size(); }
  double& operator[](std::size_t k) { return c[k]; }
  double operator[](std::size_t k) const { return c[k]; }
  bool operator==(const Bundle&) const = default;
};

/// A price (dual) vector; kept as a distinct type from Bundle because the
/// two play different roles even though both are coordinate sequences.
struct DualVector {
  std::vector<double> c;

  DualVector() = default;
  explicit DualVector(std::size_t dim, double fill = 0.0) : c(dim, fill) {}
  DualVector(std::initializer_list<double> init) : c(init) {}

  std::size_t dim() const { return c.size(); }
  double& operator[](std::size_t k) { return c[k]; }
  double operator[](std::size_t k) const { return c[k]; }
  bool operator==(const DualVector&) const = default;
};

// Coordinatewise arithmetic. Dimension mismatches throw std::invalid_argument.
Bundle add(const Bundle& a, const Bundle& b);
Bundle sub(const Bundle& a, const Bundle& b);
Bundle scale(double s, const Bundle& a);

/// Coordinatewise lattice supremum (join).
Bundle sup(const Bundle& a, const Bundle& b);
/// Coordinatewise lattice infimum (meet).
Bundle inf(const Bundle& a, const Bundle& b);
/// |a| = sup(a, -a).
Bundle abs(const Bundle& a);
/// Positive part a+ = sup(a, 0).
Bundle pos_part(const Bundle& a);
/// Negative part a- = sup(-a, 0); a = a+ - a- and inf(a+, a-) = 0.
Bundle neg_part(const Bundle& a);

/// Euclidean pairing <p, x>.
double dot(const DualVector& p, const Bundle& x);

/// True when every coordinate of a is >= -tol.
bool is_nonneg(const Bundle& a, double tol = 0.0);
/// True when a <= b + tol coordinatewise.
bool leq(const Bundle& a, const Bundle& b, double tol = 0.0);
/// max_k |a_k|.
double sup_norm(const Bundle& a);

/// Order-unit norm inf{ t > 0 : |y| <= t * unit } = max_k |y_k| / unit_k.
/// Throws std::invalid_argument if some unit_k <= 0 (not an order unit).
double am_norm(const Bundle& y, const Bundle& unit);

/// Membership of y in the principal ideal generated by x: in finite
/// dimension this is exactly a support-inclusion test, supp(y) within
/// supp(x). Exact zero tests; no tolerance.
bool ideal_membership(const Bundle& y, const Bundle& x);

/// Quasi-interior test for the positive cone of R^l: all coordinates
/// strictly positive. (In finite dimension quasi-interior and interior
/// points of the cone coincide; the classification table below is where
/// the two notions genuinely part ways.)
bool quasi_interior(const Bundle& x);

/// sup of the linear functionals f and g, evaluated at x >= 0:
///   <f v g, x> = sup{ <f,y> + <g,z> : y + z = x, y >= 0, z >= 0 }
///              = sum_k max(f_k, g_k) * x_k.
/// Throws std::invalid_argument when x has a negative coordinate.
double rk_sup(const DualVector& f, const DualVector& g, const Bundle& x);
/// inf of two functionals at x >= 0: sum_k min(f_k, g_k) * x_k.
double rk_inf(const DualVector& f, const DualVector& g, const Bundle& x);

/// Constructive decomposition: given z_1..z_m and caps y_1..y_m with
/// sum z_i <= sum y_i, produce zhat_1..zhat_m with sum zhat_i = sum z_i,
/// floor <= zhat_i <= y_i. Deterministic: each coordinate of the total is
/// distributed in index order, capping at y_i and flooring at floor.
/// Throws std::invalid_argument when the preconditions fail.
std::vector<Bundle> riesz_decompose(const std::vector<Bundle>& z,
                                    const std::vector<Bundle>& y,
                                    const Bundle& floor);

/// Commodity-space families covered by the classification table.
enum class SpaceFamily {
  Rn,            // finite-dimensional
  EllInfinity,   // bounded sequences
  LInfinity,     // essentially bounded functions
  CK,            // continuous functions on compact K
  EllP,          // p-summable sequences, 1 <= p < infinity
  LP,            // p-integrable functions, 1 <= p < infinity
  MKUncountable, // countably additive measures on uncountable compact K
};

struct SpaceDescriptor {
  SpaceFamily family = SpaceFamily::Rn;
  /// Exponent for EllP / LP; ignored otherwise.
  double p = 0.0;
};

/// Which positive-cone structure a family has, and which of the tool's
/// theorem suites and remarks apply to economies modeled on it.
struct SpaceClassification {
  bool has_interior_point = false;
  bool has_quasi_interior_point = false;
  std::set<int> theorems;
  std::set<int> remarks;
};

/// Classify a commodity-space family. Throws std::invalid_argument for a
/// missing or out-of-range exponent on EllP/LP.
SpaceClassification classify_space(const SpaceDescriptor& d);

/// Parse a family name as used by the command line ("Rn", "ell_infinity",
/// "L_infinity", "C_K", "ell_p", "L_p", "M_K"); throws on unknown names.
SpaceFamily parse_space_family(const std::string& name);

/// Human-readable one-line rendering used by the chart command.
std::string format_classification(const SpaceClassification& c);

} // namespace radner

#endif
