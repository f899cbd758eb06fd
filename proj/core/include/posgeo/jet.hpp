#pragma once

#include <vector>

namespace posgeo {

/// Truncated multivariate Taylor polynomial in `nvars` chart variables,
/// carrying the value and all partial derivatives up to `order` (at most 3).
///
/// Derivative tensors are stored dense with full index symmetry, so
/// d2(i,j) == d2(j,i) and d3 is symmetric under every index permutation by
/// construction. Arithmetic propagates derivatives exactly (Leibniz and chain
/// rules), which is what makes every downstream residual a measurement of the
/// geometry rather than of a difference scheme.
class Jet {
 public:
  static constexpr int kMaxOrder = 3;

  Jet() = default;
  Jet(int nvars, int order);                // zero jet
  Jet(int nvars, int order, double value);  // constant jet

  /// Seed jet for the chart variable `index`: value plus unit first
  /// derivative in slot `index`.
  static Jet variable(int nvars, int order, int index, double value);

  int nvars() const { return n_; }
  int order() const { return order_; }

  double value() const { return val_; }
  double d1(int i) const { return d1_[i]; }
  double d2(int i, int j) const { return d2_[i * n_ + j]; }
  double d3(int i, int j, int k) const { return d3_[(i * n_ + j) * n_ + k]; }

  double& value() { return val_; }
  void set_d1(int i, double v) { d1_[i] = v; }
  void set_d2(int i, int j, double v);  // writes all symmetric slots
  void set_d3(int i, int j, int k, double v);

  /// Copy with derivatives above `new_order` dropped.
  Jet truncated(int new_order) const;

  /// Exact partial derivative with respect to variable `i`; the result has
  /// order reduced by one.
  Jet derivative(int i) const;

  Jet operator-() const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator/(const Jet& a, double s);
  friend Jet operator/(double s, const Jet& a);

  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);        // requires a.value() > 0
  friend Jet sqrt(const Jet& a);       // requires a.value() > 0
  friend Jet reciprocal(const Jet& a); // requires a.value() != 0
  friend Jet pow(const Jet& a, double p);

 private:
  // Univariate chain rule: given c_k = g^(k)(value()), returns the jet of
  // g(*this) up to the stored order.
  Jet compose(double c0, double c1, double c2, double c3) const;

  int n_ = 0;
  int order_ = 0;
  double val_ = 0.0;
  std::vector<double> d1_;  // n
  std::vector<double> d2_;  // n*n, symmetric
  std::vector<double> d3_;  // n*n*n, fully symmetric
};

/// Integer power by repeated squaring; valid for any base (including
/// negative), with negative exponents handled through reciprocal.
Jet ipow(const Jet& a, long long e);

}  // namespace posgeo
