#include "posgeo/jet.hpp"

#include <algorithm>
#include <cmath>

#include "posgeo/errors.hpp"

namespace posgeo {

namespace {

int check_order(int order) {
  if (order < 0 || order > Jet::kMaxOrder)
    throw Error("jet order must be in [0, 3], got " + std::to_string(order));
  return order;
}

}  // namespace

Jet::Jet(int nvars, int order) : n_(nvars), order_(check_order(order)) {
  if (order_ >= 1) d1_.assign(n_, 0.0);
  if (order_ >= 2) d2_.assign(static_cast<size_t>(n_) * n_, 0.0);
  if (order_ >= 3) d3_.assign(static_cast<size_t>(n_) * n_ * n_, 0.0);
}

Jet::Jet(int nvars, int order, double value) : Jet(nvars, order) { val_ = value; }

Jet Jet::variable(int nvars, int order, int index, double value) {
  Jet j(nvars, order, value);
  if (order >= 1) j.d1_[index] = 1.0;
  return j;
}

void Jet::set_d2(int i, int j, double v) {
  d2_[i * n_ + j] = v;
  d2_[j * n_ + i] = v;
}

void Jet::set_d3(int i, int j, int k, double v) {
  const int n = n_;
  d3_[(i * n + j) * n + k] = v;
  d3_[(i * n + k) * n + j] = v;
  d3_[(j * n + i) * n + k] = v;
  d3_[(j * n + k) * n + i] = v;
  d3_[(k * n + i) * n + j] = v;
  d3_[(k * n + j) * n + i] = v;
}

Jet Jet::truncated(int new_order) const {
  Jet r(n_, std::min(order_, check_order(new_order)), val_);
  if (r.order_ >= 1) r.d1_ = d1_;
  if (r.order_ >= 2) r.d2_ = d2_;
  if (r.order_ >= 3) r.d3_ = d3_;
  return r;
}

Jet Jet::derivative(int i) const {
  if (order_ < 1)
    throw OrderTooLow("cannot differentiate a jet of order 0");
  Jet r(n_, order_ - 1, d1_[i]);
  const int n = n_;
  if (r.order_ >= 1)
    for (int j = 0; j < n; ++j) r.d1_[j] = d2(i, j);
  if (r.order_ >= 2)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r.d2_[j * n + k] = d3(i, j, k);
  return r;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r.val_ = -r.val_;
  for (double& x : r.d1_) x = -x;
  for (double& x : r.d2_) x = -x;
  for (double& x : r.d3_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  val_ += rhs.val_;
  if (order_ >= 1)
    for (size_t i = 0; i < d1_.size(); ++i) d1_[i] += rhs.d1_[i];
  if (order_ >= 2)
    for (size_t i = 0; i < d2_.size(); ++i) d2_[i] += rhs.d2_[i];
  if (order_ >= 3)
    for (size_t i = 0; i < d3_.size(); ++i) d3_[i] += rhs.d3_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  order_ = std::min(order_, rhs.order_);
  val_ -= rhs.val_;
  if (order_ >= 1)
    for (size_t i = 0; i < d1_.size(); ++i) d1_[i] -= rhs.d1_[i];
  if (order_ >= 2)
    for (size_t i = 0; i < d2_.size(); ++i) d2_[i] -= rhs.d2_[i];
  if (order_ >= 3)
    for (size_t i = 0; i < d3_.size(); ++i) d3_[i] -= rhs.d3_[i];
  return *this;
}

Jet& Jet::operator+=(double s) {
  val_ += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  val_ -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  val_ *= s;
  for (double& x : d1_) x *= s;
  for (double& x : d2_) x *= s;
  for (double& x : d3_) x *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  if (s == 0.0) throw EvalError("division by zero");
  return (*this) *= (1.0 / s);
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  r += b;
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a;
  r -= b;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  const int n = a.n_;
  Jet r(n, std::min(a.order_, b.order_));
  r.val_ = a.val_ * b.val_;
  if (r.order_ >= 1)
    for (int i = 0; i < n; ++i)
      r.d1_[i] = a.d1_[i] * b.val_ + a.val_ * b.d1_[i];
  if (r.order_ >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.d2_[i * n + j] = a.d2(i, j) * b.val_ + a.d1_[i] * b.d1_[j] +
                           a.d1_[j] * b.d1_[i] + a.val_ * b.d2(i, j);
  if (r.order_ >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          r.d3_[(i * n + j) * n + k] =
              a.d3(i, j, k) * b.val_ + a.val_ * b.d3(i, j, k) +
              a.d2(i, j) * b.d1_[k] + a.d2(i, k) * b.d1_[j] +
              a.d2(j, k) * b.d1_[i] + a.d1_[i] * b.d2(j, k) +
              a.d1_[j] * b.d2(i, k) + a.d1_[k] * b.d2(i, j);
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

Jet operator+(const Jet& a, double s) {
  Jet r = a;
  r.val_ += s;
  return r;
}
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) {
  Jet r = -a;
  r.val_ += s;
  return r;
}
Jet operator*(const Jet& a, double s) {
  Jet r = a;
  r *= s;
  return r;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) {
  Jet r = a;
  r /= s;
  return r;
}
Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

Jet Jet::compose(double c0, double c1, double c2, double c3) const {
  const int n = n_;
  Jet r(n, order_);
  r.val_ = c0;
  if (order_ >= 1)
    for (int i = 0; i < n; ++i) r.d1_[i] = c1 * d1_[i];
  if (order_ >= 2)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.d2_[i * n + j] = c2 * d1_[i] * d1_[j] + c1 * d2(i, j);
  if (order_ >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          r.d3_[(i * n + j) * n + k] =
              c3 * d1_[i] * d1_[j] * d1_[k] +
              c2 * (d2(i, j) * d1_[k] + d2(i, k) * d1_[j] + d2(j, k) * d1_[i]) +
              c1 * d3(i, j, k);
  return r;
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.val_), c = std::cos(a.val_);
  return a.compose(s, c, -s, -c);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.val_), c = std::cos(a.val_);
  return a.compose(c, -s, -c, s);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.val_);
  return a.compose(e, e, e, e);
}

Jet log(const Jet& a) {
  const double v = a.val_;
  if (v <= 0.0) throw EvalError("log of non-positive value");
  return a.compose(std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet sqrt(const Jet& a) {
  const double v = a.val_;
  if (v < 0.0) throw EvalError("sqrt of negative value");
  if (v == 0.0 && a.order_ >= 1)
    throw EvalError("sqrt not differentiable at zero");
  const double s = std::sqrt(v);
  if (a.order_ == 0) return Jet(a.n_, 0, s);
  return a.compose(s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v));
}

Jet reciprocal(const Jet& a) {
  const double v = a.val_;
  if (v == 0.0) throw EvalError("division by zero");
  const double u = 1.0 / v;
  return a.compose(u, -u * u, 2.0 * u * u * u, -6.0 * u * u * u * u);
}

Jet ipow(const Jet& a, long long e) {
  if (e < 0) return reciprocal(ipow(a, -e));
  Jet result(a.nvars(), a.order(), 1.0);
  Jet base = a;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Jet pow(const Jet& a, double p) {
  const double rp = std::round(p);
  if (rp == p && std::abs(p) <= 64.0) return ipow(a, static_cast<long long>(rp));
  const double v = a.val_;
  if (v <= 0.0)
    throw EvalError("pow of non-positive base with non-integer exponent");
  const double c0 = std::pow(v, p);
  const double c1 = p * std::pow(v, p - 1.0);
  const double c2 = p * (p - 1.0) * std::pow(v, p - 2.0);
  const double c3 = p * (p - 1.0) * (p - 2.0) * std::pow(v, p - 3.0);
  return a.compose(c0, c1, c2, c3);
}

}  // namespace posgeo
