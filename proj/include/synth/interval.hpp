#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace synth {

// Closed interval [lo, hi] with outward-rounded arithmetic. Every operation
// widens its result by one ulp per endpoint so that the exact real result is
// always contained, regardless of the rounding of the underlying doubles.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) { assert(!(l > h)); }

  static Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

namespace detail {
inline double down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace detail

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval(detail::down(a.lo + b.lo), detail::up(a.hi + b.hi));
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval(detail::down(a.lo - b.hi), detail::up(a.hi - b.lo));
}

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return Interval(detail::down(std::min(std::min(p1, p2), std::min(p3, p4))),
                  detail::up(std::max(std::max(p1, p2), std::max(p3, p4))));
}

inline Interval operator*(double s, const Interval& a) { return Interval(s) * a; }

// x^n for integer n >= 0; even powers of sign-straddling intervals are
// clamped at zero from below, which plain repeated multiplication loses.
inline Interval pow(const Interval& a, int n) {
  assert(n >= 0);
  if (n == 0) return Interval(1.0);
  if (n == 1) return a;
  if (n % 2 == 0) {
    const double m1 = std::fabs(a.lo), m2 = std::fabs(a.hi);
    const double hi = std::pow(std::max(m1, m2), n);
    double lo = 0.0;
    if (a.lo > 0.0 || a.hi < 0.0) lo = std::pow(std::min(m1, m2), n);
    return Interval(detail::down(lo), detail::up(hi));
  }
  return Interval(detail::down(std::pow(a.lo, n)), detail::up(std::pow(a.hi, n)));
}

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << "[" << iv.lo << ", " << iv.hi << "]";
}

// Axis-aligned box.
using Box = std::vector<Interval>;

inline double box_max_width(const Box& b) {
  double w = 0.0;
  for (const auto& iv : b) w = std::max(w, iv.width());
  return w;
}

inline int box_widest_dim(const Box& b) {
  int d = 0;
  for (int i = 1; i < (int)b.size(); ++i)
    if (b[i].width() > b[d].width()) d = i;
  return d;
}

inline std::pair<Box, Box> box_bisect(const Box& b, int dim) {
  Box left = b, right = b;
  const double m = b[dim].mid();
  left[dim] = Interval(b[dim].lo, m);
  right[dim] = Interval(m, b[dim].hi);
  return {left, right};
}

inline std::vector<double> box_center(const Box& b) {
  std::vector<double> c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = b[i].mid();
  return c;
}

}  // namespace synth
