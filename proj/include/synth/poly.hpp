#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "synth/interval.hpp"

namespace synth {

// Variables come in three families: state x1..xn, input u1..um, noise w1..wk.
struct Var {
  enum class Kind : uint8_t { State, Input, Noise };
  Kind kind = Kind::State;
  int index = 0;  // zero-based

  auto operator<=>(const Var&) const = default;

  std::string name() const {
    const char* prefix = kind == Kind::State ? "x" : (kind == Kind::Input ? "u" : "w");
    return prefix + std::to_string(index + 1);
  }
  static Var state(int i) { return {Kind::State, i}; }
  static Var input(int i) { return {Kind::Input, i}; }
  static Var noise(int i) { return {Kind::Noise, i}; }
};

// Sorted exponent list; the empty monomial is the constant 1.
using Monomial = std::vector<std::pair<Var, int>>;

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    }
  }
  return out;
}

struct DegreeCapExceeded : std::runtime_error {
  explicit DegreeCapExceeded(int deg, int cap)
      : std::runtime_error("polynomial degree " + std::to_string(deg) +
                           " exceeds cap " + std::to_string(cap)) {}
};

// Independent Gaussian noise components w1..wk.
struct NoiseSpec {
  std::vector<double> mean;
  std::vector<double> stddev;

  int size() const { return (int)stddev.size(); }
  static NoiseSpec standard(int k) {
    NoiseSpec s;
    s.mean.assign(k, 0.0);
    s.stddev.assign(k, 1.0);
    return s;
  }
};

namespace detail {

// E[Z^j] for Z ~ N(0,1): 0 for odd j, (j-1)!! for even j.
inline double std_normal_moment(int j) {
  if (j % 2 == 1) return 0.0;
  double m = 1.0;
  for (int i = j - 1; i > 1; i -= 2) m *= i;
  return m;
}

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// E[(mu + sigma Z)^e]
inline double gaussian_power_moment(double mu, double sigma, int e) {
  double total = 0.0;
  for (int j = 0; j <= e; ++j)
    total += binom(e, j) * std::pow(mu, e - j) * std::pow(sigma, j) * std_normal_moment(j);
  return total;
}

}  // namespace detail

// Sparse multivariate polynomial with double coefficients. Zero coefficients
// are never stored; the empty polynomial is the zero polynomial.
class Poly {
 public:
  Poly() = default;

  static Poly constant(double c) {
    Poly p;
    if (c != 0.0) p.terms_[{}] = c;
    return p;
  }
  static Poly variable(Var v, int exp = 1) {
    Poly p;
    if (exp == 0) return constant(1.0);
    p.terms_[{{v, exp}}] = 1.0;
    return p;
  }

  const std::map<Monomial, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }

  void add_term(const Monomial& m, double c) {
    if (c == 0.0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_mul(ma, mb), ca * cb);
    return out;
  }

  Poly pow(int e) const {
    Poly out = constant(1.0);
    for (int i = 0; i < e; ++i) out = out * (*this);
    return out;
  }

  std::vector<Var> variables() const {
    std::vector<Var> vars;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    return vars;
  }

  int max_index(Var::Kind kind) const {
    int mx = -1;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m)
        if (v.kind == kind) mx = std::max(mx, v.index);
    return mx;
  }

  // Exact evaluation; every variable occurring in the polynomial must be
  // covered by the corresponding span.
  double eval(std::span<const double> x, std::span<const double> u = {},
              std::span<const double> w = {}) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = c;
      for (const auto& [v, e] : m) {
        const std::span<const double>& vals =
            v.kind == Var::Kind::State ? x : (v.kind == Var::Kind::Input ? u : w);
        if (v.index >= (int)vals.size())
          throw std::out_of_range("poly eval: missing assignment for " + v.name());
        t *= std::pow(vals[v.index], e);
      }
      total += t;
    }
    return total;
  }

  Poly derivative(Var v) const {
    Poly out;
    for (const auto& [m, c] : terms_)
      for (size_t i = 0; i < m.size(); ++i)
        if (m[i].first == v) {
          Monomial dm = m;
          if (dm[i].second == 1)
            dm.erase(dm.begin() + i);
          else
            dm[i].second -= 1;
          out.add_term(dm, c * m[i].second);
        }
    return out;
  }

  // General substitution; variables absent from the map are kept.
  Poly substitute(const std::map<Var, Poly>& subst, int degree_cap = 0) const {
    Poly out;
    // cache powers of each substituted polynomial
    std::map<Var, std::vector<Poly>> powers;
    for (const auto& [m, c] : terms_) {
      Poly term = constant(c);
      for (const auto& [v, e] : m) {
        auto it = subst.find(v);
        if (it == subst.end()) {
          term = term * variable(v, e);
        } else {
          auto& cache = powers[v];
          if (cache.empty()) cache.push_back(constant(1.0));
          while ((int)cache.size() <= e) cache.push_back(cache.back() * it->second);
          term = term * cache[e];
        }
      }
      out += term;
    }
    if (degree_cap > 0 && out.total_degree() > degree_cap)
      throw DegreeCapExceeded(out.total_degree(), degree_cap);
    return out;
  }

  // Naive interval magnitude over a state box: sum of |coefficient| times
  // the monomial's maximum absolute value. This is the conditioning scale
  // used to normalise verification margins.
  double magnitude(const Box& state_box) const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = std::fabs(c);
      for (const auto& [v, e] : m) {
        if (v.kind != Var::Kind::State || v.index >= (int)state_box.size())
          throw std::out_of_range("magnitude: non-state variable " + v.name());
        t *= std::pow(state_box[v.index].mag(), e);
      }
      s += t;
    }
    return s;
  }

 private:
  std::map<Monomial, double> terms_;
};

// B(f(x,u,w)): substitute each state variable of B by the corresponding
// dynamics component. dim(f) must cover every state variable of B.
inline Poly compose(const Poly& b, const std::vector<Poly>& f, int degree_cap = 8) {
  if (b.max_index(Var::Kind::State) >= (int)f.size())
    throw std::invalid_argument("compose: dynamics dimension smaller than state space of B");
  std::map<Var, Poly> subst;
  for (size_t i = 0; i < f.size(); ++i) subst[Var::state((int)i)] = f[i];
  return b.substitute(subst, degree_cap);
}

// Integrate out the noise variables: every monomial w^e is replaced by the
// e-th moment of the corresponding independent Gaussian. Exact.
inline Poly gaussian_expectation(const Poly& p, const NoiseSpec& spec) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    double factor = 1.0;
    Monomial rest;
    for (const auto& [v, e] : m) {
      if (v.kind == Var::Kind::Noise) {
        if (v.index >= spec.size())
          throw std::out_of_range("gaussian_expectation: no spec for " + v.name());
        factor *= detail::gaussian_power_moment(spec.mean[v.index], spec.stddev[v.index], e);
      } else {
        rest.emplace_back(v, e);
      }
    }
    out.add_term(rest, c * factor);
  }
  return out;
}

// Sound range enclosure of a state-only polynomial over a box. The
// polynomial is recentred at the box midpoint first (mean-value style
// tightening), evaluated monomial-wise in outward-rounded interval
// arithmetic, and finally inflated by a small multiple of the naive
// magnitude to absorb the rounding of the recentring itself.
inline Interval interval_enclosure(const Poly& p, const Box& box) {
  if (p.is_zero()) return Interval(0.0);
  std::map<Var, Poly> shift;
  Box centered(box.size());
  for (size_t i = 0; i < box.size(); ++i) {
    const double m = box[i].mid();
    shift[Var::state((int)i)] = Poly::variable(Var::state((int)i)) + Poly::constant(m);
    const double h = 0.5 * box[i].width();
    centered[i] = Interval(-h, h);
  }
  Poly q = p.substitute(shift);
  Interval acc(0.0);
  for (const auto& [m, c] : q.terms()) {
    Interval t(c);
    for (const auto& [v, e] : m) {
      if (v.kind != Var::Kind::State || v.index >= (int)box.size())
        throw std::out_of_range("interval_enclosure: non-state variable " + v.name());
      t = t * pow(centered[v.index], e);
    }
    acc = acc + t;
  }
  const double slack = 1e-14 * p.magnitude(box) + 1e-300;
  return Interval(acc.lo - slack, acc.hi + slack);
}

// Deterministic part g plus per-component additive noise: x'_i = g_i + s_i Z_i
// with independent standard normal Z_i. Returns E[B(x')] evaluated
// numerically; used on the simulation hot path where symbolic composition
// would be wasteful.
inline double expected_value_additive(const Poly& b, std::span<const double> g,
                                      std::span<const double> s) {
  double total = 0.0;
  for (const auto& [m, c] : b.terms()) {
    double t = c;
    for (const auto& [v, e] : m) {
      if (v.kind != Var::Kind::State || v.index >= (int)g.size())
        throw std::out_of_range("expected_value_additive: bad variable " + v.name());
      t *= detail::gaussian_power_moment(g[v.index], s[v.index], e);
    }
    total += t;
  }
  return total;
}

// Canonical display form: graded ordering, high degree first.
inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, double>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    const int da = monomial_degree(a.first), db = monomial_degree(b.first);
    if (da != db) return da > db;
    return a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const double a = std::fabs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", a);
    if (m.empty()) {
      os << buf;
      continue;
    }
    const bool unit = a == 1.0;
    if (!unit) os << buf;
    bool firstvar = true;
    for (const auto& [v, e] : m) {
      if (!unit || !firstvar) os << "*";
      os << v.name();
      if (e > 1) os << "^" << e;
      firstvar = false;
    }
  }
  return os.str();
}

}  // namespace synth
