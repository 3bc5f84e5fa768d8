#pragma once
// Exact truncated multivariate power series over GMP rationals.  These series
// are formal objects (several catalog series are everywhere divergent), so
// every operation is coefficient arithmetic under truncation; nothing is ever
// evaluated analytically.
//
// Representation: dense row-major tensor, up to a few variables, with an
// inclusive truncation order per variable.  All operations require operand
// variable lists to match (in order); results are truncated to the
// componentwise minimum order.

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace linlam {

using Rat = mpq_class;

inline mpz_class factorial_int(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
  return r;
}
inline mpz_class binomial_int(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  return r;
}

class TruncatedSeries {
 public:
  std::vector<std::string> vars;
  std::vector<int> ord;  // inclusive truncation order per variable
  std::vector<Rat> c;    // dense, row-major (last variable fastest)

  TruncatedSeries() = default;
  TruncatedSeries(std::vector<std::string> vs, std::vector<int> orders)
      : vars(std::move(vs)), ord(std::move(orders)) {
    if (vars.size() != ord.size()) throw std::invalid_argument("series: vars/orders mismatch");
    size_t n = 1;
    for (int o : ord) n *= (size_t)(o + 1);
    c.assign(n, Rat(0));
  }

  size_t dims() const { return vars.size(); }

  size_t index(const std::vector<int>& e) const {
    size_t idx = 0;
    for (size_t i = 0; i < ord.size(); ++i) {
      if (e[i] < 0 || e[i] > ord[i]) throw std::out_of_range("series: exponent out of range");
      idx = idx * (size_t)(ord[i] + 1) + (size_t)e[i];
    }
    return idx;
  }
  Rat& at(const std::vector<int>& e) { return c[index(e)]; }
  const Rat& at(const std::vector<int>& e) const { return c[index(e)]; }
  // coefficient, 0 outside the truncation box
  Rat coeff(const std::vector<int>& e) const {
    for (size_t i = 0; i < ord.size(); ++i)
      if (e[i] < 0 || e[i] > ord[i]) return Rat(0);
    return c[index(e)];
  }

  void decode(size_t idx, std::vector<int>& e) const {
    for (size_t i = ord.size(); i-- > 0;) {
      e[i] = (int)(idx % (size_t)(ord[i] + 1));
      idx /= (size_t)(ord[i] + 1);
    }
  }

  bool is_zero() const {
    for (const auto& x : c)
      if (x != 0) return false;
    return true;
  }

  int var_index(const std::string& v) const {
    for (size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == v) return (int)i;
    throw std::invalid_argument("series: unknown variable '" + v + "'");
  }

  void check_same_shape(const TruncatedSeries& o) const {
    if (vars != o.vars) throw std::invalid_argument("series: variable lists differ");
  }
};

// ---------------------------------------------------------------------------
// Ring operations

inline TruncatedSeries series_truncate(const TruncatedSeries& a, const std::vector<int>& orders) {
  TruncatedSeries r(a.vars, orders);
  std::vector<int> e(a.dims());
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.decode(i, e);
    r.c[i] = a.coeff(e);
  }
  return r;
}

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_same_shape(b);
  std::vector<int> orders(a.dims());
  for (size_t i = 0; i < orders.size(); ++i) orders[i] = std::min(a.ord[i], b.ord[i]);
  TruncatedSeries r(a.vars, orders);
  std::vector<int> e(a.dims());
  for (size_t i = 0; i < r.c.size(); ++i) {
    r.decode(i, e);
    r.c[i] = a.coeff(e) + b.coeff(e);
  }
  return r;
}

inline TruncatedSeries series_scale(const TruncatedSeries& a, const Rat& s) {
  TruncatedSeries r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

inline TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_add(a, series_scale(b, Rat(-1)));
}

inline TruncatedSeries series_multiply(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_same_shape(b);
  std::vector<int> orders(a.dims());
  for (size_t i = 0; i < orders.size(); ++i) orders[i] = std::min(a.ord[i], b.ord[i]);
  TruncatedSeries r(a.vars, orders);
  std::vector<int> ea(a.dims()), eb(b.dims()), ec(a.dims());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, ea);
    bool inside = true;
    for (size_t d = 0; d < ea.size(); ++d)
      if (ea[d] > orders[d]) inside = false;
    if (!inside) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      b.decode(j, eb);
      bool ok = true;
      for (size_t d = 0; d < ea.size(); ++d) {
        ec[d] = ea[d] + eb[d];
        if (ec[d] > orders[d]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      r.at(ec) += a.c[i] * b.c[j];
    }
  }
  return r;
}

// multiply by var^k (shifting; coefficients pushed past the order are dropped)
inline TruncatedSeries series_shift(const TruncatedSeries& a, const std::string& var, int k) {
  int vi = a.var_index(var);
  TruncatedSeries r(a.vars, a.ord);
  std::vector<int> e(a.dims());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, e);
    e[vi] += k;
    if (e[vi] < 0 || e[vi] > a.ord[vi]) continue;
    r.at(e) = a.c[i];
  }
  return r;
}

inline TruncatedSeries series_derive(const TruncatedSeries& a, const std::string& var) {
  int vi = a.var_index(var);
  TruncatedSeries r(a.vars, a.ord);
  std::vector<int> e(a.dims());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, e);
    if (e[vi] == 0) continue;
    Rat x = a.c[i] * e[vi];
    e[vi] -= 1;
    r.at(e) = x;
  }
  return r;
}

// substitute a rational constant for one variable (removing it)
inline TruncatedSeries series_eval_var(const TruncatedSeries& a, const std::string& var, const Rat& val) {
  int vi = a.var_index(var);
  std::vector<std::string> vars2;
  std::vector<int> ord2;
  for (size_t i = 0; i < a.dims(); ++i)
    if ((int)i != vi) {
      vars2.push_back(a.vars[i]);
      ord2.push_back(a.ord[i]);
    }
  TruncatedSeries r(vars2, ord2);
  std::vector<int> e(a.dims()), e2(vars2.size());
  std::vector<Rat> powers(a.ord[vi] + 1);
  powers[0] = 1;
  for (int p = 1; p <= a.ord[vi]; ++p) powers[p] = powers[p - 1] * val;
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, e);
    size_t k = 0;
    for (size_t d = 0; d < a.dims(); ++d)
      if ((int)d != vi) e2[k++] = e[d];
    r.at(e2) += a.c[i] * powers[e[vi]];
  }
  return r;
}

// slice: coefficient of var^k as a series in the remaining variables
inline TruncatedSeries series_slice(const TruncatedSeries& a, const std::string& var, int k) {
  int vi = a.var_index(var);
  std::vector<std::string> vars2;
  std::vector<int> ord2;
  for (size_t i = 0; i < a.dims(); ++i)
    if ((int)i != vi) {
      vars2.push_back(a.vars[i]);
      ord2.push_back(a.ord[i]);
    }
  TruncatedSeries r(vars2, ord2);
  if (k < 0 || k > a.ord[vi]) return r;
  std::vector<int> e(a.dims()), e2(vars2.size());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, e);
    if (e[vi] != k) continue;
    size_t p = 0;
    for (size_t d = 0; d < a.dims(); ++d)
      if ((int)d != vi) e2[p++] = e[d];
    r.at(e2) = a.c[i];
  }
  return r;
}

// add a variable (order o) to a series that doesn't have it, as exponent 0
inline TruncatedSeries series_extend(const TruncatedSeries& a, const std::string& var, int o,
                                     size_t position) {
  std::vector<std::string> vars2 = a.vars;
  std::vector<int> ord2 = a.ord;
  vars2.insert(vars2.begin() + position, var);
  ord2.insert(ord2.begin() + position, o);
  TruncatedSeries r(vars2, ord2);
  std::vector<int> e(a.dims()), e2(vars2.size());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, e);
    size_t p = 0;
    for (size_t d = 0; d < vars2.size(); ++d) e2[d] = d == position ? 0 : e[p++];
    r.at(e2) = a.c[i];
  }
  return r;
}

// constant / monomial helpers
inline TruncatedSeries series_const(const std::vector<std::string>& vars, const std::vector<int>& ord,
                                    const Rat& v) {
  TruncatedSeries r(vars, ord);
  r.c[0] = v;
  return r;
}
inline TruncatedSeries series_monomial(const std::vector<std::string>& vars, const std::vector<int>& ord,
                                       const std::vector<int>& e, const Rat& v) {
  TruncatedSeries r(vars, ord);
  r.at(e) = v;
  return r;
}

// ---------------------------------------------------------------------------
// Inverse, division, log, exp

// reciprocal of a series with unit constant term (any constant != 0 allowed)
inline TruncatedSeries series_inverse(const TruncatedSeries& a) {
  std::vector<int> zero(a.dims(), 0);
  Rat a0 = a.coeff(zero);
  if (a0 == 0) throw std::invalid_argument("series_inverse: zero constant term");
  // Newton-free: iterate r := (1 - (a - a0) r)/a0 by increasing total degree;
  // simpler: power-series geometric sum since (a/a0 - 1) is nilpotent under
  // truncation in total degree.
  TruncatedSeries x = series_scale(a, Rat(1) / a0);
  TruncatedSeries d = x;
  d.c[0] -= 1;  // d has zero constant term
  int total = std::accumulate(a.ord.begin(), a.ord.end(), 0);
  TruncatedSeries r = series_const(a.vars, a.ord, Rat(1));
  TruncatedSeries p = series_const(a.vars, a.ord, Rat(1));
  for (int m = 1; m <= total; ++m) {
    p = series_multiply(p, d);
    if (p.is_zero()) break;
    r = m % 2 ? series_sub(r, p) : series_add(r, p);
  }
  return series_scale(r, Rat(1) / a0);
}

inline TruncatedSeries series_divide(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_multiply(a, series_inverse(b));
}

// log of a series with constant term 1
inline TruncatedSeries series_log(const TruncatedSeries& a) {
  std::vector<int> zero(a.dims(), 0);
  if (a.coeff(zero) != 1) throw std::invalid_argument("series_log: constant term must be 1");
  TruncatedSeries d = a;
  d.c[0] -= 1;
  int total = std::accumulate(a.ord.begin(), a.ord.end(), 0);
  TruncatedSeries r(a.vars, a.ord);
  TruncatedSeries p = series_const(a.vars, a.ord, Rat(1));
  for (int m = 1; m <= total; ++m) {
    p = series_multiply(p, d);
    if (p.is_zero()) break;
    TruncatedSeries term = series_scale(p, Rat(m % 2 ? 1 : -1) / m);
    r = series_add(r, term);
  }
  return r;
}

// exp of a series with zero constant term
inline TruncatedSeries series_exp(const TruncatedSeries& a) {
  std::vector<int> zero(a.dims(), 0);
  if (a.coeff(zero) != 0) throw std::invalid_argument("series_exp: constant term must be 0");
  int total = std::accumulate(a.ord.begin(), a.ord.end(), 0);
  TruncatedSeries r = series_const(a.vars, a.ord, Rat(1));
  TruncatedSeries p = series_const(a.vars, a.ord, Rat(1));
  Rat f = 1;
  for (int m = 1; m <= total; ++m) {
    p = series_multiply(p, a);
    if (p.is_zero()) break;
    f /= m;
    r = series_add(r, series_scale(p, f));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Composition: univariate outer f (coefficients f[0..]) evaluated at a series
// with zero constant term, by Horner's rule.

inline TruncatedSeries series_compose(const std::vector<Rat>& outer, const TruncatedSeries& inner) {
  std::vector<int> zero(inner.dims(), 0);
  if (inner.coeff(zero) != 0)
    throw std::invalid_argument("series_compose: inner constant term must be 0");
  TruncatedSeries r(inner.vars, inner.ord);
  for (size_t m = outer.size(); m-- > 0;) {
    r = series_multiply(r, inner);
    r.c[0] += outer[m];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exponential Hadamard product and Borel transform
//
// In the shared variable h, (A ⊙ B) has n-th coefficient a_n b_n / n! where
// a_n, b_n are the exponential coefficients (n! times the stored ones); on
// stored coefficients this is s_c = s_a * s_b * n!.  Other variables of b
// ride along.  a must be univariate in h.

inline TruncatedSeries hadamard_exponential(const TruncatedSeries& a, const TruncatedSeries& b,
                                            const std::string& var) {
  if (a.dims() != 1 || a.vars[0] != var)
    throw std::invalid_argument("hadamard_exponential: first operand must be univariate in " + var);
  int vi = b.var_index(var);
  TruncatedSeries r(b.vars, b.ord);
  std::vector<int> e(b.dims());
  std::vector<Rat> scale(b.ord[vi] + 1, Rat(0));
  for (int n = 0; n <= b.ord[vi]; ++n)
    if (n <= a.ord[0]) scale[n] = a.c[n] * Rat(factorial_int(n));
  for (size_t i = 0; i < b.c.size(); ++i) {
    if (b.c[i] == 0) continue;
    b.decode(i, e);
    r.c[i] = b.c[i] * scale[e[vi]];
  }
  return r;
}

// Borel transform in `var`: coefficient of var^n divided by n!.
inline TruncatedSeries borel_transform(const TruncatedSeries& a, const std::string& var) {
  int vi = a.var_index(var);
  TruncatedSeries r(a.vars, a.ord);
  std::vector<int> e(a.dims());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, e);
    r.c[i] = a.c[i] / Rat(factorial_int(e[vi]));
  }
  return r;
}

// substitute var^2 -> newvar (all odd powers of var must vanish)
inline TruncatedSeries series_subst_square(const TruncatedSeries& a, const std::string& var,
                                           const std::string& newvar) {
  int vi = a.var_index(var);
  std::vector<std::string> vars2 = a.vars;
  vars2[vi] = newvar;
  std::vector<int> ord2 = a.ord;
  ord2[vi] = a.ord[vi] / 2;
  TruncatedSeries r(vars2, ord2);
  std::vector<int> e(a.dims());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    a.decode(i, e);
    if (e[vi] % 2) throw std::invalid_argument("series_subst_square: odd power present");
    e[vi] /= 2;
    r.at(e) = a.c[i];
  }
  return r;
}

}  // namespace linlam
