#pragma once
// Symbolic layer: exact polynomials in f, v, z with integer coefficients,
// and the recursively-defined rational functions W_N = h_N / g^{2N-1} whose
// substitution f = T_sub(z,v) yields the v-derivatives of T_sub:
//
//     W_1 = (-f^3 v^2 z - f z^2 + f^2) / g,
//     g   = f^2 v^3 z - f^2 v^2 z + v z^2 - f v + f,
//     W_{N+1} = dW_N/dv + W_1 * dW_N/df.
//
// Writing W_N = h_N / g^{2N-1} and clearing denominators gives the
// polynomial recurrence (k = 2N-1):
//
//     h_{N+1} = dh_N/df * g * h_1  -  k * h_N * dg/df * h_1
//             + dh_N/dv * g^2      -  k * h_N * dg/dv * g.

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "series.hpp"

namespace linlam {

// Sparse polynomial in f, v, z; key = exponents {i, j, l} of (f, v, z).
struct PolyFZV {
  using Key = std::array<int, 3>;
  std::map<Key, mpz_class> c;

  static PolyFZV monomial(int i, int j, int l, const mpz_class& coef) {
    PolyFZV p;
    if (sgn(coef) != 0) p.c[{i, j, l}] = coef;
    return p;
  }
  bool is_zero() const { return c.empty(); }
  void prune() {
    for (auto it = c.begin(); it != c.end();)
      it = sgn(it->second) == 0 ? c.erase(it) : std::next(it);
  }
};

inline PolyFZV poly_add(const PolyFZV& a, const PolyFZV& b) {
  PolyFZV r = a;
  for (const auto& [k, v] : b.c) r.c[k] += v;
  r.prune();
  return r;
}

inline PolyFZV poly_scale(const PolyFZV& a, const mpz_class& s) {
  PolyFZV r;
  if (sgn(s) == 0) return r;
  for (const auto& [k, v] : a.c) r.c[k] = v * s;
  return r;
}

inline PolyFZV poly_sub(const PolyFZV& a, const PolyFZV& b) {
  return poly_add(a, poly_scale(b, -1));
}

inline PolyFZV poly_mul(const PolyFZV& a, const PolyFZV& b) {
  PolyFZV r;
  for (const auto& [ka, va] : a.c)
    for (const auto& [kb, vb] : b.c) {
      PolyFZV::Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
      mpz_class& acc = r.c[k];
      mpz_addmul(acc.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
    }
  r.prune();
  return r;
}

// derivative with respect to variable index 0 (f), 1 (v) or 2 (z)
inline PolyFZV poly_derive(const PolyFZV& a, int var) {
  PolyFZV r;
  for (const auto& [k, v] : a.c) {
    if (k[var] == 0) continue;
    PolyFZV::Key k2 = k;
    k2[var] -= 1;
    r.c[k2] = v * k[var];
  }
  return r;
}

inline bool poly_eq(const PolyFZV& a, const PolyFZV& b) { return poly_sub(a, b).is_zero(); }

// graded-lex printing with f > v > z: higher total degree first, then
// lexicographically by (i, j, l) descending
inline std::string poly_to_string(const PolyFZV& a) {
  if (a.c.empty()) return "0";
  std::vector<std::pair<PolyFZV::Key, mpz_class>> terms(a.c.begin(), a.c.end());
  std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
    int dx = x.first[0] + x.first[1] + x.first[2];
    int dy = y.first[0] + y.first[1] + y.first[2];
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : terms) {
    mpz_class av = abs(v);
    if (first) {
      if (sgn(v) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(v) < 0 ? " - " : " + ");
    }
    std::vector<std::string> factors;
    bool unit = (av == 1) && (k[0] + k[1] + k[2] > 0);
    if (!unit) factors.push_back(av.get_str());
    const char* names[3] = {"f", "v", "z"};
    for (int d = 0; d < 3; ++d) {
      if (k[d] == 0) continue;
      std::string t = names[d];
      if (k[d] > 1) t += "^" + std::to_string(k[d]);
      factors.push_back(t);
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// The W_N family

inline PolyFZV poly_g() {
  PolyFZV g = PolyFZV::monomial(2, 3, 1, 1);
  g = poly_add(g, PolyFZV::monomial(2, 2, 1, -1));
  g = poly_add(g, PolyFZV::monomial(0, 1, 2, 1));
  g = poly_add(g, PolyFZV::monomial(1, 1, 0, -1));
  g = poly_add(g, PolyFZV::monomial(1, 0, 0, 1));
  return g;
}

inline PolyFZV poly_h1() {
  PolyFZV h = PolyFZV::monomial(3, 2, 1, -1);
  h = poly_add(h, PolyFZV::monomial(1, 0, 2, -1));
  h = poly_add(h, PolyFZV::monomial(2, 0, 0, 1));
  return h;
}

// W_N = h_N / g^{2N-1}
struct RatWN {
  int N = 0;
  PolyFZV num;      // h_N
  int den_pow = 0;  // exponent of g in the denominator, 2N-1
};

inline RatWN compute_WN(int N) {
  if (N < 1) throw std::invalid_argument("compute_WN: N must be >= 1");
  PolyFZV g = poly_g();
  PolyFZV h1 = poly_h1();
  PolyFZV dg_f = poly_derive(g, 0);
  PolyFZV dg_v = poly_derive(g, 1);
  PolyFZV g2 = poly_mul(g, g);
  PolyFZV h = h1;
  for (int n = 1; n < N; ++n) {
    mpz_class k = 2 * n - 1;
    PolyFZV next = poly_mul(poly_mul(poly_derive(h, 0), g), h1);
    next = poly_sub(next, poly_scale(poly_mul(poly_mul(h, dg_f), h1), k));
    next = poly_add(next, poly_mul(poly_derive(h, 1), g2));
    next = poly_sub(next, poly_scale(poly_mul(poly_mul(h, dg_v), g), k));
    h = next;
  }
  return RatWN{N, h, 2 * N - 1};
}

// ---------------------------------------------------------------------------
// Balanced structure.  A monomial f^i v^j z^l has balance weight l + 2(i-1);
// the k-balanced part keeps monomials with i <= k+1 and l = 2k - 2(i-1),
// and a polynomial is k-admissible when every monomial has
// l >= max(0, 2k - 2(i-1)).

inline PolyFZV balanced_part(const PolyFZV& a, int k) {
  PolyFZV r;
  for (const auto& [key, v] : a.c) {
    int i = key[0], l = key[2];
    if (i <= k + 1 && l == 2 * k - 2 * (i - 1)) r.c[key] = v;
  }
  return r;
}

inline bool is_k_admissible(const PolyFZV& a, int k) {
  for (const auto& [key, v] : a.c) {
    int i = key[0], l = key[2];
    if (l < std::max(0, 2 * k - 2 * (i - 1))) return false;
  }
  return true;
}

// coefficient alpha_{j,i} of v^j f^i in the k-balanced part (z-exponent is
// determined by i there)
inline std::map<std::pair<int, int>, mpz_class> balanced_coefficients(const PolyFZV& a, int k) {
  std::map<std::pair<int, int>, mpz_class> out;
  for (const auto& [key, v] : balanced_part(a, k).c) out[{key[1], key[0]}] = v;
  return out;
}

// Induction invariants of h_N, with k = 2N-1 (the denominator exponent):
// h_N is k-admissible, and its k-balanced coefficients alpha_{N,j,i} satisfy
//   sum_i i * alpha_{N,0,i} = 1,   sum_i alpha_{N,0,i} = 0,
//   sum_i alpha_{N,j,i} = 0 for every j >= 1.
struct InvariantReport {
  int N = 0;
  bool admissible = false;
  bool weighted_row0 = false;
  bool plain_row0 = false;
  bool rows_j = false;
  bool ok() const { return admissible && weighted_row0 && plain_row0 && rows_j; }
};

inline InvariantReport check_induction_invariants(int N) {
  InvariantReport rep;
  rep.N = N;
  RatWN w = compute_WN(N);
  int k = 2 * N - 1;
  rep.admissible = is_k_admissible(w.num, k);
  auto alpha = balanced_coefficients(w.num, k);
  std::map<int, mpz_class> row_sum, row_weighted;
  for (const auto& [ji, v] : alpha) {
    row_sum[ji.first] += v;
    row_weighted[ji.first] += v * ji.second;
  }
  rep.weighted_row0 = (row_weighted[0] == 1);
  rep.plain_row0 = (row_sum[0] == 0);
  rep.rows_j = true;
  for (const auto& [j, s] : row_sum)
    if (j >= 1 && sgn(s) != 0) rep.rows_j = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Substitution f -> F(z,v) into a polynomial, as a truncated series in the
// variables of F (which must be {"z", "v"}).

inline TruncatedSeries poly_substitute_f(const PolyFZV& a, const TruncatedSeries& F) {
  if (F.vars != std::vector<std::string>{"z", "v"})
    throw std::invalid_argument("poly_substitute_f: series must be in (z, v)");
  int imax = 0;
  for (const auto& [key, v] : a.c) imax = std::max(imax, key[0]);
  std::vector<TruncatedSeries> fpow;
  fpow.push_back(series_const(F.vars, F.ord, Rat(1)));
  for (int i = 1; i <= imax; ++i) fpow.push_back(series_multiply(fpow.back(), F));
  TruncatedSeries r(F.vars, F.ord);
  for (const auto& [key, v] : a.c) {
    TruncatedSeries term =
        series_multiply(fpow[key[0]], series_monomial(F.vars, F.ord, {key[2], key[1]}, Rat(v)));
    r = series_add(r, term);
  }
  return r;
}

// W_N evaluated at f = T_sub(z,v), as a series: h_N(T_sub) / g(T_sub)^{2N-1}.
// g(T_sub) has z-valuation exactly 2 with unit leading coefficient, so the
// quotient is computed after shifting out z^{2(2N-1)}; the top 2(2N-1)
// z-orders of the result are dropped as unreliable.
inline TruncatedSeries wn_series(const RatWN& w, const TruncatedSeries& Tsub) {
  TruncatedSeries num = poly_substitute_f(w.num, Tsub);
  TruncatedSeries gser = poly_substitute_f(poly_g(), Tsub);
  int shift = 2 * w.den_pow;
  TruncatedSeries den = series_shift(gser, "z", -2);
  TruncatedSeries denpow = series_const(Tsub.vars, Tsub.ord, Rat(1));
  for (int i = 0; i < w.den_pow; ++i) denpow = series_multiply(denpow, den);
  TruncatedSeries r = series_divide(series_shift(num, "z", -shift), denpow);
  return series_truncate(r, {Tsub.ord[0] - shift, Tsub.ord[1]});
}

}  // namespace linlam
