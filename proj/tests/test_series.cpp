#include <catch2/catch_amalgamated.hpp>

#include <linlam/catalog.hpp>
#include <linlam/enumerate.hpp>
#include <linlam/series.hpp>

using namespace linlam;

TEST_CASE("truncated series ring operations") {
  // geometric series: 1/(1-z) has all coefficients 1
  TruncatedSeries one = series_const({"z"}, {12}, 1);
  TruncatedSeries g({"z"}, {12});
  g.at({0}) = 1;
  g.at({1}) = -1;
  TruncatedSeries inv = series_inverse(g);
  for (int n = 0; n <= 12; ++n) REQUIRE(inv.coeff({n}) == 1);
  REQUIRE(series_multiply(inv, g).coeff({0}) == 1);
  REQUIRE(series_sub(series_multiply(inv, g), one).is_zero());

  // quotient growth: 1/(1 - z - z^2) gives the Fibonacci numbers
  TruncatedSeries fib_den({"z"}, {15});
  fib_den.at({0}) = 1;
  fib_den.at({1}) = -1;
  fib_den.at({2}) = -1;
  TruncatedSeries fib = series_divide(one = series_const({"z"}, {15}, 1), fib_den);
  long f0 = 1, f1 = 1;
  REQUIRE(fib.coeff({0}) == 1);
  REQUIRE(fib.coeff({1}) == 1);
  for (int n = 2; n <= 15; ++n) {
    long f = f0 + f1;
    f0 = f1;
    f1 = f;
    REQUIRE(fib.coeff({n}) == f);
  }

  // product truncation keeps exactly the coefficients inside the box
  TruncatedSeries a({"z"}, {4}), b({"z"}, {6});
  for (int n = 0; n <= 4; ++n) a.at({n}) = n + 1;
  for (int n = 0; n <= 6; ++n) b.at({n}) = 1;
  TruncatedSeries p = series_multiply(a, b);
  REQUIRE(p.ord[0] == 4);
  for (int n = 0; n <= 4; ++n) {
    Rat expect = 0;
    for (int i = 0; i <= n; ++i) expect += i + 1;
    REQUIRE(p.coeff({n}) == expect);
  }
}

TEST_CASE("exp and log are mutually inverse") {
  TruncatedSeries x({"z", "u"}, {8, 4});
  x.at({1, 0}) = 1;
  x.at({1, 1}) = Rat(2, 3);
  x.at({2, 2}) = Rat(-5, 7);
  x.at({3, 0}) = 4;
  TruncatedSeries e = series_exp(x);
  REQUIRE(e.coeff({0, 0}) == 1);
  REQUIRE(series_sub(series_log(e), x).is_zero());

  // exp(z) coefficients are 1/n!
  TruncatedSeries z({"z"}, {10});
  z.at({1}) = 1;
  TruncatedSeries ez = series_exp(z);
  for (int n = 0; n <= 10; ++n) REQUIRE(ez.coeff({n}) == Rat(1) / Rat(factorial_int(n)));
}

TEST_CASE("hadamard product and borel transform") {
  // exp(z) .. exp(z) = exp(z) on exponential coefficients (1 * 1 = 1)
  TruncatedSeries z({"z"}, {9});
  z.at({1}) = 1;
  TruncatedSeries ez = series_exp(z);
  TruncatedSeries h = hadamard_exponential(ez, ez, "z");
  REQUIRE(series_sub(h, ez).is_zero());
  // borel of sum n! z^n is the geometric series
  TruncatedSeries s({"z"}, {9});
  for (int n = 0; n <= 9; ++n) s.at({n}) = Rat(factorial_int(n));
  TruncatedSeries bo = borel_transform(s, "z");
  for (int n = 0; n <= 9; ++n) REQUIRE(bo.coeff({n}) == 1);
}

TEST_CASE("composition and square substitution") {
  // 1/(1-w) composed with w = z + z^2
  std::vector<Rat> outer(11, Rat(1));
  TruncatedSeries inner({"z"}, {10});
  inner.at({1}) = 1;
  inner.at({2}) = 1;
  TruncatedSeries comp = series_compose(outer, inner);
  // 1/(1-z-z^2): Fibonacci again
  TruncatedSeries den({"z"}, {10});
  den.at({0}) = 1;
  den.at({1}) = -1;
  den.at({2}) = -1;
  REQUIRE(series_sub(comp, series_inverse(den)).is_zero());

  TruncatedSeries even({"h"}, {8});
  even.at({0}) = 3;
  even.at({4}) = 7;
  TruncatedSeries sq = series_subst_square(even, "h", "z");
  REQUIRE(sq.coeff({0}) == 3);
  REQUIRE(sq.coeff({2}) == 7);
  even.at({3}) = 1;
  REQUIRE_THROWS_AS(series_subst_square(even, "h", "z"), std::invalid_argument);
}

TEST_CASE("T(z,u) matches the counting recurrence") {
  const int N = 12;
  TruncatedSeries T = solve_T(N);
  for (int n = 1; n <= N; ++n)
    for (int k = 0; k <= T.ord[1]; ++k)
      REQUIRE(T.coeff({n, k}) == Rat(count_linear(n, k)));
  // closed slice: 1, 5, 60 at sizes 2, 5, 8 (and 1105 at 11)
  REQUIRE(T.coeff({2, 0}) == 1);
  REQUIRE(T.coeff({5, 0}) == 5);
  REQUIRE(T.coeff({8, 0}) == 60);
  REQUIRE(T.coeff({11, 0}) == 1105);
}

TEST_CASE("T_id(z,u) marks identity subterms of closed terms") {
  const int N = 12;
  TruncatedSeries Tid = solve_T_id(N);
  // [z^2] = u, [z^5] = 2 + 2u + u^2
  REQUIRE(Tid.coeff({2, 0}) == 0);
  REQUIRE(Tid.coeff({2, 1}) == 1);
  REQUIRE(Tid.coeff({5, 0}) == 2);
  REQUIRE(Tid.coeff({5, 1}) == 2);
  REQUIRE(Tid.coeff({5, 2}) == 1);
  // u = 1 recovers the closed linear counts
  TruncatedSeries tot = series_eval_var(Tid, "u", 1);
  for (int n = 1; n <= N; ++n) REQUIRE(tot.coeff({n}) == Rat(count_linear(n, 0)));
  // full rows agree with exhaustive enumeration
  for (int n : {2, 5, 8}) {
    auto d = empirical_distribution(ClassId::LinearClosed, n, Parameter::IdentitySubterms);
    for (int k = 0; k <= Tid.ord[1]; ++k) {
      Int expect = d.count(k) ? d.at(k) : Int(0);
      REQUIRE(Tid.coeff({n, k}) == Rat(expect));
    }
  }
}

TEST_CASE("T_sub(z,v) marks closed proper subterms") {
  const int N = 12;
  TruncatedSeries Ts = solve_T_sub(N);
  REQUIRE(Ts.coeff({5, 0}) == 2);
  REQUIRE(Ts.coeff({5, 1}) == 2);
  REQUIRE(Ts.coeff({5, 2}) == 1);
  // v = 0: bridgeless closed terms
  for (int n = 1; n <= N; ++n)
    REQUIRE(Ts.coeff({n, 0}) == Rat(count_class(ClassId::Bridgeless, n)));
  // v = 1: all closed linear terms
  TruncatedSeries tot = series_eval_var(Ts, "v", 1);
  for (int n = 1; n <= N; ++n) REQUIRE(tot.coeff({n}) == Rat(count_linear(n, 0)));
  // full rows agree with exhaustive enumeration
  for (int n : {2, 5, 8, 11}) {
    auto d = empirical_distribution(ClassId::LinearClosed, n, Parameter::ClosedProperSubterms);
    for (int j = 0; j <= Ts.ord[1]; ++j) {
      Int expect = d.count(j) ? d.at(j) : Int(0);
      REQUIRE(Ts.coeff({n, j}) == Rat(expect));
    }
  }
}

TEST_CASE("trivariate S specializes to T and T_sub") {
  const int N = 9;
  TruncatedSeries S = solve_S_sub(N);
  TruncatedSeries Ts = solve_T_sub(N);
  TruncatedSeries T = solve_T(N);
  // u = 0 slice is T_sub
  TruncatedSeries s0 = series_slice(S, "u", 0);
  for (int n = 0; n <= N; ++n)
    for (int j = 0; j <= S.ord[2]; ++j) REQUIRE(s0.coeff({n, j}) == Ts.coeff({n, j}));
  // v = 1 forgets the marking and recovers T(z,u)
  TruncatedSeries sv = series_eval_var(S, "v", 1);
  for (int n = 0; n <= N; ++n)
    for (int k = 0; k <= S.ord[1]; ++k) REQUIRE(sv.coeff({n, k}) == T.coeff({n, k}));
}

TEST_CASE("b(z) matches the bridgeless recurrence") {
  const int N = 40;
  TruncatedSeries b = solve_b(N);
  auto coeffs = bridgeless_coefficients(N);
  for (int n = 0; n <= N; ++n) REQUIRE(b.coeff({n}) == Rat(coeffs[n]));
}

TEST_CASE("pairing model counts labeled map pairs") {
  // (2m)! [z^m] of the even pairing series = #(FPF involution, cycle-perm) pairs
  TruncatedSeries p13 = series_eval_var(build_pairs_13(5, 10), "u", 1);
  TruncatedSeries p23 = series_eval_var(build_pairs_23(5, 5), "t", 1);
  for (int m = 1; m <= 5; ++m) {
    Rat f = Rat(factorial_int(2 * m));
    REQUIRE(p13.coeff({m}) * f == Rat(count_class(ClassId::Maps13Disconnected, 2 * m)));
    REQUIRE(p23.coeff({m}) * f == Rat(count_class(ClassId::Maps23Disconnected, 2 * m)));
  }
}

TEST_CASE("hadamard construction rebuilds T") {
  const int N = 12;
  TruncatedSeries T = solve_T(N);
  TruncatedSeries H = build_T_hadamard(N, T.ord[1]);
  REQUIRE(series_sub(series_truncate(T, H.ord), H).is_zero());
}

TEST_CASE("D(z,t) counts rooted (2,3)-maps by bivalent vertices") {
  TruncatedSeries D = build_D(4, 4);
  TruncatedSeries tot = series_eval_var(D, "t", 1);
  for (int m = 1; m <= 3; ++m)
    REQUIRE(tot.coeff({m}) == Rat(count_class(ClassId::Maps23Rooted, 2 * m)));
  for (int m = 1; m <= 3; ++m) {
    auto d = empirical_map_distribution(ClassId::Maps23Rooted, 2 * m, MapParameter::BivalentVertices);
    for (int k = 0; k <= D.ord[1]; ++k) {
      Int expect = d.count(k) ? d.at(k) : Int(0);
      REQUIRE(D.coeff({m, k}) == Rat(expect));
    }
  }
}

TEST_CASE("affine series: binomial and compositional constructions") {
  const int N = 16, K = 8;
  TruncatedSeries T = solve_T(N);
  TruncatedSeries A1 = build_A_binomial(T, N, K);
  TruncatedSeries A2 = build_A_compose(T, N, K);
  REQUIRE(series_sub(A1, A2).is_zero());
  // t = 1 recovers closed affine counts; t = 0 the closed linear counts
  TruncatedSeries tot = series_eval_var(build_A_binomial(T, 11, 11), "t", 1);
  for (int n = 1; n <= 11; ++n) REQUIRE(tot.coeff({n}) == Rat(count_affine(n, 0)));
  for (int n = 1; n <= N; ++n) REQUIRE(A1.coeff({n, 0}) == Rat(count_linear(n, 0)));
}

TEST_CASE("Q(z,v) counts simple closed contexts at v = 1") {
  TruncatedSeries Q = build_Q(solve_T_sub(14));  // valid to z-order 12
  TruncatedSeries q1 = series_eval_var(Q, "v", 1);
  for (int n = 1; n <= 12; ++n) REQUIRE(q1.coeff({n}) == Rat(count_class(ClassId::ContextsQ, n)));
  // [z^3] Q = 2 + 2v
  REQUIRE(Q.coeff({3, 0}) == 2);
  REQUIRE(Q.coeff({3, 1}) == 2);
  REQUIRE(Q.coeff({3, 2}) == 0);
}

TEST_CASE("formal identities hold") {
  for (const auto& name : formal_identity_names()) {
    auto rep = verify_formal_identity(name);
    INFO(rep.name << ": " << rep.detail);
    REQUIRE(rep.ok);
  }
}
