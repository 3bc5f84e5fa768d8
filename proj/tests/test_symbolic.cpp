#include <catch2/catch_amalgamated.hpp>

#include <linlam/catalog.hpp>
#include <linlam/symbolic.hpp>

using namespace linlam;

TEST_CASE("polynomial arithmetic and printing") {
  PolyFZV f = PolyFZV::monomial(1, 0, 0, 1);
  PolyFZV v = PolyFZV::monomial(0, 1, 0, 1);
  PolyFZV sum = poly_add(f, v);
  PolyFZV prod = poly_mul(sum, sum);  // f^2 + 2fv + v^2
  REQUIRE(prod.c.size() == 3);
  REQUIRE(prod.c.at({2, 0, 0}) == 1);
  REQUIRE(prod.c.at({1, 1, 0}) == 2);
  REQUIRE(prod.c.at({0, 2, 0}) == 1);
  REQUIRE(poly_sub(prod, prod).is_zero());
  REQUIRE(poly_to_string(prod) == "f^2 + 2*f*v + v^2");
  REQUIRE(poly_to_string(poly_h1()) == "-f^3*v^2*z - f*z^2 + f^2");
  REQUIRE(poly_to_string(PolyFZV()) == "0");
  // derivative: d/dv (f^2 + 2fv + v^2) = 2f + 2v
  PolyFZV d = poly_derive(prod, 1);
  REQUIRE(d.c.at({1, 0, 0}) == 2);
  REQUIRE(d.c.at({0, 1, 0}) == 2);
  REQUIRE(d.c.size() == 2);
}

TEST_CASE("W_1 has the closed form") {
  RatWN w1 = compute_WN(1);
  REQUIRE(w1.den_pow == 1);
  REQUIRE(poly_eq(w1.num, poly_h1()));
  // g = f^2 v^3 z - f^2 v^2 z + v z^2 - f v + f
  PolyFZV g = poly_g();
  REQUIRE(g.c.size() == 5);
  REQUIRE(g.c.at({2, 3, 1}) == 1);
  REQUIRE(g.c.at({2, 2, 1}) == -1);
  REQUIRE(g.c.at({0, 1, 2}) == 1);
  REQUIRE(g.c.at({1, 1, 0}) == -1);
  REQUIRE(g.c.at({1, 0, 0}) == 1);
}

TEST_CASE("balanced parts of the base polynomials") {
  // B_1(h_1) = -f z^2 + f^2
  PolyFZV b1 = balanced_part(poly_h1(), 1);
  REQUIRE(b1.c.size() == 2);
  REQUIRE(b1.c.at({1, 0, 2}) == -1);
  REQUIRE(b1.c.at({2, 0, 0}) == 1);
  // B_{-1}(dg/df) = -v + 1
  PolyFZV bm = balanced_part(poly_derive(poly_g(), 0), -1);
  REQUIRE(bm.c.size() == 2);
  REQUIRE(bm.c.at({0, 1, 0}) == -1);
  REQUIRE(bm.c.at({0, 0, 0}) == 1);
}

TEST_CASE("induction invariants hold for N <= 5") {
  for (int N = 1; N <= 5; ++N) {
    auto rep = check_induction_invariants(N);
    INFO("N = " << N);
    REQUIRE(rep.admissible);
    REQUIRE(rep.weighted_row0);
    REQUIRE(rep.plain_row0);
    REQUIRE(rep.rows_j);
    REQUIRE(rep.ok());
  }
}

TEST_CASE("W_N substitutes to the v-derivatives of T_sub") {
  const int M = 26, Z = 14;
  TruncatedSeries Tsub = solve_T_sub(M);
  TruncatedSeries dv = Tsub;
  for (int N = 1; N <= 3; ++N) {
    dv = series_derive(dv, "v");
    RatWN w = compute_WN(N);
    TruncatedSeries s = wn_series(w, Tsub);
    TruncatedSeries res = series_sub(series_truncate(dv, {Z, 10}), series_truncate(s, {Z, 10}));
    INFO("N = " << N);
    REQUIRE(res.is_zero());
  }
}

TEST_CASE("compute_WN scales to N = 6") {
  RatWN w = compute_WN(6);
  REQUIRE(w.den_pow == 11);
  REQUIRE(!w.num.is_zero());
  REQUIRE(is_k_admissible(w.num, 11));
}
