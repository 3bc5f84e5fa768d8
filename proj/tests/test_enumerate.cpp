#include <catch2/catch_amalgamated.hpp>

#include <set>

#include <linlam/enumerate.hpp>

using namespace linlam;

TEST_CASE("closed linear counts 1, 5, 60, 1105") {
  CHECK(count_linear(2, 0) == 1);
  CHECK(count_linear(5, 0) == 5);
  CHECK(count_linear(8, 0) == 60);
  CHECK(count_linear(11, 0) == 1105);
  CHECK(count_linear(3, 0) == 0);
  CHECK(count_linear(4, 0) == 0);
}

TEST_CASE("enumeration matches counts and is duplicate-free and canonical") {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 0; k <= 4; ++k) {
      const auto& v = enumerate_linear(n, k);
      CHECK(Int((long)v.size()) == count_linear(n, k));
      std::set<std::string> seen;
      for (const auto& t : v) {
        auto cls = classify(t);
        REQUIRE(cls.linear);
        REQUIRE(cls.arity == k);
        REQUIRE(cls.canonical);
        REQUIRE(term_size(t) == n);
        seen.insert(format_term(t));
      }
      REQUIRE(seen.size() == v.size());
    }
  }
}

TEST_CASE("affine enumeration matches counts") {
  for (int n = 1; n <= 9; ++n) {
    for (int k = 0; k <= 3; ++k) {
      const auto& v = enumerate_affine(n, k);
      CHECK(Int((long)v.size()) == count_affine(n, k));
      std::set<std::string> seen;
      for (const auto& t : v) {
        auto cls = classify(t);
        REQUIRE(cls.affine);
        REQUIRE(cls.arity == k);
        REQUIRE(term_size(t) == n);
        seen.insert(format_term(t));
      }
      REQUIRE(seen.size() == v.size());
    }
  }
  // affine contains linear
  for (int n = 1; n <= 9; ++n) CHECK(count_affine(n, 0) >= count_linear(n, 0));
}

TEST_CASE("bridgeless recurrence matches the known prefix and enumeration") {
  auto b = bridgeless_coefficients(10);
  std::vector<long> expect{0, 1, 0, 0, 2, 0, 0, 20, 0, 0, 352};
  for (int i = 0; i <= 10; ++i) CHECK(b[i] == expect[i]);
  // |B0_n| = b_{n-1}; |B1_n| = b_n, checked against filtering
  for (int n = 2; n <= 11; ++n) {
    auto b0 = enumerate_terms(ClassId::Bridgeless, n);
    CHECK(count_class(ClassId::Bridgeless, n) == Int((long)b0.size()));
  }
  for (int n = 1; n <= 11; ++n) {
    auto b1 = enumerate_terms(ClassId::OneVariableOpenNoClosed, n);
    CHECK(count_class(ClassId::OneVariableOpenNoClosed, n) == Int((long)b1.size()));
  }
}

TEST_CASE("one-bridge class matches the slide count |B0_n| - [n=2]") {
  for (int n = 2; n <= 11; ++n) {
    auto ob = enumerate_terms(ClassId::OneBridge, n);
    CHECK(count_class(ClassId::OneBridge, n) == Int((long)ob.size()));
  }
}

TEST_CASE("contexts: K and Q counts and membership") {
  for (int n = 1; n <= 9; ++n) {
    auto K = enumerate_contexts_K(n);
    CHECK(Int((long)K.size()) == count_class(ClassId::ContextsK, n));
    for (const auto& c : K) {
      REQUIRE(is_simple_closed_context(c));
      REQUIRE(context_size(c) == n);
    }
    auto Q = enumerate_contexts_Q(n);
    CHECK(Int((long)Q.size()) == count_class(ClassId::ContextsQ, n));
  }
  // smallest K context: Hole applied to the identity or the identity applied
  // to Hole or λa.a Hole etc.; |K_1| = |K_2| = 0, first members at size 3
  CHECK(count_class(ClassId::ContextsK, 1) == 0);
  CHECK(count_class(ClassId::ContextsK, 2) == 0);
  CHECK(count_class(ClassId::ContextsK, 3) > 0);
}

TEST_CASE("map classes at desk scale") {
  // rooted (1,3)-maps with n edges = linear terms of size n+2 (all arities)
  for (int n = 0; n <= 6; ++n) {
    auto ms = enumerate_maps(ClassId::Maps13Rooted, n);
    CHECK(Int((long)ms.size()) == count_class(ClassId::Maps13Rooted, n));
    std::set<std::string> keys;
    for (const auto& m : ms) keys.insert(canonical_key(m));
    CHECK(keys.size() == ms.size());  // distinct up to isomorphism
  }
  // labeled disconnected pairs match the product counts
  for (int n : {0, 2, 4, 6}) {
    CHECK(Int((long)enumerate_maps(ClassId::Maps13Disconnected, n).size()) ==
          count_class(ClassId::Maps13Disconnected, n));
    CHECK(Int((long)enumerate_maps(ClassId::Maps23Disconnected, n).size()) ==
          count_class(ClassId::Maps23Disconnected, n));
  }
  // connected rooted (2,3)-maps: degrees valid, rooted, deduplicated
  for (int n : {2, 4, 6}) {
    auto ms = enumerate_maps(ClassId::Maps23Rooted, n);
    std::set<std::string> keys;
    for (const auto& m : ms) {
      auto val = validate_map(m);
      REQUIRE(val.ok);
      REQUIRE(val.all_deg_2_or_3);
      REQUIRE(val.connected);
      keys.insert(canonical_key(m));
    }
    REQUIRE(keys.size() == ms.size());
  }
}

TEST_CASE("empirical distributions at size 5") {
  auto id_d = empirical_distribution(ClassId::LinearClosed, 5, Parameter::IdentitySubterms);
  CHECK(id_d[0] == 2);
  CHECK(id_d[1] == 2);
  CHECK(id_d[2] == 1);
  auto cp_d = empirical_distribution(ClassId::LinearClosed, 5, Parameter::ClosedProperSubterms);
  CHECK(cp_d[0] == 2);
  CHECK(cp_d[1] == 2);
  CHECK(cp_d[2] == 1);
}

TEST_CASE("deterministic parallel enumeration") {
  for (int workers : {1, 2, 4}) {
    auto v = enumerate_linear_parallel(8, 0, workers);
    const auto& ref = enumerate_linear(8, 0);
    REQUIRE(v.size() == ref.size());
    for (size_t i = 0; i < v.size(); ++i) REQUIRE(term_eq(v[i], ref[i]));
  }
}

TEST_CASE("bound guards") {
  CHECK_THROWS_AS(enumerate_linear(kMaxEnumTermSize + 1, 0), BoundExceeded);
  CHECK_THROWS_AS(enumerate_labeled_maps(kMaxEnumMapHalfedges + 2, {1, 3}), BoundExceeded);
  CHECK_THROWS_AS(class_from_string("nonsense"), InvalidSelector);
}
