#include <catch2/catch_amalgamated.hpp>

#include <linlam/bijections.hpp>
#include <linlam/enumerate.hpp>

using namespace linlam;

static TermPtr T(const std::string& s) { return parse_term(s); }

TEST_CASE("identity term maps to the loop map") {
  auto m = term_to_map(T("\\x.x"));
  CHECK(m.n_halfedges() == 4);
  auto s = map_statistics(m);
  CHECK(s.edges == 2);
  CHECK(s.loops == 1);
  CHECK(validate_map(m).open_rooted_trivalent);
  CHECK(term_eq(map_to_term(m), T("\\x.x")));
}

TEST_CASE("single free variable maps to the one-edge map") {
  auto m = term_to_map(T("x"));
  CHECK(m.n_halfedges() == 2);
  CHECK(map_statistics(m).edges == 1);
  CHECK(m.external.size() == 1);
  CHECK(term_eq(map_to_term(m), T("x")));
}

TEST_CASE("edge count equals term size; arity equals external count") {
  for (const char* s : {"\\x.x", "x y", "\\x.x (\\y.y)", "\\x.\\y.x y", "x (y (\\z.z))"}) {
    TermPtr t = T(s);
    auto m = term_to_map(t);
    CHECK(map_statistics(m).edges == term_size(t));
    CHECK((int)m.external.size() == term_arity(t));
    CHECK(validate_map(m).open_rooted_trivalent);
  }
}

TEST_CASE("tau round trips exhaustively to size 9") {
  for (int n = 1; n <= 9; ++n) {
    long checked = 0;
    for (int k = 0; k <= n; ++k) {
      for (const auto& t : enumerate_linear(n, k)) {
        auto m = term_to_map(t);
        TermPtr back = map_to_term(m);
        REQUIRE(term_eq(back, t));
        // map-side round trip up to isomorphism
        REQUIRE(maps_isomorphic(term_to_map(back), m));
        checked++;
      }
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("parameter transport: loops and internal bridges") {
  for (int n = 2; n <= 9; ++n) {
    for (const auto& t : enumerate_linear(n, 0)) {
      auto m = term_to_map(t);
      auto s = map_statistics(m);
      REQUIRE(s.loops == count_parameter(t, Parameter::IdentitySubterms));
      REQUIRE(s.internal_bridges == count_parameter(t, Parameter::ClosedProperSubterms));
      REQUIRE(s.genus >= 0);
    }
  }
}

TEST_CASE("spanning t-tree: acyclic, connected, right edge counts") {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 0; k <= 2; ++k) {
      for (const auto& t : enumerate_linear(n, k)) {
        auto st = term_spanning_tree(t);
        int V = (int)vertex_cycles(st.map).size();
        REQUIRE((int)st.tree_edges.size() == V - 1);
        // acyclic + connected via union-find over tree edges
        std::vector<int> parent(V);
        for (int i = 0; i < V; ++i) parent[i] = i;
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        auto vo = vertex_of_halfedge(st.map);
        bool acyclic = true;
        for (auto [a, b] : st.tree_edges) {
          int ra = find(vo[a]), rb = find(vo[b]);
          if (ra == rb) acyclic = false;
          parent[ra] = rb;
        }
        REQUIRE(acyclic);
        // deleted edges are exactly the bound variables
        std::vector<int> usages;
        long abs_count = 0;
        for (auto& o : subterm_occurrences(t))
          if (o.subterm->kind == TermKind::Abs) abs_count++;
        REQUIRE((long)st.bound_var_edges.size() ==
                abs_count - count_parameter(t, Parameter::UnusedAbstractions));
      }
    }
  }
}

TEST_CASE("rooting conversion round trips over all closed terms to size 8") {
  for (int n = 2; n <= 8; ++n) {
    for (const auto& t : enumerate_linear(n, 0)) {
      auto open = term_to_map(t);
      auto he = rooting_convert_open_to_halfedge(open);
      auto back = rooting_convert_halfedge_to_open(he);
      REQUIRE(maps_isomorphic(back, open));
      REQUIRE(he.n_halfedges() == open.n_halfedges() - 4);
    }
  }
}

TEST_CASE("slide: size 5 example and exhaustive round trip") {
  // λx.λy.x y  --slide-->  λx.x (λy.y)
  CHECK(term_eq(slide_forward(T("\\x.\\y.x y")), T("\\x.x (\\y.y)")));
  CHECK(term_eq(slide_backward(T("\\x.x (\\y.y)")), T("\\x.\\y.x y")));

  for (int n = 2; n <= 11; ++n) {
    auto b0 = enumerate_terms(ClassId::Bridgeless, n);
    auto ob = enumerate_terms(ClassId::OneBridge, n);
    std::set<std::string> images;
    long forwarded = 0;
    for (const auto& t : b0) {
      if (is_identity_term(t)) continue;
      TermPtr u = slide_forward(t);
      REQUIRE(in_OB(u));
      REQUIRE(term_size(u) == term_size(t));
      REQUIRE(term_eq(slide_backward(u), t));
      images.insert(format_term(u));
      forwarded++;
    }
    REQUIRE((long)images.size() == forwarded);   // injective
    REQUIRE(forwarded == (long)ob.size());       // surjective by counting
  }
}

TEST_CASE("psi round trips over closed non-identity abstractions to size 11") {
  for (int n = 2; n <= 11; ++n) {
    for (const auto& t : enumerate_linear(n, 0)) {
      if (t->kind != TermKind::Abs || is_identity_term(t)) continue;
      auto r = psi_decompose(t);
      REQUIRE(is_in_Q(r.q));
      if (!r.base) {
        auto cls = classify(r.rest);
        REQUIRE(cls.closed);
        REQUIRE(r.rest->kind == TermKind::Abs);
        REQUIRE(term_size(r.rest) < term_size(t));
      }
      REQUIRE(term_eq(psi_rebuild(r), t));
    }
  }
}

TEST_CASE("K factors uniquely into Q components up to size 9") {
  for (int n = 1; n <= 9; ++n) {
    for (const auto& c : enumerate_contexts_K(n)) {
      auto qs = factor_context(c);
      REQUIRE(!qs.empty());
      long total = 0;
      CtxPtr rebuilt = mk_hole();
      for (const auto& q : qs) {
        REQUIRE(is_in_Q(q));
        total += context_size(q);
        rebuilt = context_compose(rebuilt, q);
      }
      REQUIRE(total == context_size(c));
      REQUIRE(ctx_eq(rebuilt, c));
    }
  }
}

TEST_CASE("B1 decomposition round trips to size 11") {
  for (int n = 1; n <= 11; ++n) {
    for (const auto& t : enumerate_terms(ClassId::OneVariableOpenNoClosed, n)) {
      auto d = decompose_B1(t);
      if (d.is_var) {
        REQUIRE(n == 1);
        continue;
      }
      REQUIRE(in_B1(d.tm));
      REQUIRE(in_B1(d.s));
      REQUIRE(term_eq(plug(d.mark_ctx, d.mark_sub), d.s));
      REQUIRE(term_size(t) == 2 + term_size(d.tm) + term_size(d.s));
      REQUIRE(term_eq(compose_B1(d), t));
    }
  }
}

TEST_CASE("slide conjugated to maps adds exactly one internal bridge") {
  for (int n = 5; n <= 8; ++n) {
    for (const auto& t : enumerate_terms(ClassId::Bridgeless, n)) {
      if (is_identity_term(t)) continue;
      auto m = term_to_map(t);
      REQUIRE(map_statistics(m).internal_bridges == 0);
      auto m2 = slide_forward_map(m);
      REQUIRE(map_statistics(m2).internal_bridges == 1);
    }
  }
}
