#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include <linlam/map.hpp>

using namespace linlam;

// Loop map: 1-valent root vertex attached to a trivalent vertex carrying a loop.
static CombinatorialMap loop_map() {
  CombinatorialMap m;
  m.v = {0, 2, 3, 1};
  m.e = {1, 0, 3, 2};
  m.root = 0;
  return m;
}

// Open rooted trivalent map of an application of two externals:
// root(0) - app vertex (1 2 3), 2->ext(4), 3->ext(5).
static CombinatorialMap app_xy_map() {
  CombinatorialMap m;
  m.v = {0, 2, 3, 1, 4, 5};
  m.e = {1, 0, 4, 5, 2, 3};
  m.root = 0;
  m.external = {2, 3};  // vertex ids of half-edges 4 and 5 under min-halfedge ordering
  return m;
}

static CombinatorialMap relabel(const CombinatorialMap& m, const std::vector<int>& perm) {
  CombinatorialMap out;
  int n = m.n_halfedges();
  out.v.resize(n);
  out.e.resize(n);
  for (int h = 0; h < n; ++h) {
    out.v[perm[h]] = perm[m.v[h]];
    out.e[perm[h]] = perm[m.e[h]];
  }
  out.root = m.root == -1 ? -1 : perm[m.root];
  auto vo_old = vertex_of_halfedge(m);
  auto vo_new = vertex_of_halfedge(out);
  std::set<int> ext;
  for (int h = 0; h < n; ++h)
    if (std::count(m.external.begin(), m.external.end(), vo_old[h])) ext.insert(vo_new[perm[h]]);
  out.external.assign(ext.begin(), ext.end());
  return out;
}

TEST_CASE("loop map basics") {
  auto m = loop_map();
  auto val = validate_map(m);
  CHECK(val.ok);
  CHECK(val.connected);
  CHECK(val.all_deg_1_or_3);
  CHECK(val.open_rooted_trivalent);
  auto s = map_statistics(m);
  CHECK(s.edges == 2);
  CHECK(s.vertices == 2);
  CHECK(s.genus == 0);
  CHECK(s.loops == 1);
  CHECK(s.bridges == 1);           // the root edge
  CHECK(s.internal_bridges == 0);  // root endpoint is 1-valent
  CHECK(s.arity == 0);
}

TEST_CASE("vef identity and Euler relation") {
  for (auto m : {loop_map(), app_xy_map()}) {
    int n = m.n_halfedges();
    std::vector<int> vinv(n);
    for (int h = 0; h < n; ++h) vinv[m.v[h]] = h;
    // f(h) = e(vinv(h)); check v(e(f(h))) == h
    for (int h = 0; h < n; ++h) {
      int f = m.e[vinv[h]];
      CHECK(m.v[m.e[f]] == h);
    }
    auto g = faces_and_genus(m);
    for (int c : g.component_genus) CHECK(c >= 0);
  }
}

TEST_CASE("validation failures") {
  CombinatorialMap m;
  m.v = {0, 1};
  m.e = {0, 1};  // fixed points
  auto val = validate_map(m);
  CHECK_FALSE(val.ok);
  CHECK(!val.errors.empty());

  CombinatorialMap m2 = loop_map();
  m2.e = {1, 0, 3, 0};  // not an involution
  CHECK_FALSE(validate_map(m2).ok);
}

TEST_CASE("canonical form is relabeling-invariant") {
  std::mt19937 rng(12345);
  for (auto m : {loop_map(), app_xy_map()}) {
    std::string key = canonical_key(m);
    std::vector<int> perm(m.n_halfedges());
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 100; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      auto m2 = relabel(m, perm);
      CHECK(validate_map(m2).ok);
      CHECK(canonical_key(m2) == key);
      CHECK(maps_isomorphic(m, m2));
    }
  }
  CHECK_FALSE(maps_isomorphic(loop_map(), app_xy_map()));
}

TEST_CASE("canonical form is idempotent and isomorphic to the input") {
  for (auto m : {loop_map(), app_xy_map()}) {
    auto c = canonical_form(m);
    CHECK(validate_map(c).ok);
    CHECK(maps_isomorphic(c, m));
    auto c2 = canonical_form(c);
    CHECK(c.v == c2.v);
    CHECK(c.e == c2.e);
    CHECK(c.root == c2.root);
  }
}

TEST_CASE("bridge detectors agree") {
  for (auto m : {loop_map(), app_xy_map()}) {
    auto br = bridge_halfedges(m);
    std::set<int> tarjan;
    for (int h : br) {
      tarjan.insert(h);
      tarjan.insert(m.e[h]);
    }
    for (auto [a, b] : edge_list(m)) {
      bool slow = edge_is_bridge_by_deletion(m, a);
      CHECK(slow == (tarjan.count(a) > 0));
    }
  }
}

TEST_CASE("rooting conversion: loop map <-> empty map") {
  auto m = loop_map();
  auto h = rooting_convert_open_to_halfedge(m);
  CHECK(h.n_halfedges() == 0);
  auto back = rooting_convert_halfedge_to_open(h);
  CHECK(maps_isomorphic(back, m));
}

TEST_CASE("rooting conversion round trip on the application map") {
  auto m = app_xy_map();
  auto h = rooting_convert_open_to_halfedge(m);
  CHECK(h.n_halfedges() == 2);  // 3 edges -> 1 edge
  CHECK(validate_map(h).ok);
  auto back = rooting_convert_halfedge_to_open(h);
  CHECK(validate_map(back).open_rooted_trivalent);
  CHECK(maps_isomorphic(back, m));
}

TEST_CASE("rooting conversion errors") {
  // single-edge open map (one free variable term) is below the 2-edge bound
  CombinatorialMap m;
  m.v = {0, 1};
  m.e = {1, 0};
  m.root = 0;
  m.external = {1};
  CHECK_THROWS_AS(rooting_convert_open_to_halfedge(m), std::invalid_argument);
  CombinatorialMap unrooted = loop_map();
  unrooted.root = -1;
  CHECK_THROWS_AS(rooting_convert_open_to_halfedge(unrooted), std::invalid_argument);
}

TEST_CASE("map JSON round trip") {
  for (auto m : {loop_map(), app_xy_map()}) {
    auto j = map_to_json(m);
    auto m2 = map_from_json(j);
    CHECK(m2.v == m.v);
    CHECK(m2.e == m.e);
    CHECK(m2.root == m.root);
    CHECK(m2.external == m.external);
  }
  // malformed: a half-edge missing from vertex cycles
  nlohmann::json bad = map_to_json(loop_map());
  bad["vertex_cycles"] = {{0}, {1, 2}};
  CHECK_THROWS_AS(map_from_json(bad), std::invalid_argument);
}
