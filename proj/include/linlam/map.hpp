#pragma once
// Combinatorial maps on a dense half-edge set {0..H-1}: a vertex rotation
// permutation v (counterclockwise successor around each vertex) and a
// fixed-point-free involution e pairing half-edges into edges.  Faces are the
// cycles of f = e^-1 v^-1, so that v∘e∘f = id; Euler's relation per connected
// component gives the genus.
//
// Rooted flavours used here:
//  * open rooted trivalent: one 1-valent root vertex, an (unordered set of)
//    1-valent external vertices, every other vertex trivalent; root stored as
//    the unique half-edge of the root vertex.
//  * half-edge-rooted (1,3)-maps: all vertices 1- or 3-valent, root is an
//    arbitrary half-edge.  rooting_convert moves between the two (edge count
//    changes by 2); the empty map (no half-edges, rooted by default)
//    corresponds to the loop map.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace linlam {

struct CombinatorialMap {
  std::vector<int> v;        // rotation: next half-edge ccw around the vertex
  std::vector<int> e;        // pairing involution
  int root = -1;             // root half-edge, or -1 (unrooted / empty map)
  std::vector<int> external; // vertex ids (see vertex_cycles ordering)

  int n_halfedges() const { return (int)v.size(); }
};

// Vertex cycles ordered by their smallest half-edge; vertex id = index here.
inline std::vector<std::vector<int>> vertex_cycles(const CombinatorialMap& m) {
  int n = m.n_halfedges();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int h = 0; h < n; ++h) {
    if (seen[h]) continue;
    std::vector<int> cyc;
    int x = h;
    do {
      cyc.push_back(x);
      seen[x] = true;
      x = m.v[x];
    } while (x != h);
    out.push_back(cyc);
  }
  return out;
}

inline std::vector<int> vertex_of_halfedge(const CombinatorialMap& m) {
  auto cycles = vertex_cycles(m);
  std::vector<int> vo(m.n_halfedges(), -1);
  for (int i = 0; i < (int)cycles.size(); ++i)
    for (int h : cycles[i]) vo[h] = i;
  return vo;
}

inline int degree_of_vertex_containing(const CombinatorialMap& m, int h) {
  int d = 0, x = h;
  do {
    d++;
    x = m.v[x];
  } while (x != h);
  return d;
}

struct MapValidation {
  bool ok = true;
  std::vector<std::string> errors;
  // class flags (meaningful if ok)
  bool connected = false;
  bool all_deg_1_or_3 = false;           // (1,3)-map
  bool all_deg_2_or_3 = false;           // (2,3)-map
  bool open_rooted_trivalent = false;    // 1-valent root, externals 1-valent, rest trivalent
  void fail(const std::string& msg) {
    ok = false;
    errors.push_back(msg);
  }
};

inline std::vector<int> component_of_halfedge(const CombinatorialMap& m) {
  int n = m.n_halfedges();
  std::vector<int> comp(n, -1);
  int c = 0;
  for (int h = 0; h < n; ++h) {
    if (comp[h] != -1) continue;
    std::vector<int> stack{h};
    comp[h] = c;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : {m.v[x], m.e[x]})
        if (comp[y] == -1) {
          comp[y] = c;
          stack.push_back(y);
        }
    }
    c++;
  }
  return comp;
}

inline int n_components(const CombinatorialMap& m) {
  auto comp = component_of_halfedge(m);
  int c = 0;
  for (int x : comp) c = std::max(c, x + 1);
  return c;
}

inline MapValidation validate_map(const CombinatorialMap& m) {
  MapValidation r;
  int n = m.n_halfedges();
  if ((int)m.e.size() != n) {
    r.fail("v and e have different sizes");
    return r;
  }
  if (n % 2 != 0) r.fail("odd number of half-edges");
  std::vector<bool> hit(n, false);
  for (int h = 0; h < n; ++h) {
    if (m.v[h] < 0 || m.v[h] >= n) {
      r.fail("v out of range at " + std::to_string(h));
      return r;
    }
    if (hit[m.v[h]]) r.fail("v is not a permutation (duplicate image " + std::to_string(m.v[h]) + ")");
    hit[m.v[h]] = true;
  }
  for (int h = 0; h < n; ++h) {
    if (m.e[h] < 0 || m.e[h] >= n) {
      r.fail("e out of range at " + std::to_string(h));
      return r;
    }
    if (m.e[h] == h) r.fail("e has a fixed point at " + std::to_string(h));
    if (m.e[m.e[h]] != h) r.fail("e is not an involution at " + std::to_string(h));
  }
  if (m.root != -1 && (m.root < 0 || m.root >= n)) r.fail("root half-edge out of range");
  auto cycles = vertex_cycles(m);
  for (int ve : m.external)
    if (ve < 0 || ve >= (int)cycles.size())
      r.fail("external vertex id out of range: " + std::to_string(ve));
  if (!r.ok) return r;

  r.connected = n == 0 || n_components(m) == 1;
  r.all_deg_1_or_3 = true;
  r.all_deg_2_or_3 = true;
  for (auto& cyc : cycles) {
    size_t d = cyc.size();
    if (d != 1 && d != 3) r.all_deg_1_or_3 = false;
    if (d != 2 && d != 3) r.all_deg_2_or_3 = false;
  }
  // open rooted trivalent: root half-edge at a 1-valent vertex; every other
  // 1-valent vertex must be listed external; all remaining vertices trivalent
  if (n > 0 && m.root != -1 && r.connected) {
    auto vo = vertex_of_halfedge(m);
    int rv = vo[m.root];
    bool ok = cycles[rv].size() == 1;
    std::set<int> ext(m.external.begin(), m.external.end());
    if (ext.count(rv)) ok = false;
    for (int i = 0; i < (int)cycles.size() && ok; ++i) {
      if (i == rv) continue;
      if (ext.count(i)) {
        if (cycles[i].size() != 1) ok = false;
      } else if (cycles[i].size() != 3)
        ok = false;
    }
    for (int veid : ext)
      if (cycles[veid].size() != 1) ok = false;
    r.open_rooted_trivalent = ok;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Faces, genus, statistics

inline std::vector<std::vector<int>> face_cycles(const CombinatorialMap& m) {
  // f = e^-1 v^-1; since e is an involution, f(h) = e(v_inv(h))
  int n = m.n_halfedges();
  std::vector<int> vinv(n);
  for (int h = 0; h < n; ++h) vinv[m.v[h]] = h;
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> out;
  for (int h = 0; h < n; ++h) {
    if (seen[h]) continue;
    std::vector<int> cyc;
    int x = h;
    do {
      cyc.push_back(x);
      seen[x] = true;
      x = m.e[vinv[x]];
    } while (x != h);
    out.push_back(cyc);
  }
  return out;
}

struct GenusInfo {
  int vertices = 0, edges = 0, faces = 0, components = 0;
  int total_genus = 0;              // sum over components
  std::vector<int> component_genus;
};

inline GenusInfo faces_and_genus(const CombinatorialMap& m) {
  GenusInfo g;
  auto vc = vertex_cycles(m);
  auto fc = face_cycles(m);
  auto comp = component_of_halfedge(m);
  g.vertices = (int)vc.size();
  g.edges = m.n_halfedges() / 2;
  g.faces = (int)fc.size();
  g.components = n_components(m);
  std::vector<int> V(g.components, 0), E(g.components, 0), F(g.components, 0);
  for (auto& cyc : vc) V[comp[cyc[0]]]++;
  for (auto& cyc : fc) F[comp[cyc[0]]]++;
  for (int h = 0; h < m.n_halfedges(); ++h)
    if (h < m.e[h]) E[comp[h]]++;
  for (int c = 0; c < g.components; ++c) {
    int chi = V[c] - E[c] + F[c];
    if ((2 - chi) % 2 != 0) throw std::logic_error("odd Euler defect; map corrupt");
    g.component_genus.push_back((2 - chi) / 2);
    g.total_genus += (2 - chi) / 2;
  }
  return g;
}

// Edges as (a,b) pairs with a < b, in order of a.
inline std::vector<std::pair<int, int>> edge_list(const CombinatorialMap& m) {
  std::vector<std::pair<int, int>> out;
  for (int h = 0; h < m.n_halfedges(); ++h)
    if (h < m.e[h]) out.push_back({h, m.e[h]});
  return out;
}

inline bool edge_is_loop(const CombinatorialMap& m, int h) {
  // loop: both half-edges on the same vertex
  int x = h;
  do {
    x = m.v[x];
    if (x == m.e[h]) return true;
  } while (x != h);
  return false;
}

// Bridges via deletion: edge (h, e[h]) is a bridge iff removing it disconnects
// its endpoints.  Quadratic; used as the oracle for the linear-time version.
inline bool edge_is_bridge_by_deletion(const CombinatorialMap& m, int h) {
  if (edge_is_loop(m, h)) return false;
  int a = h, b = m.e[h];
  int n = m.n_halfedges();
  std::vector<bool> vis(n, false);
  std::vector<int> stack{a};
  vis[a] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    int y = m.v[x];
    if (!vis[y]) {
      vis[y] = true;
      stack.push_back(y);
    }
    if ((x == a && m.e[x] == b) || (x == b && m.e[x] == a)) {
      // skip the deleted edge
    } else if (!vis[m.e[x]]) {
      vis[m.e[x]] = true;
      stack.push_back(m.e[x]);
    }
  }
  return !vis[b];
}

// Tarjan bridge finding on the underlying multigraph.
inline std::vector<int> bridge_halfedges(const CombinatorialMap& m) {
  auto vo = vertex_of_halfedge(m);
  auto cycles = vertex_cycles(m);
  int nv = (int)cycles.size();
  // adjacency: per vertex, (neighbor vertex, edge id, halfedge)
  auto edges = edge_list(m);
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (other vertex, edge index)
  for (int i = 0; i < (int)edges.size(); ++i) {
    auto [a, b] = edges[i];
    int va = vo[a], vb = vo[b];
    if (va == vb) continue;  // loops are never bridges
    adj[va].push_back({vb, i});
    adj[vb].push_back({va, i});
  }
  std::vector<int> num(nv, -1), low(nv, 0);
  std::vector<int> out;
  int timer = 0;
  // iterative DFS
  struct Frame {
    int u;
    int parent_edge;
    size_t idx;
  };
  for (int s = 0; s < nv; ++s) {
    if (num[s] != -1) continue;
    std::vector<Frame> st{{s, -1, 0}};
    num[s] = low[s] = timer++;
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.idx < adj[f.u].size()) {
        auto [w, eid] = adj[f.u][f.idx++];
        if (eid == f.parent_edge) continue;
        if (num[w] == -1) {
          num[w] = low[w] = timer++;
          st.push_back({w, eid, 0});
        } else {
          low[f.u] = std::min(low[f.u], num[w]);
        }
      } else {
        int u = f.u, pe = f.parent_edge;
        st.pop_back();
        if (!st.empty()) {
          int p = st.back().u;
          low[p] = std::min(low[p], low[u]);
          if (low[u] > num[p]) out.push_back(edges[pe].first);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct MapStatistics {
  int halfedges = 0, vertices = 0, edges = 0, faces = 0, components = 0, genus = 0;
  int arity = 0;  // number of external vertices
  int loops = 0;
  int bridges = 0;
  int internal_bridges = 0;  // bridges with both endpoints trivalent
  std::map<int, int> degree_histogram;
};

inline MapStatistics map_statistics(const CombinatorialMap& m) {
  MapStatistics s;
  s.halfedges = m.n_halfedges();
  auto g = faces_and_genus(m);
  s.vertices = g.vertices;
  s.edges = g.edges;
  s.faces = g.faces;
  s.components = g.components;
  s.genus = g.total_genus;
  s.arity = (int)m.external.size();
  auto cycles = vertex_cycles(m);
  for (auto& c : cycles) s.degree_histogram[(int)c.size()]++;
  for (auto [a, b] : edge_list(m))
    if (edge_is_loop(m, a)) s.loops++;
  auto br = bridge_halfedges(m);
  s.bridges = (int)br.size();
  for (int h : br) {
    if (degree_of_vertex_containing(m, h) == 3 && degree_of_vertex_containing(m, m.e[h]) == 3)
      s.internal_bridges++;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Canonical form
//
// Rooted connected maps are rigid: a BFS from the root half-edge along the
// generators (v, e) assigns each half-edge a unique discovery index, and the
// relabeled (v, e) arrays are a complete isomorphism invariant.  External
// vertices are unlabeled (1-valence is intrinsic), and the external order is
// not part of the invariant.

inline std::string canonical_key_rooted(const CombinatorialMap& m, int root) {
  int n = m.n_halfedges();
  if (n == 0) return "empty";
  std::vector<int> lab(n, -1);
  std::vector<int> order;
  order.reserve(n);
  lab[root] = 0;
  order.push_back(root);
  for (size_t q = 0; q < order.size(); ++q) {
    int h = order[q];
    for (int y : {m.v[h], m.e[h]})
      if (lab[y] == -1) {
        lab[y] = (int)order.size();
        order.push_back(y);
      }
  }
  if ((int)order.size() != n)
    throw std::invalid_argument("canonical_form: map is not connected");
  std::string key;
  key.reserve(n * 8);
  for (int h : order) {
    key += std::to_string(lab[m.v[h]]);
    key += ',';
    key += std::to_string(lab[m.e[h]]);
    key += ';';
  }
  return key;
}

inline std::string canonical_key(const CombinatorialMap& m) {
  if (m.n_halfedges() == 0) return "empty";
  if (m.root != -1) return canonical_key_rooted(m, m.root);
  std::string best;
  for (int h = 0; h < m.n_halfedges(); ++h) {
    std::string k = canonical_key_rooted(m, h);
    if (best.empty() || k < best) best = k;
  }
  return best;
}

// Relabeled copy with half-edges renumbered in BFS discovery order.
inline CombinatorialMap canonical_form(const CombinatorialMap& m) {
  int n = m.n_halfedges();
  if (n == 0) return m;
  int root = m.root;
  if (root == -1) {
    std::string best;
    for (int h = 0; h < n; ++h) {
      std::string k = canonical_key_rooted(m, h);
      if (best.empty() || k < best) {
        best = k;
        root = h;
      }
    }
  }
  std::vector<int> lab(n, -1);
  std::vector<int> order;
  lab[root] = 0;
  order.push_back(root);
  for (size_t q = 0; q < order.size(); ++q) {
    int h = order[q];
    for (int y : {m.v[h], m.e[h]})
      if (lab[y] == -1) {
        lab[y] = (int)order.size();
        order.push_back(y);
      }
  }
  if ((int)order.size() != n)
    throw std::invalid_argument("canonical_form: map is not connected");
  CombinatorialMap out;
  out.v.resize(n);
  out.e.resize(n);
  for (int h = 0; h < n; ++h) {
    out.v[lab[h]] = lab[m.v[h]];
    out.e[lab[h]] = lab[m.e[h]];
  }
  out.root = m.root == -1 ? -1 : 0;
  // externals: recompute ids under the new vertex ordering
  auto vo_old = vertex_of_halfedge(m);
  std::set<int> ext_old(m.external.begin(), m.external.end());
  auto vo_new = vertex_of_halfedge(out);
  std::set<int> ext_new;
  for (int h = 0; h < n; ++h)
    if (ext_old.count(vo_old[h])) ext_new.insert(vo_new[lab[h]]);
  out.external.assign(ext_new.begin(), ext_new.end());
  return out;
}

inline bool maps_isomorphic(const CombinatorialMap& a, const CombinatorialMap& b) {
  return canonical_key(a) == canonical_key(b);
}

// ---------------------------------------------------------------------------
// Rooting conversions
//
// open -> half-edge-rooted: delete the root vertex and dissolve its (now
// 2-valent) neighbour; the surviving end of the dissolved edge pair becomes
// the root half-edge.  Edge count drops by 2.  The loop map goes to the empty
// map (classical convention: the empty map is rooted by default).
// half-edge-rooted -> open: subdivide the root-carrying edge and attach a new
// 1-valent root vertex to the subdivision point, whose rotation is
// (root-edge, toward old root half-edge, toward its partner).

inline CombinatorialMap rooting_convert_open_to_halfedge(const CombinatorialMap& m) {
  if (m.root == -1) throw std::invalid_argument("rooting_convert: map has no root");
  int n = m.n_halfedges();
  if (n / 2 < 2) throw std::invalid_argument("rooting_convert: need at least 2 edges");
  int h0 = m.root;           // at the 1-valent root vertex
  int h1 = m.e[h0];          // at the trivalent neighbour w
  int a = m.v[h1];
  int b = m.v[a];
  if (m.v[b] != h1) throw std::invalid_argument("rooting_convert: root neighbour not trivalent");
  if (m.e[a] == b) {
    // w carries a loop: the map is the loop map; image is the empty map
    if (n != 4) throw std::invalid_argument("rooting_convert: loop at root neighbour in a larger map");
    CombinatorialMap out;
    out.root = -1;
    return out;
  }
  // remove h0, h1, a, b; join e[a] with e[b]; relabel densely
  std::vector<int> keep;
  std::vector<int> newid(n, -1);
  for (int h = 0; h < n; ++h)
    if (h != h0 && h != h1 && h != a && h != b) {
      newid[h] = (int)keep.size();
      keep.push_back(h);
    }
  CombinatorialMap out;
  out.v.resize(keep.size());
  out.e.resize(keep.size());
  for (int h : keep) {
    out.v[newid[h]] = newid[m.v[h]];  // v untouched away from r, w (1- and 3-valent own cycles)
    int p = m.e[h];
    if (p == a) p = m.e[b];
    else if (p == b) p = m.e[a];
    out.e[newid[h]] = newid[p];
  }
  out.root = newid[m.e[a]];
  auto vo_old = vertex_of_halfedge(m);
  std::set<int> ext_old(m.external.begin(), m.external.end());
  auto vo_new = vertex_of_halfedge(out);
  std::set<int> ext_new;
  for (int h : keep)
    if (ext_old.count(vo_old[h])) ext_new.insert(vo_new[newid[h]]);
  out.external.assign(ext_new.begin(), ext_new.end());
  return out;
}

inline CombinatorialMap rooting_convert_halfedge_to_open(const CombinatorialMap& m) {
  int n = m.n_halfedges();
  if (n == 0) {
    // empty map -> loop map
    CombinatorialMap out;
    out.v = {0, 2, 3, 1};  // vertex (0) root, vertex (1 2 3)
    out.e = {1, 0, 3, 2};
    out.root = 0;
    return out;
  }
  if (m.root == -1) throw std::invalid_argument("rooting_convert: map has no root half-edge");
  int h = m.root, hp = m.e[h];
  // new half-edges: m1=n, m2=n+1, m3=n+2 at the subdivision vertex, r0=n+3
  CombinatorialMap out;
  out.v = m.v;
  out.e = m.e;
  out.v.resize(n + 4);
  out.e.resize(n + 4);
  int m1 = n, m2 = n + 1, m3 = n + 2, r0 = n + 3;
  // rotation at subdivision vertex: (m3, m1, m2)
  out.v[m3] = m1;
  out.v[m1] = m2;
  out.v[m2] = m3;
  out.v[r0] = r0;
  out.e[h] = m1;
  out.e[m1] = h;
  out.e[hp] = m2;
  out.e[m2] = hp;
  out.e[m3] = r0;
  out.e[r0] = m3;
  out.root = r0;
  // externals: every 1-valent vertex except the new root
  auto cycles = vertex_cycles(out);
  out.external.clear();
  auto vo = vertex_of_halfedge(out);
  for (int i = 0; i < (int)cycles.size(); ++i)
    if (cycles[i].size() == 1 && i != vo[r0]) out.external.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json map_to_json(const CombinatorialMap& m) {
  nlohmann::json j;
  j["half_edges"] = m.n_halfedges();
  j["vertex_cycles"] = vertex_cycles(m);
  j["edge_pairs"] = nlohmann::json::array();
  for (auto [a, b] : edge_list(m)) j["edge_pairs"].push_back({a, b});
  if (m.root != -1) j["root"] = m.root;
  j["external"] = m.external;
  return j;
}

inline CombinatorialMap map_from_json(const nlohmann::json& j) {
  CombinatorialMap m;
  int n = j.at("half_edges").get<int>();
  m.v.assign(n, -1);
  m.e.assign(n, -1);
  for (auto& cyc : j.at("vertex_cycles")) {
    std::vector<int> c = cyc.get<std::vector<int>>();
    if (c.empty()) throw std::invalid_argument("map_from_json: empty vertex cycle");
    for (size_t i = 0; i < c.size(); ++i) {
      int h = c[i], nx = c[(i + 1) % c.size()];
      if (h < 0 || h >= n || m.v[h] != -1)
        throw std::invalid_argument("map_from_json: bad vertex cycles");
      m.v[h] = nx;
    }
  }
  for (auto& pr : j.at("edge_pairs")) {
    int a = pr.at(0).get<int>(), b = pr.at(1).get<int>();
    if (a < 0 || a >= n || b < 0 || b >= n || a == b || m.e[a] != -1 || m.e[b] != -1)
      throw std::invalid_argument("map_from_json: bad edge pairs");
    m.e[a] = b;
    m.e[b] = a;
  }
  for (int h = 0; h < n; ++h)
    if (m.v[h] == -1 || m.e[h] == -1)
      throw std::invalid_argument("map_from_json: half-edge " + std::to_string(h) + " unused");
  m.root = j.contains("root") ? j.at("root").get<int>() : -1;
  if (j.contains("external")) m.external = j.at("external").get<std::vector<int>>();
  return m;
}

}  // namespace linlam
