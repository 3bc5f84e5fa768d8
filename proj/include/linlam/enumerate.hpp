#pragma once
// Exhaustive enumeration (desk scale) and memoized counting of the catalog
// classes.  Terms are the generation substrate; map classes are produced
// through the bijections or, for the disconnected classes, as labeled
// (rotation, involution) pairs on the half-edge set.
//
// Canonical generation order (deterministic, documented):
//   size n, arity k:
//     1. the variable (n == 1, k == 1);
//     2. applications, left size a = 1..n-2 ascending, left arity k1 = 0..k
//        ascending, then left and right operand order; the right operand's
//        free labels are shifted up by k1 (left-to-right first occurrence
//        keeps labels canonical);
//     3. abstractions over terms of size n-1 and arity k+1 in order, binding
//        label j = 0..k ascending;
//     4. (affine only) unused abstractions over terms of size n-1, arity k.

#include <functional>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <linlam/bijections.hpp>
#include <linlam/term.hpp>

namespace linlam {

using Int = mpz_class;

struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidSelector : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive-enumeration guard rails (counting goes much further).
constexpr int kMaxEnumTermSize = 13;
constexpr int kMaxEnumMapHalfedges = 8;

// ---------------------------------------------------------------------------
// Index surgery for generation (the only place indices are adjusted)

namespace detail {
// Bind free label j of t, producing the body for a new outermost abstraction:
// label j points at the new binder, labels above j slide down by one.
inline TermPtr bind_label(const TermPtr& t, int j, int depth = 0) {
  switch (t->kind) {
    case TermKind::Var: {
      if (t->index < depth) return t;
      int e = t->index - depth;
      if (e == j) return mk_var(depth);
      if (e > j) return t;
      return mk_var(t->index + 1);
    }
    case TermKind::App:
      return mk_app(bind_label(t->left, j, depth), bind_label(t->right, j, depth));
    case TermKind::Abs:
      return mk_abs(bind_label(t->body, j, depth + 1));
  }
  return t;
}
// Body for an unused outermost abstraction: all free labels survive.
inline TermPtr lift_free(const TermPtr& t, int depth = 0) {
  switch (t->kind) {
    case TermKind::Var:
      return t->index >= depth ? mk_var(t->index + 1) : t;
    case TermKind::App:
      return mk_app(lift_free(t->left, depth), lift_free(t->right, depth));
    case TermKind::Abs:
      return mk_abs(lift_free(t->body, depth + 1));
  }
  return t;
}
// Shift all free labels up by s (right operand of an application).
inline TermPtr shift_labels(const TermPtr& t, int s, int depth = 0) {
  if (s == 0) return t;
  switch (t->kind) {
    case TermKind::Var:
      return t->index >= depth ? mk_var(t->index + s) : t;
    case TermKind::App:
      return mk_app(shift_labels(t->left, s, depth), shift_labels(t->right, s, depth));
    case TermKind::Abs:
      return mk_abs(shift_labels(t->body, s, depth + 1));
  }
  return t;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Counting recurrences

// Linear terms of size n with k distinct free variables (up to exchange):
// L(1,1) = 1; L(n,k) = sum_{a+b=n-1} sum_{k1+k2=k} L(a,k1) L(b,k2)
//                      + (k+1) L(n-1, k+1).
inline const Int& count_linear(int n, int k) {
  static std::map<std::pair<int, int>, Int> memo;
  static const Int zero = 0;
  if (n < 1 || k < 0 || k > n) return zero;
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  Int r = 0;
  if (n == 1) {
    r = (k == 1) ? 1 : 0;
  } else {
    for (int a = 1; a <= n - 2; ++a)
      for (int k1 = 0; k1 <= k; ++k1) r += count_linear(a, k1) * count_linear(n - 1 - a, k - k1);
    r += (k + 1) * count_linear(n - 1, k + 1);
  }
  return memo.emplace(std::make_pair(n, k), std::move(r)).first->second;
}

// Affine terms: additionally an unused outermost abstraction.
inline const Int& count_affine(int n, int k) {
  static std::map<std::pair<int, int>, Int> memo;
  static const Int zero = 0;
  if (n < 1 || k < 0 || k > n) return zero;
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  Int r = 0;
  if (n == 1) {
    r = (k == 1) ? 1 : 0;
  } else {
    for (int a = 1; a <= n - 2; ++a)
      for (int k1 = 0; k1 <= k; ++k1) r += count_affine(a, k1) * count_affine(n - 1 - a, k - k1);
    r += (k + 1) * count_affine(n - 1, k + 1);
    r += count_affine(n - 1, k);
  }
  return memo.emplace(std::make_pair(n, k), std::move(r)).first->second;
}

// Bridgeless recurrence: b(z) = z + 2 z^3 b(z) b'(z), i.e.
// b_n = 2 sum_{k=4}^{n} b_{k-3} (n-k+1) b_{n-k+1}, b_1 = 1, b_2 = b_3 = 0.
inline std::vector<Int> bridgeless_coefficients(int N) {
  std::vector<Int> b(N + 1, 0);
  if (N >= 1) b[1] = 1;
  for (int n = 4; n <= N; ++n) {
    Int s = 0;
    for (int k = 4; k <= n; ++k)
      if (k - 3 >= 1 && n - k + 1 >= 1) s += b[k - 3] * (n - k + 1) * b[n - k + 1];
    b[n] = 2 * s;
  }
  return b;
}

// Permutations with all cycle lengths in the given set (half-edge rotations).
inline Int count_perms_cycles13(int n) {
  static std::vector<Int> memo{1};
  while ((int)memo.size() <= n) {
    int m = (int)memo.size();
    Int r = memo[m - 1];
    if (m >= 3) r += Int(m - 1) * (m - 2) * memo[m - 3];
    memo.push_back(r);
  }
  return memo[n];
}
inline Int count_perms_cycles23(int n) {
  static std::vector<Int> memo{1, 0};
  while ((int)memo.size() <= n) {
    int m = (int)memo.size();
    Int r = 0;
    if (m >= 2) r += Int(m - 1) * memo[m - 2];
    if (m >= 3) r += Int(m - 1) * (m - 2) * memo[m - 3];
    memo.push_back(r);
  }
  return memo[n];
}
// Perfect matchings of n points: (n-1)!! for even n.
inline Int count_matchings(int n) {
  if (n % 2) return 0;
  Int r = 1;
  for (int i = n - 1; i > 1; i -= 2) r *= i;
  return r;
}

// ---------------------------------------------------------------------------
// Term enumeration

inline const std::vector<TermPtr>& enumerate_linear(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<TermPtr>> memo;
  static const std::vector<TermPtr> empty;
  if (n < 1 || k < 0 || k > n) return empty;
  if (n > kMaxEnumTermSize)
    throw BoundExceeded("enumerate_linear: size " + std::to_string(n) + " beyond exhaustive bound");
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  std::vector<TermPtr> out;
  if (n == 1) {
    if (k == 1) out.push_back(mk_var(0));
  } else {
    for (int a = 1; a <= n - 2; ++a)
      for (int k1 = 0; k1 <= k; ++k1)
        for (const auto& l : enumerate_linear(a, k1))
          for (const auto& r : enumerate_linear(n - 1 - a, k - k1))
            out.push_back(mk_app(l, detail::shift_labels(r, k1)));
    for (const auto& t : enumerate_linear(n - 1, k + 1))
      for (int j = 0; j <= k; ++j) out.push_back(mk_abs(detail::bind_label(t, j)));
  }
  return memo.emplace(std::make_pair(n, k), std::move(out)).first->second;
}

inline const std::vector<TermPtr>& enumerate_affine(int n, int k) {
  static std::map<std::pair<int, int>, std::vector<TermPtr>> memo;
  static const std::vector<TermPtr> empty;
  if (n < 1 || k < 0 || k > n) return empty;
  if (n > kMaxEnumTermSize)
    throw BoundExceeded("enumerate_affine: size " + std::to_string(n) + " beyond exhaustive bound");
  auto it = memo.find({n, k});
  if (it != memo.end()) return it->second;
  std::vector<TermPtr> out;
  if (n == 1) {
    if (k == 1) out.push_back(mk_var(0));
  } else {
    for (int a = 1; a <= n - 2; ++a)
      for (int k1 = 0; k1 <= k; ++k1)
        for (const auto& l : enumerate_affine(a, k1))
          for (const auto& r : enumerate_affine(n - 1 - a, k - k1))
            out.push_back(mk_app(l, detail::shift_labels(r, k1)));
    for (const auto& t : enumerate_affine(n - 1, k + 1))
      for (int j = 0; j <= k; ++j) out.push_back(mk_abs(detail::bind_label(t, j)));
    for (const auto& t : enumerate_affine(n - 1, k)) out.push_back(mk_abs(detail::lift_free(t)));
  }
  return memo.emplace(std::make_pair(n, k), std::move(out)).first->second;
}

// Deterministic multi-worker variant: the top-level work list is chunked
// across `workers`, results are concatenated in chunk order, so the output is
// identical for every worker count.
inline std::vector<TermPtr> enumerate_linear_parallel(int n, int k, int workers) {
  if (workers <= 1) return enumerate_linear(n, k);
  if (n > kMaxEnumTermSize)
    throw BoundExceeded("enumerate_linear: size " + std::to_string(n) + " beyond exhaustive bound");
  if (n == 1) return enumerate_linear(n, k);
  // warm the memo tables sequentially (cheap relative to the top level), then
  // emit the top-level combinations in deterministic chunks
  struct Task {
    int kind;  // 0 = app block (a,k1), 1 = abs block
    int a, k1;
  };
  std::vector<Task> tasks;
  for (int a = 1; a <= n - 2; ++a)
    for (int k1 = 0; k1 <= k; ++k1) tasks.push_back({0, a, k1});
  tasks.push_back({1, 0, 0});
  for (auto& t : tasks) {  // pre-populate memos single-threaded
    if (t.kind == 0) {
      enumerate_linear(t.a, t.k1);
      enumerate_linear(n - 1 - t.a, k - t.k1);
    } else {
      enumerate_linear(n - 1, k + 1);
    }
  }
  auto run = [&](const Task& t) {
    std::vector<TermPtr> out;
    if (t.kind == 0) {
      for (const auto& l : enumerate_linear(t.a, t.k1))
        for (const auto& r : enumerate_linear(n - 1 - t.a, k - t.k1))
          out.push_back(mk_app(l, detail::shift_labels(r, t.k1)));
    } else {
      for (const auto& u : enumerate_linear(n - 1, k + 1))
        for (int j = 0; j <= k; ++j) out.push_back(mk_abs(detail::bind_label(u, j)));
    }
    return out;
  };
  std::vector<std::future<std::vector<TermPtr>>> futs;
  for (auto& t : tasks) futs.push_back(std::async(std::launch::async, run, t));
  std::vector<TermPtr> out;
  for (auto& f : futs) {
    auto v = f.get();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derived term classes

inline bool in_B0(const TermPtr& t) {
  auto c = classify(t);
  return c.linear && c.closed && count_parameter(t, Parameter::ClosedProperSubterms) == 0;
}
inline bool in_OB(const TermPtr& t) {
  auto c = classify(t);
  return c.linear && c.closed && count_parameter(t, Parameter::ClosedProperSubterms) == 1;
}

// Context of the unique free-variable occurrence of an arity-1 linear term.
inline CtxPtr context_of_free_variable(const TermPtr& t) {
  struct F {
    static std::optional<CtxPtr> go(const TermPtr& t, int depth) {
      switch (t->kind) {
        case TermKind::Var:
          if (t->index >= depth) return mk_hole();
          return std::nullopt;
        case TermKind::App: {
          if (auto c = go(t->left, depth)) return mk_appl(*c, t->right);
          if (auto c = go(t->right, depth)) return mk_appr(t->left, *c);
          return std::nullopt;
        }
        case TermKind::Abs: {
          if (auto c = go(t->body, depth + 1)) return mk_cabs(*c);
          return std::nullopt;
        }
      }
      return std::nullopt;
    }
  };
  auto c = F::go(t, 0);
  if (!c) throw std::invalid_argument("context_of_free_variable: no free occurrence");
  return *c;
}

// Simple closed contexts of size n (class K): arity-1 linear terms of size
// n+1 with the free occurrence hollowed out.
inline std::vector<CtxPtr> enumerate_contexts_K(int n) {
  std::vector<CtxPtr> out;
  if (n < 1) return out;
  for (const auto& t : enumerate_linear(n + 1, 1)) out.push_back(context_of_free_variable(t));
  return out;
}

inline std::vector<CtxPtr> enumerate_contexts_Q(int n) {
  std::vector<CtxPtr> out;
  for (const auto& c : enumerate_contexts_K(n))
    if (is_in_Q(c)) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// Map enumeration

namespace detail {
// All fixed-point-free involutions on {0..n-1}.
inline void gen_involutions(std::vector<int>& e, std::vector<bool>& used, int n,
                            const std::function<void(const std::vector<int>&)>& emit) {
  int a = 0;
  while (a < n && used[a]) a++;
  if (a == n) {
    emit(e);
    return;
  }
  used[a] = true;
  for (int b = a + 1; b < n; ++b) {
    if (used[b]) continue;
    used[b] = true;
    e[a] = b;
    e[b] = a;
    gen_involutions(e, used, n, emit);
    used[b] = false;
  }
  used[a] = false;
}
// All permutations of {0..n-1} whose cycle lengths lie in `lens`.
inline void gen_cycle_perms(std::vector<int>& v, std::vector<bool>& used, int n,
                            const std::vector<int>& lens,
                            const std::function<void(const std::vector<int>&)>& emit) {
  int a = 0;
  while (a < n && used[a]) a++;
  if (a == n) {
    emit(v);
    return;
  }
  used[a] = true;
  for (int len : lens) {
    if (len == 1) {
      v[a] = a;
      gen_cycle_perms(v, used, n, lens, emit);
    } else if (len == 2) {
      for (int b = a + 1; b < n; ++b) {
        if (used[b]) continue;
        used[b] = true;
        v[a] = b;
        v[b] = a;
        gen_cycle_perms(v, used, n, lens, emit);
        used[b] = false;
      }
    } else if (len == 3) {
      for (int b = 0; b < n; ++b) {
        if (used[b] || b == a) continue;
        used[b] = true;
        for (int c = 0; c < n; ++c) {
          if (used[c] || c == a) continue;
          used[c] = true;
          // cycle (a b c); orientations (a b c) and (a c b) both arise since
          // b and c range freely with b the first chosen
          v[a] = b;
          v[b] = c;
          v[c] = a;
          gen_cycle_perms(v, used, n, lens, emit);
          used[c] = false;
        }
        used[b] = false;
      }
    }
  }
  used[a] = false;
}
}  // namespace detail

// All labeled pairs (rotation, pairing) on n half-edges with vertex degrees in
// `degrees`: the disconnected map classes, counted per labeling.
inline std::vector<CombinatorialMap> enumerate_labeled_maps(int n, const std::vector<int>& degrees) {
  if (n > kMaxEnumMapHalfedges)
    throw BoundExceeded("enumerate_labeled_maps: half-edge count beyond exhaustive bound");
  std::vector<CombinatorialMap> out;
  if (n % 2) return out;
  if (n == 0) {
    out.push_back(CombinatorialMap{});
    return out;
  }
  std::vector<int> v(n), e(n);
  std::vector<bool> used(n, false);
  detail::gen_cycle_perms(v, used, n, degrees, [&](const std::vector<int>& vv) {
    std::vector<int> e2(n);
    std::vector<bool> used2(n, false);
    detail::gen_involutions(e2, used2, n, [&](const std::vector<int>& ee) {
      CombinatorialMap m;
      m.v = vv;
      m.e = ee;
      out.push_back(m);
    });
  });
  return out;
}

// Half-edge-rooted connected maps with the given degree constraint, up to
// isomorphism (canonical dedup of labeled pairs rooted at half-edge 0).
inline std::vector<CombinatorialMap> enumerate_rooted_maps(int n_halfedges,
                                                           const std::vector<int>& degrees) {
  std::map<std::string, CombinatorialMap> reps;
  for (auto m : enumerate_labeled_maps(n_halfedges, degrees)) {
    if (m.n_halfedges() == 0) continue;
    if (n_components(m) != 1) continue;
    m.root = 0;
    std::string key = canonical_key(m);
    if (!reps.count(key)) reps.emplace(std::move(key), canonical_form(m));
  }
  std::vector<CombinatorialMap> out;
  for (auto& [k, m] : reps) out.push_back(m);
  return out;
}

// ---------------------------------------------------------------------------
// Class catalog

enum class ClassId {
  LinearClosed,
  LinearOpen,  // all arities >= 1
  AffineClosed,
  Bridgeless,        // B[0]
  OneVariableOpenNoClosed,  // B[1]
  OneBridge,         // OB
  ContextsK,
  ContextsQ,
  Maps13Rooted,       // half-edge-rooted (1,3)-maps, size = number of edges
  Maps23Rooted,       // half-edge-rooted connected (2,3)-maps, size = number of half-edges
  Maps13Disconnected, // labeled pairs, size = number of half-edges
  Maps23Disconnected,
};

inline ClassId class_from_string(const std::string& s) {
  if (s == "linear-closed") return ClassId::LinearClosed;
  if (s == "linear-open") return ClassId::LinearOpen;
  if (s == "affine-closed") return ClassId::AffineClosed;
  if (s == "bridgeless") return ClassId::Bridgeless;
  if (s == "b1") return ClassId::OneVariableOpenNoClosed;
  if (s == "one-bridge") return ClassId::OneBridge;
  if (s == "contexts-k") return ClassId::ContextsK;
  if (s == "contexts-q") return ClassId::ContextsQ;
  if (s == "maps13-rooted") return ClassId::Maps13Rooted;
  if (s == "maps23-rooted") return ClassId::Maps23Rooted;
  if (s == "maps13-disconnected") return ClassId::Maps13Disconnected;
  if (s == "maps23-disconnected") return ClassId::Maps23Disconnected;
  throw InvalidSelector("unknown class '" + s + "'");
}

// Term-valued classes stream terms; map-valued classes stream maps.
inline bool class_is_term_valued(ClassId c) {
  switch (c) {
    case ClassId::LinearClosed:
    case ClassId::LinearOpen:
    case ClassId::AffineClosed:
    case ClassId::Bridgeless:
    case ClassId::OneVariableOpenNoClosed:
    case ClassId::OneBridge:
      return true;
    default:
      return false;
  }
}
inline bool class_is_context_valued(ClassId c) {
  return c == ClassId::ContextsK || c == ClassId::ContextsQ;
}

inline std::vector<TermPtr> enumerate_terms(ClassId c, int n) {
  std::vector<TermPtr> out;
  switch (c) {
    case ClassId::LinearClosed:
      return enumerate_linear(n, 0);
    case ClassId::LinearOpen:
      for (int k = 1; k <= n; ++k)
        for (const auto& t : enumerate_linear(n, k)) out.push_back(t);
      return out;
    case ClassId::AffineClosed:
      return enumerate_affine(n, 0);
    case ClassId::Bridgeless:
      for (const auto& t : enumerate_linear(n, 0))
        if (in_B0(t)) out.push_back(t);
      return out;
    case ClassId::OneVariableOpenNoClosed:
      for (const auto& t : enumerate_linear(n, 1))
        if (in_B1(t)) out.push_back(t);
      return out;
    case ClassId::OneBridge:
      for (const auto& t : enumerate_linear(n, 0))
        if (in_OB(t)) out.push_back(t);
      return out;
    default:
      throw InvalidSelector("class is not term-valued");
  }
}

inline std::vector<CombinatorialMap> enumerate_maps(ClassId c, int n) {
  std::vector<CombinatorialMap> out;
  switch (c) {
    case ClassId::Maps13Rooted: {
      // open rooted trivalent maps with n+2 edges == linear terms of size n+2
      int sz = n + 2;
      for (int k = 0; k <= sz; ++k)
        for (const auto& t : enumerate_linear(sz, k))
          out.push_back(rooting_convert_open_to_halfedge(term_to_map(t)));
      return out;
    }
    case ClassId::Maps23Rooted:
      return enumerate_rooted_maps(n, {2, 3});
    case ClassId::Maps13Disconnected:
      return enumerate_labeled_maps(n, {1, 3});
    case ClassId::Maps23Disconnected:
      return enumerate_labeled_maps(n, {2, 3});
    default:
      throw InvalidSelector("class is not map-valued");
  }
}

inline Int count_class(ClassId c, int n) {
  switch (c) {
    case ClassId::LinearClosed:
      return count_linear(n, 0);
    case ClassId::LinearOpen: {
      Int s = 0;
      for (int k = 1; k <= n; ++k) s += count_linear(n, k);
      return s;
    }
    case ClassId::AffineClosed:
      return count_affine(n, 0);
    case ClassId::Bridgeless: {
      // [z^n] B(z) with B = z b(z)
      if (n < 2) return 0;
      return bridgeless_coefficients(n - 1)[n - 1];
    }
    case ClassId::OneVariableOpenNoClosed: {
      auto b = bridgeless_coefficients(std::max(n, 1));
      return n >= 1 ? b[n] : 0;
    }
    case ClassId::OneBridge: {
      // slide bijection: |OB_n| = |B0_n| - [n == 2]
      Int v = count_class(ClassId::Bridgeless, n);
      if (n == 2) v -= 1;
      return v;
    }
    case ClassId::ContextsK:
      return n >= 1 ? count_linear(n + 1, 1) : 0;
    case ClassId::ContextsQ: {
      // Q = K / (1 + K): q_n = k_n - sum_{i=1}^{n-1} k_i q_{n-i}
      std::vector<Int> kcoef(n + 1, 0), q(n + 1, 0);
      for (int i = 1; i <= n; ++i) kcoef[i] = count_linear(i + 1, 1);
      for (int m = 1; m <= n; ++m) {
        q[m] = kcoef[m];
        for (int i = 1; i < m; ++i) q[m] -= kcoef[i] * q[m - i];
      }
      return n >= 1 ? q[n] : 0;
    }
    case ClassId::Maps13Rooted: {
      Int s = 0;
      for (int k = 0; k <= n + 2; ++k) s += count_linear(n + 2, k);
      return s;
    }
    case ClassId::Maps23Rooted:
      // no standalone recurrence; count by exhaustion (series cross-check in tests)
      return (Int)enumerate_maps(ClassId::Maps23Rooted, n).size();
    case ClassId::Maps13Disconnected:
      return count_matchings(n) * count_perms_cycles13(n);
    case ClassId::Maps23Disconnected:
      return count_matchings(n) * count_perms_cycles23(n);
  }
  throw InvalidSelector("unknown class id");
}

// ---------------------------------------------------------------------------
// Empirical distributions (exact counts per parameter value)

inline std::map<long, Int> empirical_distribution(ClassId c, int n, Parameter p) {
  std::map<long, Int> d;
  for (const auto& t : enumerate_terms(c, n)) d[count_parameter(t, p)] += 1;
  return d;
}

enum class MapParameter { Loops, InternalBridges, Bridges, UnivalentVertices, BivalentVertices };

inline long count_map_parameter(const CombinatorialMap& m, MapParameter p) {
  auto s = map_statistics(m);
  switch (p) {
    case MapParameter::Loops: return s.loops;
    case MapParameter::InternalBridges: return s.internal_bridges;
    case MapParameter::Bridges: return s.bridges;
    case MapParameter::UnivalentVertices: {
      auto it = s.degree_histogram.find(1);
      return it == s.degree_histogram.end() ? 0 : it->second;
    }
    case MapParameter::BivalentVertices: {
      auto it = s.degree_histogram.find(2);
      return it == s.degree_histogram.end() ? 0 : it->second;
    }
  }
  return 0;
}

inline std::map<long, Int> empirical_map_distribution(ClassId c, int n, MapParameter p) {
  std::map<long, Int> d;
  for (const auto& m : enumerate_maps(c, n)) d[count_map_parameter(m, p)] += 1;
  return d;
}

}  // namespace linlam
