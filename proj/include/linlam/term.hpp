#pragma once
// Linear/affine lambda terms in de Bruijn form, one-hole contexts, and the
// basic structural operations (parsing, printing, plugging, occurrence
// extraction, parameter counting).
//
// Conventions:
//  * A variable node carries a de Bruijn index.  An index i at binder depth d
//    is bound when i < d; otherwise it is free with "excess" e = i - d, which
//    refers to the (e+1)-th enclosing binder of any surrounding context, or to
//    the free label e of a standalone term.
//  * A standalone term is canonical when its distinct free excesses, read in
//    left-to-right order of first occurrence, are exactly 0,1,2,...  For
//    linear terms every free label occurs once, so alpha-equivalence of
//    canonical terms is structural equality.
//  * Size: |x| = 1, |(t u)| = 1 + |t| + |u|, |λx.t| = 1 + |t|.
//  * plug/compose are structural grafts: the plugged subterm keeps its indices
//    verbatim, so a free excess e at the hole binds to the (e+1)-th binder
//    above the hole.  subterm_occurrences extracts subtrees verbatim, making
//    plug(c,u) == t exact by construction.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace linlam {

using json = nlohmann::json;

enum class TermKind { Var, App, Abs };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  int index = 0;    // Var only
  TermPtr left;     // App
  TermPtr right;    // App
  TermPtr body;     // Abs
};

inline TermPtr mk_var(int index) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->index = index;
  return t;
}
inline TermPtr mk_app(TermPtr l, TermPtr r) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}
inline TermPtr mk_abs(TermPtr b) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Abs;
  t->body = std::move(b);
  return t;
}

inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: return a->index == b->index;
    case TermKind::App: return term_eq(a->left, b->left) && term_eq(a->right, b->right);
    case TermKind::Abs: return term_eq(a->body, b->body);
  }
  return false;
}

inline long term_size(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return 1;
    case TermKind::App: return 1 + term_size(t->left) + term_size(t->right);
    case TermKind::Abs: return 1 + term_size(t->body);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Free-variable analysis

namespace detail {
inline void collect_free_occurrences(const TermPtr& t, int depth,
                                     std::vector<int>& excesses_in_order) {
  switch (t->kind) {
    case TermKind::Var:
      if (t->index >= depth) excesses_in_order.push_back(t->index - depth);
      break;
    case TermKind::App:
      collect_free_occurrences(t->left, depth, excesses_in_order);
      collect_free_occurrences(t->right, depth, excesses_in_order);
      break;
    case TermKind::Abs:
      collect_free_occurrences(t->body, depth + 1, excesses_in_order);
      break;
  }
}
inline void collect_binder_usages(const TermPtr& t, std::vector<int>& usages) {
  struct Walker {
    std::vector<int>& usages;
    void count(const TermPtr& t, int depth, int target, int& acc) {
      switch (t->kind) {
        case TermKind::Var:
          if (t->index == depth + target) acc++;
          break;
        case TermKind::App:
          count(t->left, depth, target, acc);
          count(t->right, depth, target, acc);
          break;
        case TermKind::Abs:
          count(t->body, depth + 1, target, acc);
          break;
      }
    }
    void walk(const TermPtr& t) {
      switch (t->kind) {
        case TermKind::Var: break;
        case TermKind::App: walk(t->left); walk(t->right); break;
        case TermKind::Abs: {
          int acc = 0;
          count(t->body, 0, 0, acc);
          usages.push_back(acc);
          walk(t->body);
          break;
        }
      }
    }
  } w{usages};
  w.walk(t);
}
}  // namespace detail

// Free occurrences of t as excesses relative to the root, left-to-right.
inline std::vector<int> free_var_occurrences(const TermPtr& t) {
  std::vector<int> v;
  detail::collect_free_occurrences(t, 0, v);
  return v;
}

// Multiplicity of each free label.
inline std::map<int, int> free_var_counts(const TermPtr& t) {
  std::map<int, int> m;
  for (int e : free_var_occurrences(t)) m[e]++;
  return m;
}

inline bool is_closed(const TermPtr& t) { return free_var_occurrences(t).empty(); }

// Number of distinct free variables.
inline int term_arity(const TermPtr& t) { return (int)free_var_counts(t).size(); }

struct TermClass {
  bool linear = false;   // every bound and free variable used exactly once
  bool affine = false;   // ... at most once
  bool closed = false;
  int arity = 0;
  bool canonical = false;  // free labels are 0..arity-1 in first-occurrence order
};

inline bool is_canonical(const TermPtr& t) {
  std::vector<int> occ = free_var_occurrences(t);
  std::map<int, int> first_seen;
  int next = 0;
  for (int e : occ) {
    if (!first_seen.count(e)) {
      if (e != next) return false;
      first_seen[e] = next++;
    }
  }
  return true;
}

inline TermClass classify(const TermPtr& t) {
  TermClass c;
  auto counts = free_var_counts(t);
  std::vector<int> usages;
  detail::collect_binder_usages(t, usages);
  c.linear = true;
  c.affine = true;
  for (auto& [e, n] : counts) {
    if (n != 1) c.linear = false;
    if (n > 1) c.affine = false;
  }
  for (int u : usages) {
    if (u != 1) c.linear = false;
    if (u > 1) c.affine = false;
  }
  c.closed = counts.empty();
  c.arity = (int)counts.size();
  c.canonical = is_canonical(t);
  return c;
}

// Relabel free variables canonically (first occurrence left-to-right gets 0,1,...).
inline TermPtr canonicalize(const TermPtr& t) {
  std::vector<int> occ = free_var_occurrences(t);
  std::map<int, int> relabel;
  for (int e : occ)
    if (!relabel.count(e)) {
      int nxt = (int)relabel.size();
      relabel[e] = nxt;
    }
  struct R {
    const std::map<int, int>& relabel;
    TermPtr go(const TermPtr& t, int depth) {
      switch (t->kind) {
        case TermKind::Var:
          if (t->index >= depth) return mk_var(depth + relabel.at(t->index - depth));
          return t;
        case TermKind::App: return mk_app(go(t->left, depth), go(t->right, depth));
        case TermKind::Abs: return mk_abs(go(t->body, depth + 1));
      }
      return t;
    }
  } r{relabel};
  return r.go(t, 0);
}

// ---------------------------------------------------------------------------
// One-hole contexts

enum class CtxKind { Hole, AppL, AppR, Abs };

struct Context;
using CtxPtr = std::shared_ptr<const Context>;

struct Context {
  CtxKind kind;
  CtxPtr inner;  // AppL/AppR/Abs
  TermPtr side;  // AppL: (inner side); AppR: (side inner)
};

inline CtxPtr mk_hole() {
  auto c = std::make_shared<Context>();
  c->kind = CtxKind::Hole;
  return c;
}
inline CtxPtr mk_appl(CtxPtr inner, TermPtr side) {
  auto c = std::make_shared<Context>();
  c->kind = CtxKind::AppL;
  c->inner = std::move(inner);
  c->side = std::move(side);
  return c;
}
inline CtxPtr mk_appr(TermPtr side, CtxPtr inner) {
  auto c = std::make_shared<Context>();
  c->kind = CtxKind::AppR;
  c->inner = std::move(inner);
  c->side = std::move(side);
  return c;
}
inline CtxPtr mk_cabs(CtxPtr inner) {
  auto c = std::make_shared<Context>();
  c->kind = CtxKind::Abs;
  c->inner = std::move(inner);
  return c;
}

inline bool ctx_eq(const CtxPtr& a, const CtxPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case CtxKind::Hole: return true;
    case CtxKind::AppL: return ctx_eq(a->inner, b->inner) && term_eq(a->side, b->side);
    case CtxKind::AppR: return ctx_eq(a->inner, b->inner) && term_eq(a->side, b->side);
    case CtxKind::Abs: return ctx_eq(a->inner, b->inner);
  }
  return false;
}

// |Hole| = 0, the identity context has size 0; otherwise as for terms.
inline long context_size(const CtxPtr& c) {
  switch (c->kind) {
    case CtxKind::Hole: return 0;
    case CtxKind::AppL: return 1 + context_size(c->inner) + term_size(c->side);
    case CtxKind::AppR: return 1 + context_size(c->inner) + term_size(c->side);
    case CtxKind::Abs: return 1 + context_size(c->inner);
  }
  return 0;
}

// Number of binders on the root-to-hole path.
inline int hole_depth(const CtxPtr& c) {
  switch (c->kind) {
    case CtxKind::Hole: return 0;
    case CtxKind::AppL: return hole_depth(c->inner);
    case CtxKind::AppR: return hole_depth(c->inner);
    case CtxKind::Abs: return 1 + hole_depth(c->inner);
  }
  return 0;
}

// Structural graft: the hole is replaced by u verbatim; a free excess e at the
// hole ends up bound by the (e+1)-th binder above the hole (or remains free).
inline TermPtr plug(const CtxPtr& c, const TermPtr& u) {
  switch (c->kind) {
    case CtxKind::Hole: return u;
    case CtxKind::AppL: return mk_app(plug(c->inner, u), c->side);
    case CtxKind::AppR: return mk_app(c->side, plug(c->inner, u));
    case CtxKind::Abs: return mk_abs(plug(c->inner, u));
  }
  return u;
}

// (outer ∘ inner)[u] == outer[inner[u]]; sizes add.
inline CtxPtr context_compose(const CtxPtr& outer, const CtxPtr& inner) {
  switch (outer->kind) {
    case CtxKind::Hole: return inner;
    case CtxKind::AppL: return mk_appl(context_compose(outer->inner, inner), outer->side);
    case CtxKind::AppR: return mk_appr(outer->side, context_compose(outer->inner, inner));
    case CtxKind::Abs: return mk_cabs(context_compose(outer->inner, inner));
  }
  return inner;
}

namespace detail {
inline void collect_ctx_frees(const CtxPtr& c, int depth, std::vector<int>& out) {
  switch (c->kind) {
    case CtxKind::Hole: return;
    case CtxKind::AppL:
      collect_ctx_frees(c->inner, depth, out);
      collect_free_occurrences(c->side, depth, out);
      return;
    case CtxKind::AppR:
      collect_free_occurrences(c->side, depth, out);
      collect_ctx_frees(c->inner, depth, out);
      return;
    case CtxKind::Abs:
      collect_ctx_frees(c->inner, depth + 1, out);
      return;
  }
}
inline void collect_ctx_binder_usages(const CtxPtr& c, std::vector<int>& usages) {
  // Plug a sentinel free variable far above every binder; it never aliases a
  // bound index because its excess at the hole exceeds the hole depth.
  TermPtr probe = mk_var(hole_depth(c) + 1000000);
  TermPtr t = plug(c, probe);
  collect_binder_usages(t, usages);
}
}  // namespace detail

// Free occurrences of the context part (the hole contributes nothing),
// as excesses relative to the context root, in left-to-right order
// (the hole position is skipped).
inline std::vector<int> context_free_occurrences(const CtxPtr& c) {
  std::vector<int> out;
  detail::collect_ctx_frees(c, 0, out);
  return out;
}

inline bool context_is_closed(const CtxPtr& c) { return context_free_occurrences(c).empty(); }

// Member of K: non-identity simple closed context, i.e. plugging a fresh
// variable yields a linear term whose only free variable is that one.
inline bool is_simple_closed_context(const CtxPtr& c) {
  if (c->kind == CtxKind::Hole) return false;
  if (!context_is_closed(c)) return false;
  std::vector<int> usages;
  detail::collect_ctx_binder_usages(c, usages);
  for (int u : usages)
    if (u != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Occurrences

struct Occurrence {
  CtxPtr context;   // plug(context, subterm) == original term, structurally
  TermPtr subterm;  // verbatim subtree (free excesses are relative to the hole)
};

inline void subterm_occurrences_rec(const TermPtr& t, const CtxPtr& path,
                                    std::vector<Occurrence>& out) {
  // path is the context from the root down to t, built top-down; we keep a
  // "reversed" spine instead: accumulate via compose at the end.  To stay
  // O(n^2) rather than O(n^3) we build contexts by wrapping on the way back.
  out.push_back({path, t});
  switch (t->kind) {
    case TermKind::Var: break;
    case TermKind::App: {
      std::vector<Occurrence> l, r;
      subterm_occurrences_rec(t->left, mk_hole(), l);
      subterm_occurrences_rec(t->right, mk_hole(), r);
      for (auto& o : l) out.push_back({context_compose(path, mk_appl(o.context, t->right)), o.subterm});
      for (auto& o : r) out.push_back({context_compose(path, mk_appr(t->left, o.context)), o.subterm});
      break;
    }
    case TermKind::Abs: {
      std::vector<Occurrence> b;
      subterm_occurrences_rec(t->body, mk_hole(), b);
      for (auto& o : b) out.push_back({context_compose(path, mk_cabs(o.context)), o.subterm});
      break;
    }
  }
}

// All subterm occurrences (including the trivial one with the identity
// context), in pre-order.
inline std::vector<Occurrence> subterm_occurrences(const TermPtr& t) {
  std::vector<Occurrence> out;
  subterm_occurrences_rec(t, mk_hole(), out);
  return out;
}

// Closedness of a subtree *in place*: no variable escapes it.
inline bool subtree_closed(const TermPtr& t) {
  return free_var_occurrences(t).empty();
}

// ---------------------------------------------------------------------------
// Parameters

enum class Parameter {
  IdentitySubterms,       // occurrences of λx.x
  ClosedProperSubterms,   // proper subterm occurrences that are closed in place
  FreeVariables,          // arity
  UnusedAbstractions,     // binders with zero uses
};

inline bool is_identity_term(const TermPtr& t) {
  return t->kind == TermKind::Abs && t->body->kind == TermKind::Var && t->body->index == 0;
}

inline long count_parameter(const TermPtr& t, Parameter p) {
  switch (p) {
    case Parameter::IdentitySubterms: {
      long n = is_identity_term(t) ? 1 : 0;
      switch (t->kind) {
        case TermKind::Var: return n;
        case TermKind::App: return n + count_parameter(t->left, p) + count_parameter(t->right, p);
        case TermKind::Abs: return n + count_parameter(t->body, p);
      }
      return n;
    }
    case Parameter::ClosedProperSubterms: {
      long n = 0;
      auto occ = subterm_occurrences(t);
      for (size_t i = 1; i < occ.size(); ++i)  // skip the trivial occurrence
        if (subtree_closed(occ[i].subterm)) n++;
      return n;
    }
    case Parameter::FreeVariables:
      return term_arity(t);
    case Parameter::UnusedAbstractions: {
      std::vector<int> usages;
      detail::collect_binder_usages(t, usages);
      long n = 0;
      for (int u : usages)
        if (u == 0) n++;
      return n;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Maximal subterm containing a given free variable
//
// For linear t with free label y, the subterms whose free-variable set is
// exactly {y} are linearly ordered by inclusion; return the biggest one with
// its (simple) context.

inline std::pair<CtxPtr, TermPtr> maximal_subterm_with_variable(const TermPtr& t, int y) {
  struct Finder {
    // excess of y relative to the current node
    std::pair<CtxPtr, TermPtr> go(const TermPtr& t, int y_excess) {
      auto counts = free_var_counts(t);
      if (!counts.count(y_excess))
        throw std::invalid_argument("maximal_subterm_with_variable: variable not free in term");
      if (counts.size() == 1) return {mk_hole(), t};  // only free variable is y
      switch (t->kind) {
        case TermKind::Var:
          return {mk_hole(), t};
        case TermKind::App: {
          auto lc = free_var_counts(t->left);
          if (lc.count(y_excess)) {
            auto [c, u] = go(t->left, y_excess);
            return {mk_appl(c, t->right), u};
          } else {
            auto [c, u] = go(t->right, y_excess);
            return {mk_appr(t->left, c), u};
          }
        }
        case TermKind::Abs: {
          auto [c, u] = go(t->body, y_excess + 1);
          return {mk_cabs(c), u};
        }
      }
      return {mk_hole(), t};
    }
  } f;
  return f.go(t, y);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {
inline std::string binder_name(int i) {
  std::string s;
  i++;
  while (i > 0) {
    i--;
    s.insert(s.begin(), char('a' + i % 26));
    i /= 26;
  }
  return s;
}
inline void format_rec(const TermPtr& t, std::vector<std::string>& env, int& fresh,
                       std::string& out) {
  switch (t->kind) {
    case TermKind::Var: {
      int d = (int)env.size();
      if (t->index < d) {
        out += env[d - 1 - t->index];
      } else {
        out += "x" + std::to_string(t->index - d);
      }
      break;
    }
    case TermKind::App: {
      bool pl = t->left->kind == TermKind::Abs;
      bool pr = t->right->kind != TermKind::Var;
      if (pl) out += "(";
      format_rec(t->left, env, fresh, out);
      if (pl) out += ")";
      out += " ";
      if (pr) out += "(";
      format_rec(t->right, env, fresh, out);
      if (pr) out += ")";
      break;
    }
    case TermKind::Abs: {
      std::string nm = binder_name(fresh++);
      out += "\xce\xbb" + nm + ".";
      env.push_back(nm);
      format_rec(t->body, env, fresh, out);
      env.pop_back();
      break;
    }
  }
}
}  // namespace detail

// Human syntax: binders named a,b,c,... in pre-order; free labels printed x0,x1,...
inline std::string format_term(const TermPtr& t) {
  std::vector<std::string> env;
  int fresh = 0;
  std::string out;
  detail::format_rec(t, env, fresh, out);
  return out;
}

namespace detail {
inline void format_ctx_rec(const CtxPtr& c, std::vector<std::string>& env, int& fresh,
                           std::string& out) {
  switch (c->kind) {
    case CtxKind::Hole: out += "[]"; break;
    case CtxKind::AppL: {
      bool pl = c->inner->kind == CtxKind::Abs;
      if (pl) out += "(";
      format_ctx_rec(c->inner, env, fresh, out);
      if (pl) out += ")";
      out += " ";
      bool pr = c->side->kind != TermKind::Var;
      if (pr) out += "(";
      format_rec(c->side, env, fresh, out);
      if (pr) out += ")";
      break;
    }
    case CtxKind::AppR: {
      bool pl = c->side->kind == TermKind::Abs;
      if (pl) out += "(";
      format_rec(c->side, env, fresh, out);
      if (pl) out += ")";
      out += " (";
      format_ctx_rec(c->inner, env, fresh, out);
      out += ")";
      break;
    }
    case CtxKind::Abs: {
      std::string nm = binder_name(fresh++);
      out += "\xce\xbb" + nm + ".";
      env.push_back(nm);
      format_ctx_rec(c->inner, env, fresh, out);
      env.pop_back();
      break;
    }
  }
}
}  // namespace detail

// Same syntax as format_term; the hole prints as []
inline std::string format_context(const CtxPtr& c) {
  std::vector<std::string> env;
  int fresh = 0;
  std::string out;
  detail::format_ctx_rec(c, env, fresh, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at byte " + std::to_string(pos) + ")"), position(pos) {}
};

namespace detail {
struct Parser {
  const std::string& s;
  size_t i = 0;
  std::vector<std::string> env;            // binder names, innermost last
  std::vector<std::string> free_names;     // first-occurrence order
  explicit Parser(const std::string& s) : s(s) {}

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) i++;
  }
  bool eat_lambda() {
    if (i < s.size() && s[i] == '\\') {
      i++;
      return true;
    }
    if (i + 1 < s.size() && (unsigned char)s[i] == 0xce && (unsigned char)s[i + 1] == 0xbb) {
      i += 2;
      return true;
    }
    return false;
  }
  bool peek_lambda() const {
    if (i < s.size() && s[i] == '\\') return true;
    return i + 1 < s.size() && (unsigned char)s[i] == 0xce && (unsigned char)s[i + 1] == 0xbb;
  }
  static bool name_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool name_char(char c) {
    return name_start(c) || (c >= '0' && c <= '9') || c == '\'';
  }
  std::string parse_name() {
    skip_ws();
    if (i >= s.size() || !name_start(s[i])) throw ParseError("expected identifier", i);
    size_t j = i;
    while (j < s.size() && name_char(s[j])) j++;
    std::string nm = s.substr(i, j - i);
    i = j;
    return nm;
  }
  TermPtr parse_term() {
    skip_ws();
    if (eat_lambda()) {
      std::string nm = parse_name();
      skip_ws();
      if (i >= s.size() || s[i] != '.') throw ParseError("expected '.' after binder", i);
      i++;
      env.push_back(nm);
      TermPtr b = parse_term();
      env.pop_back();
      return mk_abs(b);
    }
    TermPtr t = parse_atom();
    for (;;) {
      skip_ws();
      if (i >= s.size() || s[i] == ')') break;
      if (peek_lambda()) {
        // λ binds as far right as possible, also as the right arm of an app.
        TermPtr r = parse_term();
        t = mk_app(t, r);
        break;
      }
      TermPtr r = parse_atom();
      t = mk_app(t, r);
    }
    return t;
  }
  TermPtr parse_atom() {
    skip_ws();
    if (i >= s.size()) throw ParseError("unexpected end of input", i);
    if (s[i] == '(') {
      i++;
      TermPtr t = parse_term();
      skip_ws();
      if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
      i++;
      return t;
    }
    if (eat_lambda()) {
      std::string nm = parse_name();
      skip_ws();
      if (i >= s.size() || s[i] != '.') throw ParseError("expected '.' after binder", i);
      i++;
      env.push_back(nm);
      TermPtr b = parse_term();
      env.pop_back();
      return mk_abs(b);
    }
    std::string nm = parse_name();
    // bound?
    for (int d = (int)env.size() - 1; d >= 0; --d) {
      if (env[d] == nm) return mk_var((int)env.size() - 1 - d);
    }
    // free: canonical label by first occurrence
    int label = -1;
    for (size_t k = 0; k < free_names.size(); ++k)
      if (free_names[k] == nm) label = (int)k;
    if (label < 0) {
      label = (int)free_names.size();
      free_names.push_back(nm);
    }
    return mk_var((int)env.size() + label);
  }
};
}  // namespace detail

// Accepts λ (UTF-8) or backslash for binders; free names get canonical labels
// in first-occurrence order.
inline TermPtr parse_term(const std::string& src) {
  detail::Parser p(src);
  TermPtr t = p.parse_term();
  p.skip_ws();
  if (p.i != src.size()) throw ParseError("trailing input", p.i);
  return t;
}

// ---------------------------------------------------------------------------
// JSON

inline json term_to_json(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return json{{"kind", "var"}, {"index", t->index}};
    case TermKind::App:
      return json{{"kind", "app"}, {"left", term_to_json(t->left)}, {"right", term_to_json(t->right)}};
    case TermKind::Abs: return json{{"kind", "abs"}, {"body", term_to_json(t->body)}};
  }
  return json();
}

inline TermPtr term_from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "var") return mk_var(j.at("index").get<int>());
  if (k == "app") return mk_app(term_from_json(j.at("left")), term_from_json(j.at("right")));
  if (k == "abs") return mk_abs(term_from_json(j.at("body")));
  throw std::invalid_argument("term_from_json: unknown kind '" + k + "'");
}

inline json context_to_json(const CtxPtr& c) {
  switch (c->kind) {
    case CtxKind::Hole: return json{{"kind", "hole"}};
    case CtxKind::AppL:
      return json{{"kind", "appl"}, {"inner", context_to_json(c->inner)}, {"side", term_to_json(c->side)}};
    case CtxKind::AppR:
      return json{{"kind", "appr"}, {"inner", context_to_json(c->inner)}, {"side", term_to_json(c->side)}};
    case CtxKind::Abs: return json{{"kind", "abs"}, {"inner", context_to_json(c->inner)}};
  }
  return json();
}

inline CtxPtr context_from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "hole") return mk_hole();
  if (k == "appl") return mk_appl(context_from_json(j.at("inner")), term_from_json(j.at("side")));
  if (k == "appr") return mk_appr(term_from_json(j.at("side")), context_from_json(j.at("inner")));
  if (k == "abs") return mk_cabs(context_from_json(j.at("inner")));
  throw std::invalid_argument("context_from_json: unknown kind '" + k + "'");
}

}  // namespace linlam
