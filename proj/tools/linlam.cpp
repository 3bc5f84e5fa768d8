// linlam — command-line front end for the linear-lambda-term / trivalent-map
// toolkit: enumeration, counting, bijections, generating-function series,
// the symbolic derivative calculus, distribution statistics, and the
// verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid selector,
// 3 bound exceeded, 4 I/O failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <linlam/verify.hpp>

using namespace linlam;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalidSelector = 2;
constexpr int kExitBoundExceeded = 3;
constexpr int kExitIo = 4;

// All output goes through a string buffer so a failed write never leaves a
// half-emitted file behind.
int write_out(const std::string& data, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return std::cout ? kExitOk : kExitIo;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return kExitIo;
  }
  f << data;
  f.flush();
  if (!f) {
    std::cerr << "error: write failed: " << path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

std::string fmt12(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const std::string& cls, int size, const std::string& format,
                  const std::string& out) {
  ClassId c = class_from_string(cls);
  std::ostringstream os;
  if (class_is_term_valued(c)) {
    auto terms = enumerate_terms(c, size);
    if (format == "csv") {
      os << "size,arity,term\n";
      for (const auto& t : terms)
        os << size << "," << term_arity(t) << ",\"" << format_term(t) << "\"\n";
    } else if (format == "text") {
      for (const auto& t : terms) os << format_term(t) << "\n";
    } else if (format == "json") {
      json arr = json::array();
      for (const auto& t : terms)
        arr.push_back({{"size", size}, {"arity", term_arity(t)}, {"term", format_term(t)},
                       {"tree", term_to_json(t)}});
      os << arr.dump(2) << "\n";
    } else {  // jsonl
      for (const auto& t : terms)
        os << json{{"size", size}, {"arity", term_arity(t)}, {"term", format_term(t)}}.dump()
           << "\n";
    }
  } else if (class_is_context_valued(c)) {
    auto ctxs = c == ClassId::ContextsQ ? enumerate_contexts_Q(size) : enumerate_contexts_K(size);
    if (format == "text" || format == "csv") {
      if (format == "csv") os << "size,context\n";
      for (const auto& cc : ctxs)
        os << (format == "csv" ? std::to_string(size) + ",\"" + format_context(cc) + "\"\n"
                               : format_context(cc) + "\n");
    } else if (format == "json") {
      json arr = json::array();
      for (const auto& cc : ctxs)
        arr.push_back({{"size", size}, {"context", format_context(cc)}});
      os << arr.dump(2) << "\n";
    } else {
      for (const auto& cc : ctxs)
        os << json{{"size", size}, {"context", format_context(cc)}}.dump() << "\n";
    }
  } else {
    auto maps = enumerate_maps(c, size);
    if (format == "text" || format == "csv") {
      if (format == "csv") os << "half_edges,key\n";
      for (const auto& m : maps)
        os << (format == "csv" ? std::to_string(size) + ",\"" + canonical_key(m) + "\"\n"
                               : canonical_key(m) + "\n");
    } else if (format == "json") {
      json arr = json::array();
      for (const auto& m : maps) arr.push_back(map_to_json(m));
      os << arr.dump(2) << "\n";
    } else {
      for (const auto& m : maps) os << map_to_json(m).dump() << "\n";
    }
  }
  return write_out(os.str(), out);
}

// ---------------------------------------------------------------------------
// count

int cmd_count(const std::string& cls, int size, const std::string& format,
              const std::string& out) {
  ClassId c = class_from_string(cls);
  Int v = count_class(c, size);
  std::ostringstream os, num;
  num << v;
  if (format == "json" || format == "jsonl")
    os << json{{"class", cls}, {"size", size}, {"count", num.str()}}.dump() << "\n";
  else if (format == "csv")
    os << "class,size,count\n" << cls << "," << size << "," << num.str() << "\n";
  else
    os << num.str() << "\n";
  return write_out(os.str(), out);
}

// ---------------------------------------------------------------------------
// biject: emit each domain object with its image; verify the round trip

int cmd_biject(const std::string& name, int size, const std::string& format,
               const std::string& out) {
  std::ostringstream os;
  bool all_ok = true;
  auto emit = [&](const std::string& a, const std::string& b, bool ok) {
    if (format == "csv")
      os << "\"" << a << "\",\"" << b << "\"," << (ok ? "ok" : "FAIL") << "\n";
    else if (format == "text")
      os << a << "  ->  " << b << (ok ? "" : "  [round trip FAILED]") << "\n";
    else
      os << json{{"input", a}, {"image", b}, {"roundtrip", ok}}.dump() << "\n";
    all_ok = all_ok && ok;
  };
  if (format == "csv") os << "input,image,roundtrip\n";

  if (name == "tau") {
    for (int k = 0; k <= size; ++k)
      for (const auto& t : enumerate_linear(size, k)) {
        auto m = term_to_map(t);
        emit(format_term(t), canonical_key(m), term_eq(map_to_term(m), t));
      }
  } else if (name == "slide") {
    for (const auto& t : enumerate_terms(ClassId::Bridgeless, size)) {
      if (is_identity_term(t)) continue;
      TermPtr u = slide_forward(t);
      emit(format_term(t), format_term(u), in_OB(u) && term_eq(slide_backward(u), t));
    }
  } else if (name == "psi") {
    for (const auto& t : enumerate_linear(size, 0)) {
      if (t->kind != TermKind::Abs || is_identity_term(t)) continue;
      auto d = psi_decompose(t);
      std::string img = format_context(d.q) + (d.base ? " | -" : " | " + format_term(d.rest));
      emit(format_term(t), img, is_in_Q(d.q) && term_eq(psi_rebuild(d), t));
    }
  } else if (name == "factor-k") {
    for (const auto& c : enumerate_contexts_K(size)) {
      auto qs = factor_context(c);
      std::string img;
      CtxPtr rebuilt = mk_hole();
      bool ok = true;
      for (const auto& q : qs) {
        if (!img.empty()) img += " ; ";
        img += format_context(q);
        ok = ok && is_in_Q(q);
        rebuilt = context_compose(rebuilt, q);
      }
      emit(format_context(c), img, ok && ctx_eq(rebuilt, c));
    }
  } else if (name == "b1") {
    for (const auto& t : enumerate_terms(ClassId::OneVariableOpenNoClosed, size)) {
      auto d = decompose_B1(t);
      if (d.is_var) {
        emit(format_term(t), "x", size == 1);
        continue;
      }
      emit(format_term(t), format_term(d.tm) + " | " + format_term(d.s),
           in_B1(d.tm) && in_B1(d.s) && term_eq(compose_B1(d), t));
    }
  } else if (name == "rooting") {
    for (const auto& t : enumerate_linear(size, 0)) {
      auto open = term_to_map(t);
      auto he = rooting_convert_open_to_halfedge(open);
      emit(canonical_key(open), canonical_key(he),
           maps_isomorphic(rooting_convert_halfedge_to_open(he), open));
    }
  } else {
    throw InvalidSelector("unknown bijection: " + name +
                          " (expected tau|slide|psi|factor-k|b1|rooting)");
  }
  int rc = write_out(os.str(), out);
  if (rc != kExitOk) return rc;
  return all_ok ? kExitOk : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// series

TruncatedSeries series_by_name(const std::string& which, int order) {
  if (which == "T") return solve_T(order);
  if (which == "Tid" || which == "T-id") return solve_T_id(order);
  if (which == "Tsub" || which == "T-sub") return solve_T_sub(order);
  if (which == "S") return solve_S_sub(order);
  if (which == "b") return solve_b(order);
  if (which == "B") {  // B = z·b
    TruncatedSeries b = solve_b(order > 0 ? order - 1 : 0);
    TruncatedSeries out({"z"}, {order});
    for (int n = 1; n <= order; ++n)
      if (b.coeff({n - 1}) != 0) out.at({n}) = b.coeff({n - 1});
    return out;
  }
  if (which == "A") return build_A_binomial(solve_T(order), order, order);
  if (which == "Q") return build_Q(solve_T_sub(order + 2));
  if (which == "pairs13") return build_pairs_13(order, 2 * order);
  if (which == "pairs23") return build_pairs_23(order, order);
  if (which == "D") return build_D(order, order);
  if (which == "Thadamard" || which == "T-hadamard") return build_T_hadamard(order, order / 2 + 1);
  throw InvalidSelector("unknown series: " + which);
}

int cmd_series(const std::string& which, int order, const std::string& format, bool decimal,
               const std::string& out) {
  if (order < 0 || order > 400) throw BoundExceeded("series order out of range (0..400)");
  TruncatedSeries s = series_by_name(which, order);
  std::ostringstream os;
  auto var_header = [&] {
    std::string h;
    for (const auto& v : s.vars) h += (v == "z" ? "n" : v == "u" ? "k" : v) + std::string(",");
    return h;
  };
  if (format == "csv" || format == "text") {
    os << var_header() << (decimal ? "value" : "numerator,denominator") << "\n";
    for (size_t i = 0; i < s.c.size(); ++i) {
      if (s.c[i] == 0) continue;
      std::vector<int> exps(s.vars.size());
      s.decode(i, exps);
      for (int e : exps) os << e << ",";
      if (decimal)
        os << fmt12(s.c[i].get_d());
      else
        os << s.c[i].get_num() << "," << s.c[i].get_den();
      os << "\n";
    }
  } else {  // json / jsonl
    for (size_t i = 0; i < s.c.size(); ++i) {
      if (s.c[i] == 0) continue;
      std::vector<int> exps(s.vars.size());
      s.decode(i, exps);
      json row;
      for (size_t v = 0; v < s.vars.size(); ++v) row[s.vars[v]] = exps[v];
      std::ostringstream nn, dd;
      nn << s.c[i].get_num();
      dd << s.c[i].get_den();
      row["numerator"] = nn.str();
      row["denominator"] = dd.str();
      if (decimal) row["value"] = s.c[i].get_d();
      os << row.dump() << "\n";
    }
  }
  return write_out(os.str(), out);
}

// ---------------------------------------------------------------------------
// symbolic

int cmd_symbolic(int N, const std::string& format, const std::string& out) {
  if (N < 1 || N > 8) throw BoundExceeded("symbolic N out of range (1..8)");
  RatWN w = compute_WN(N);
  InvariantReport rep = check_induction_invariants(N);
  std::ostringstream os;
  if (format == "json" || format == "jsonl") {
    json j = {{"N", N},
              {"numerator", poly_to_string(w.num)},
              {"denominator_power", w.den_pow},
              {"admissible", rep.admissible},
              {"weighted_row0_sum_is_1", rep.weighted_row0},
              {"plain_row0_sum_is_0", rep.plain_row0},
              {"higher_rows_sum_to_0", rep.rows_j}};
    os << (format == "json" ? j.dump(2) : j.dump()) << "\n";
  } else {
    os << "W_" << N << " = h_" << N << " / g^" << w.den_pow << "\n";
    os << "h_" << N << " = " << poly_to_string(w.num) << "\n";
    os << "g   = " << poly_to_string(poly_g()) << "\n";
    os << "(2N-1)-admissible: " << (rep.admissible ? "yes" : "NO")
       << "; weighted row-0 sum = 1: " << (rep.weighted_row0 ? "yes" : "NO")
       << "; plain row-0 sum = 0: " << (rep.plain_row0 ? "yes" : "NO")
       << "; higher rows sum to 0: " << (rep.rows_j ? "yes" : "NO") << "\n";
  }
  int rc = write_out(os.str(), out);
  if (rc != kExitOk) return rc;
  return rep.ok() ? kExitOk : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// stats

int cmd_stats(const std::string& dist, int size, const std::string& trend,
              const std::string& format, const std::string& out) {
  std::ostringstream os;
  if (!trend.empty()) {
    TrendReport rep = schema_conclusion_check(trend);
    json j = {{"name", rep.name}, {"ok", rep.ok},       {"initial", rep.initial},
              {"terminal", rep.terminal}, {"detail", rep.detail}};
    os << j.dump(2) << "\n";
    int rc = write_out(os.str(), out);
    if (rc != kExitOk) return rc;
    return rep.ok ? kExitOk : kExitVerifyFail;
  }

  if (size < 1 || size > 250) throw BoundExceeded("stats size out of range (1..250)");
  TruncatedSeries s;
  if (dist == "identity")
    s = solve_T_id(size);
  else if (dist == "bridges")
    s = solve_T_sub(size);
  else if (dist == "freevars")
    s = solve_T(size);
  else if (dist == "unused")
    s = build_A_binomial(solve_T(size), size, size);
  else
    throw InvalidSelector("unknown distribution: " + dist +
                          " (expected identity|bridges|freevars|unused)");
  Rat total = 0;
  for (int k = 0; k <= s.ord[1]; ++k) total += s.coeff({size, k});
  if (total == 0) throw InvalidSelector("stats: no objects at this size");
  if (format == "json" || format == "jsonl") {
    for (int k = 0; k <= s.ord[1]; ++k) {
      Rat c = s.coeff({size, k});
      if (c == 0) continue;
      std::ostringstream cnt;
      cnt << c.get_num();
      os << json{{"n", size}, {"k", k}, {"count", cnt.str()},
                 {"probability", Rat(c / total).get_d()}}.dump()
         << "\n";
    }
  } else {
    os << "n,k,count,probability\n";
    for (int k = 0; k <= s.ord[1]; ++k) {
      Rat c = s.coeff({size, k});
      if (c == 0) continue;
      os << size << "," << k << "," << c.get_num() << "," << fmt12(Rat(c / total).get_d())
         << "\n";
    }
  }
  return write_out(os.str(), out);
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& suite, const std::string& out) {
  std::vector<std::string> names =
      suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
  std::ostringstream os;
  bool all_ok = true;
  for (const auto& n : names) {
    SuiteResult r = run_verify_suite(n);
    all_ok = all_ok && r.ok;
    os << (r.ok ? "PASS" : "FAIL") << " " << r.name << " (" << fmt12(r.seconds) << "s): "
       << r.detail << "\n";
  }
  int rc = write_out(os.str(), out);
  if (rc != kExitOk) return rc;
  return all_ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact enumeration, bijections, series, and limit-law checks for "
               "linear lambda terms and rooted trivalent maps"};
  app.require_subcommand(1);

  std::string cls = "linear-closed", format = "jsonl", out, bij = "tau", which = "T",
              dist = "identity", trend, suite = "all";
  int size = 8, order = 20, N = 1;
  bool decimal = false;

  auto add_fmt = [&](CLI::App* c) {
    c->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "jsonl", "csv", "text"}));
    c->add_option("--output,-o", out, "output file (default stdout)");
  };

  auto* c_enum = app.add_subcommand("enumerate", "list all objects of a class at a size");
  c_enum->add_option("--class", cls, "object class")->required();
  c_enum->add_option("--size", size, "object size")->required();
  add_fmt(c_enum);

  auto* c_count = app.add_subcommand("count", "count objects of a class at a size");
  c_count->add_option("--class", cls, "object class")->required();
  c_count->add_option("--size", size, "object size")->required();
  add_fmt(c_count);

  auto* c_bij = app.add_subcommand("biject", "apply a bijection to every object at a size");
  c_bij->add_option("--name", bij, "tau|slide|psi|factor-k|b1|rooting")->required();
  c_bij->add_option("--size", size, "object size")->required();
  add_fmt(c_bij);

  auto* c_ser = app.add_subcommand("series", "emit generating-function coefficients");
  c_ser->add_option("--which", which, "T|Tid|Tsub|S|b|B|A|Q|pairs13|pairs23|D|Thadamard")
      ->required();
  c_ser->add_option("--order", order, "truncation order in z")->required();
  c_ser->add_flag("--decimal", decimal, "render values as decimals instead of num/den");
  add_fmt(c_ser);

  auto* c_sym = app.add_subcommand("symbolic", "print h_N and its invariant report");
  c_sym->add_option("--n", N, "derivative order N")->required();
  add_fmt(c_sym);

  auto* c_stats = app.add_subcommand("stats", "distribution tables and trend reports");
  c_stats->add_option("--dist", dist, "identity|bridges|freevars|unused");
  c_stats->add_option("--size", size, "term size n");
  c_stats->add_option("--trend", trend,
                      "emit a trend report instead: identity-poisson|bridges-poisson|"
                      "freevars-gaussian|unused-gaussian|connected-dominates");
  add_fmt(c_stats);

  auto* c_ver = app.add_subcommand("verify", "run verification suites");
  c_ver->add_option("--suite", suite,
                    "counts|bridgeless|bijections|identities|poisson|gaussian|growth|"
                    "symbolic|saddle|determinism|all");
  add_fmt(c_ver);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_enum)) return cmd_enumerate(cls, size, format, out);
    if (app.got_subcommand(c_count)) return cmd_count(cls, size, format, out);
    if (app.got_subcommand(c_bij)) return cmd_biject(bij, size, format, out);
    if (app.got_subcommand(c_ser)) return cmd_series(which, order, format, decimal, out);
    if (app.got_subcommand(c_sym)) return cmd_symbolic(N, format, out);
    if (app.got_subcommand(c_stats)) return cmd_stats(dist, size, trend, format, out);
    if (app.got_subcommand(c_ver)) return cmd_verify(suite, out);
  } catch (const InvalidSelector& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidSelector;
  } catch (const BoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBoundExceeded;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidSelector;
  }
  return kExitOk;
}
