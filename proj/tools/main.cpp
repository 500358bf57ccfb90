#include <CLI11.hpp>
#include <iostream>

#include "ncx/io.hpp"

using namespace ncx;

namespace {

struct Options {
  std::string file, report;
  std::uint64_t seed = 0;
  std::size_t budget = 4096;
  std::optional<int> window_cap;
  std::string command;
  std::vector<std::string> names;
  std::optional<int> at, amp, n, depth, width;
  bool resolved = false;
};

struct Outcome {
  json result;
  bool fail = false;
};

std::string dims_line(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

template <class F>
class Runner {
 public:
  Runner(Workspace<F> ws, const Options& o) : ws_(std::move(ws)), o_(o) {}

  Outcome run() {
    const auto& c = o_.command;
    if (c == "homology") return homology();
    if (c == "acyclic") return acyclic();
    if (c == "cone") return cone_cmd();
    if (c == "resolve") return resolve();
    if (c == "syzygy") return syzygy_cmd();
    if (c == "complete-res") return complete_res();
    if (c == "ext") return ext_cmd();
    if (c == "perfect") return perfect();
    if (c == "sing-hom") return sing_hom();
    if (c == "buchweitz") return buchweitz();
    if (c == "tate") return tate();
    if (c == "equiv") return equiv();
    throw Error("unknown-command", c);
  }

 private:
  const std::string& name(std::size_t i) const {
    if (i >= o_.names.size()) throw Error("missing-argument", o_.command + " needs " + std::to_string(i + 1) + " names");
    return o_.names[i];
  }

  NComplex<F> complex(std::size_t i) const {
    const auto& obj = ws_.get(name(i));
    if (auto X = std::get_if<NComplex<F>>(&obj)) return *X;
    if (auto X = std::get_if<MonChain<F>>(&obj)) return mmor_iota(*X, 0);
    if (auto M = std::get_if<Module<F>>(&obj)) return mu(*M, 0, 1, ws_.N);
    throw Error("wrong-kind", "'" + name(i) + "' is not a complex");
  }

  MonChain<F> monchain(std::size_t i) const {
    const auto& obj = ws_.get(name(i));
    if (auto X = std::get_if<MonChain<F>>(&obj)) return *X;
    if (auto M = std::get_if<Module<F>>(&obj)) {
      if (ws_.N != 2) throw Error("wrong-kind", "a module is a chain only for N = 2");
      return MonChain<F>{{*M}, {}};
    }
    throw Error("wrong-kind", "'" + name(i) + "' is not a monchain");
  }

  int need(const std::optional<int>& v, const char* flag) const {
    if (!v) throw Error("missing-argument", std::string(o_.command) + " needs " + flag);
    return *v;
  }

  static std::vector<std::size_t> dims(const NComplex<F>& X) {
    std::vector<std::size_t> v;
    for (const auto& M : X.obj) v.push_back(M.dim());
    return v;
  }

  static json jtypes(const MonChain<F>& X) {
    json j = json::array();
    for (const auto& M : X.obj) j.push_back(jordan_type(M));
    return j;
  }

  Outcome homology() {
    auto X = complex(0);
    const int N = ws_.N;
    json rows = json::array();
    std::vector<int> ns, rs;
    if (o_.at) ns = {*o_.at};
    else
      for (int k = X.lo; k <= X.hi(); ++k) ns.push_back(k);
    if (o_.amp) rs = {*o_.amp};
    else
      for (int r = 1; r <= N - 1; ++r) rs.push_back(r);
    std::cout << "n\tr\tZ\tB\tH\n";
    for (int n : ns)
      for (int r : rs) {
        auto h = ncx::homology(X, n, r);
        std::size_t z = h.Z.mod.dim(), b = h.B.mod.dim(), hh = h.dim();
        std::cout << n << "\t" << r << "\t" << z << "\t" << b << "\t" << hh << "\n";
        rows.push_back({{"n", n}, {"r", r}, {"Z", z}, {"B", b}, {"H", hh}});
      }
    return {json{{"table", rows}}};
  }

  Outcome acyclic() {
    auto X = complex(0);
    json bad = json::array();
    for (int k = X.lo - X.N; k <= X.hi() + X.N; ++k)
      if (!is_acyclic_at(X, k)) bad.push_back(k);
    bool ok = bad.empty();
    std::cout << "acyclic: " << (ok ? "true" : "false") << "\n";
    if (!ok) std::cout << "non-acyclic positions: " << bad.dump() << "\n";
    return {json{{"acyclic", ok}, {"non_acyclic_positions", bad}}};
  }

  Outcome cone_cmd() {
    const auto& obj = ws_.get(name(0));
    auto nm = std::get_if<NamedMap<F>>(&obj);
    if (!nm) throw Error("wrong-kind", "'" + name(0) + "' is not a chain map");
    auto C = cone(nm->map);
    std::cout << "cone lo " << C.lo << " dims " << dims_line(dims(C)) << "\n";
    return {json{{"cone", io::complex_to_json(C)}}};
  }

  Outcome resolve() {
    auto X = complex(0);
    const int N = X.N;
    int L = o_.depth ? X.hi() - *o_.depth : X.lo - 2 * N;
    Keller<F> K(ws_.alg, X);
    K.extend_to(L);
    auto P = K.resolution();
    auto C = cone(K.augmentation());
    int from = L + N - 1, to = X.hi() + N;
    bool ok = is_acyclic_on(C, from, to);
    json ranks = json::array();
    for (const auto& M : P.obj) ranks.push_back(M.dim() / ws_.alg.m);
    std::cout << "resolution lo " << P.lo << " free ranks " << ranks.dump() << "\n";
    std::cout << "cone acyclic on [" << from << "," << to << "]: " << (ok ? "true" : "false") << "\n";
    return {json{{"resolution", io::complex_to_json(P)},
                 {"free_ranks", ranks},
                 {"certified_acyclic", {from, to}},
                 {"cone_acyclic", ok},
                 {"cutoff", L}},
            !ok};
  }

  Outcome syzygy_cmd() {
    auto X = complex(0);
    int n = need(o_.n, "--n");
    MonChain<F> S;
    int cutoff = 0;
    if (o_.resolved) {
      Keller<F> K(ws_.alg, X);
      cutoff = std::min(n - 2 * X.N, X.lo - 1);
      K.extend_to(cutoff);
      S = syzygy(K.resolution(), n);
    } else {
      S = syzygy(X, n);
    }
    std::cout << "syzygy " << n << " jordan types " << jtypes(S).dump() << "\n";
    json r{{"syzygy", io::monchain_to_json(S)}, {"jordan_types", jtypes(S)}, {"projective", mmor_is_projective(ws_.alg, S)}};
    if (o_.resolved) r["cutoff"] = cutoff;
    return {r};
  }

  Outcome complete_res() {
    auto X = monchain(0);
    const int N = X.N();
    int w = o_.width ? *o_.width : N + 1;
    LazyAPC<F> P(ws_.alg, X, o_.window_cap);
    auto W = P.window(-w - N, w + N);
    bool acyc = true, tac = true, free = true;
    for (int k = -w; k <= w; ++k) {
      acyc = acyc && is_acyclic_at(W, k);
      tac = tac && is_totally_acyclic_at(ws_.alg, W, k);
    }
    for (const auto& M : W.obj) free = free && is_standard_free(ws_.alg, M);
    auto om = P.omega_iso();
    json ranks = json::array();
    for (const auto& M : W.obj) ranks.push_back(M.dim() / ws_.alg.m);
    std::cout << "window [" << W.lo << "," << W.hi() << "] free ranks " << ranks.dump() << "\n";
    std::cout << "acyclic " << acyc << " totally acyclic " << tac << " omega1 iso " << om.ok << "\n";
    bool ok = acyc && tac && free && om.ok;
    return {json{{"complex", io::complex_to_json(W)},
                 {"free_ranks", ranks},
                 {"checked_window", {-w, w}},
                 {"acyclic", acyc},
                 {"totally_acyclic", tac},
                 {"free", free},
                 {"omega1_iso", om.ok},
                 {"cap", P.cap()}},
            !ok};
  }

  Outcome ext_cmd() {
    auto X = complex(0), Y = complex(1);
    int n = need(o_.n, "--n");
    auto E = ext(ws_.alg, X, Y, n);
    std::cout << "dim Ext^" << n << " = " << E.dim << "\n";
    return {json{{"n", n}, {"dim", E.dim}}};
  }

  Outcome perfect() {
    auto X = complex(0);
    auto r = is_perfect(ws_.alg, X, o_.window_cap);
    std::cout << "perfect: " << (r.perfect ? "true" : "false") << "\n";
    json j{{"perfect", r.perfect}, {"syzygy_index", r.degree}, {"steps", r.steps}};
    if (!r.perfect) j["cycle_with"] = r.repeat_of;
    return {j};
  }

  Outcome sing_hom() {
    auto X = complex(0), Y = complex(1);
    auto s = hom_sing(ws_.alg, X, Y, o_.window_cap);
    std::cout << "dim Hom_sg = " << s.dim << " (Hom_D " << s.dhom_dim << ", cutoff " << s.cutoff << ")\n";
    return {json{{"dim", s.dim}, {"hom_D_dim", s.dhom_dim}, {"cutoff", s.cutoff}, {"history", s.history}}};
  }

  Outcome buchweitz() {
    auto X = monchain(0), Y = monchain(1);
    auto r = buchweitz_verify(ws_.alg, X, Y, o_.window_cap);
    std::cout << (r.pass ? "PASS" : "FAIL") << " stable " << r.stable_dim << " singular " << r.sing_dim << "\n";
    return {json{{"pass", r.pass},
                 {"stable_dim", r.stable_dim},
                 {"singular_dim", r.sing_dim},
                 {"quasi_iso", r.quasi_iso},
                 {"omega1_iso", r.omega_iso},
                 {"perfect_piece", r.perfect_piece},
                 {"full_rank", r.injective},
                 {"cutoff", r.cutoff}},
            !r.pass};
  }

  Outcome tate() {
    auto X = monchain(0), Y = monchain(1);
    int n = need(o_.n, "--n");
    auto t = tate_hom(ws_.alg, X, Y, n, o_.window_cap);
    std::cout << "dim Hom(P_X, Sigma^" << n << " P_Y) = " << t.dim << " (window " << t.window << ")\n";
    return {json{{"n", n}, {"dim", t.dim}, {"window", t.window}, {"history", t.history}}};
  }

  Outcome equiv() {
    auto X = complex(0), Y = complex(1);
    auto e = find_homotopy_equivalence(ws_.alg, X, Y, o_.budget, o_.seed);
    std::string st = e.status == Equivalence<F>::Status::found    ? "found"
                      : e.status == Equivalence<F>::Status::absent ? "absent"
                                                                   : "budget_exceeded";
    std::cout << "equivalence: " << st << " after " << e.tried << " candidates\n";
    json j{{"status", st}, {"tried", e.tried}};
    if (e.u) {
      json u = json::array(), v = json::array();
      for (const auto& c : e.u->comps) u.push_back(io::mat_to_json(c));
      for (const auto& c : e.v->comps) v.push_back(io::mat_to_json(c));
      j["u"] = {{"lo", e.u->lo}, {"comps", u}};
      j["v"] = {{"lo", e.v->lo}, {"comps", v}};
    }
    return {j};
  }

  Workspace<F> ws_;
  Options o_;
};

template <class F>
Outcome dispatch(const F& f, const json& doc, const Options& o, json& header) {
  auto ws = workspace_from_json(f, doc);
  header["algebra"] = {{"m", ws.alg.m}};
  header["N"] = ws.N;
  return Runner<F>(std::move(ws), o).run();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-complex homological algebra over k[x]/(x^m)"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-f,--file", o.file, "workspace JSON file")->required();
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--budget", o.budget, "equivalence search budget");
  app.add_option("--window-cap", o.window_cap, "cap for windows, truncations and syzygy walks");
  app.add_option("--report", o.report, "write the structured report here");

  auto sub = [&](const char* nm, const char* desc, int names) {
    auto* s = app.add_subcommand(nm, desc);
    s->add_option("names", o.names, "object names")->expected(names);
    s->callback([&o, nm] { o.command = nm; });
    return s;
  };
  auto* h = sub("homology", "amplitude homology", 1);
  h->add_option("--at", o.at);
  h->add_option("--amp", o.amp);
  sub("acyclic", "acyclicity positions", 1);
  sub("cone", "mapping cone of a chain map", 1);
  sub("resolve", "projective resolution", 1)->add_option("--depth", o.depth);
  auto* sz = sub("syzygy", "syzygy chain", 1);
  sz->add_option("--n", o.n);
  sz->add_flag("--resolved", o.resolved, "take the syzygy of the projective resolution");
  sub("complete-res", "complete resolution", 1)->add_option("--width", o.width);
  sub("ext", "Ext dimension", 2)->add_option("--n", o.n);
  sub("perfect", "perfectness", 1);
  sub("sing-hom", "Hom in the singularity category", 2);
  sub("buchweitz", "stable versus singular Hom", 2);
  sub("tate", "Hom between complete resolutions", 2)->add_option("--n", o.n);
  sub("equiv", "homotopy equivalence search", 2);

  CLI11_PARSE(app, argc, argv);

  json report{{"command", o.command}, {"names", o.names}, {"seed", o.seed}, {"budget", o.budget}};
  if (o.window_cap) report["window_cap"] = *o.window_cap;
  for (auto [k, v] : {std::pair{"at", o.at}, {"amp", o.amp}, {"n", o.n}, {"depth", o.depth}, {"width", o.width}})
    if (v) report["args"][k] = *v;
  int code = 0;
  try {
    json doc = read_json(o.file);
    if (!doc.contains("field") || !doc["field"].contains("kind")) throw Error("parse-error", "field.kind missing");
    std::string kind = doc["field"]["kind"].get<std::string>();
    Outcome out;
    if (kind == "Fp") {
      if (!doc["field"].contains("p")) throw Error("parse-error", "field.p missing");
      PrimeField f(doc["field"]["p"].get<std::int64_t>());
      report["field"] = io::field_to_json(f);
      out = dispatch(f, doc, o, report);
    } else if (kind == "Q") {
      report["field"] = io::field_to_json(Rationals{});
      out = dispatch(Rationals{}, doc, o, report);
    } else {
      throw Error("parse-error", "unknown field kind '" + kind + "'");
    }
    report["result"] = out.result;
    report["status"] = out.fail ? "FAIL" : "ok";
    code = out.fail ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << "error [" << e.code << "]: " << e.what() << "\n";
    report["status"] = "error";
    report["error"] = {{"code", e.code}, {"message", e.what()}};
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["status"] = "error";
    report["error"] = {{"code", "internal"}, {"message", e.what()}};
    code = 2;
  }
  if (!o.report.empty()) {
    std::ofstream out(o.report);
    out << report.dump(2) << "\n";
  }
  return code;
}
