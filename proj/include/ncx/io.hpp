#pragma once

#include <fstream>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "ncx/derived.hpp"

namespace ncx {

using json = nlohmann::json;

template <class F>
struct NamedMap {
  std::string source, target;
  ChainMap<F> map;
};

template <class F>
using Object = std::variant<Module<F>, NComplex<F>, MonChain<F>, NamedMap<F>>;

template <class F>
struct Workspace {
  Algebra<F> alg;
  int N = 2;
  std::map<std::string, Object<F>> objects;

  const Object<F>& get(const std::string& name) const {
    auto it = objects.find(name);
    if (it == objects.end()) throw Error("unknown-name", "no object named '" + name + "'");
    return it->second;
  }
};

namespace io {

template <class F>
json entry(const F& f, const typename F::value_type& v) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    (void)f;
    return v;
  } else {
    return f.str(v);
  }
}

template <class F>
typename F::value_type parse_entry(const F& f, const json& j, const std::string& where) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    if (!j.is_number_integer()) throw Error("parse-error", where + ": expected integer entry");
    auto v = j.get<std::int64_t>();
    if (v < 0 || v >= f.p) throw Error("parse-error", where + ": entry out of range 0..p-1");
    return v;
  } else {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    if (!j.is_string()) throw Error("parse-error", where + ": expected \"a/b\" string entry");
    return Rationals::parse(j.get<std::string>());
  }
}

template <class F>
json mat_to_json(const Mat<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(entry(m.field, m(i, c)));
    rows.push_back(row);
  }
  return rows;
}

template <class F>
Mat<F> mat_from_json(const F& f, const json& j, std::size_t r, std::size_t c, const std::string& where) {
  if (!j.is_array() || j.size() != r)
    throw Error("parse-error", where + ": expected " + std::to_string(r) + " rows");
  Mat<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c)
      throw Error("parse-error", where + ": row " + std::to_string(i) + " needs " + std::to_string(c) + " entries");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = parse_entry(f, j[i][k], where);
  }
  return m;
}

template <class F>
json module_to_json(const Module<F>& M) {
  return json{{"kind", "module"}, {"dim", M.dim()}, {"action", mat_to_json(M.act)}};
}

template <class F>
Module<F> module_from_json(const Algebra<F>& A, const json& j, const std::string& where) {
  if (!j.is_object() || j.value("kind", "") != "module") throw Error("parse-error", where + ": expected a module");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 0)
    throw Error("parse-error", where + ": missing dim");
  std::size_t d = j["dim"].get<std::size_t>();
  Module<F> M(mat_from_json(A.field, j.value("action", json::array()), d, d, where + ".action"));
  if (!is_module(A, M)) throw Error("invariant-violation", where + ": action^m != 0");
  return M;
}

template <class F>
json complex_to_json(const NComplex<F>& X) {
  json objs = json::array(), diffs = json::array();
  for (const auto& M : X.obj) objs.push_back(module_to_json(M));
  for (const auto& d : X.d) diffs.push_back(mat_to_json(d));
  return json{{"kind", "ncomplex"}, {"lo", X.lo}, {"objects", objs}, {"diffs", diffs}};
}

template <class F>
NComplex<F> complex_from_json(const Algebra<F>& A, int N, const json& j, const std::string& where) {
  if (!j.contains("lo") || !j["lo"].is_number_integer()) throw Error("parse-error", where + ": missing lo");
  NComplex<F> X(A.field, N, j["lo"].get<int>());
  const auto& objs = j.value("objects", json::array());
  for (std::size_t i = 0; i < objs.size(); ++i)
    X.obj.push_back(module_from_json(A, objs[i], where + ".objects[" + std::to_string(i) + "]"));
  const auto& diffs = j.value("diffs", json::array());
  std::size_t need = X.obj.empty() ? 0 : X.obj.size() - 1;
  if (diffs.size() != need) throw Error("parse-error", where + ": expected " + std::to_string(need) + " diffs");
  for (std::size_t i = 0; i < need; ++i)
    X.d.push_back(mat_from_json(A.field, diffs[i], X.obj[i + 1].dim(), X.obj[i].dim(),
                                where + ".diffs[" + std::to_string(i) + "]"));
  auto v = validate(A, X);
  if (!v.ok) throw Error("invariant-violation", where + ": " + v.message + " at degree " + std::to_string(v.degree));
  return X;
}

template <class F>
json monchain_to_json(const MonChain<F>& X) {
  json objs = json::array(), mons = json::array();
  for (const auto& M : X.obj) objs.push_back(module_to_json(M));
  for (const auto& m : X.mono) mons.push_back(mat_to_json(m));
  return json{{"kind", "monchain"}, {"objects", objs}, {"monics", mons}};
}

template <class F>
MonChain<F> monchain_from_json(const Algebra<F>& A, int N, const json& j, const std::string& where) {
  MonChain<F> X;
  const auto& objs = j.value("objects", json::array());
  if (static_cast<int>(objs.size()) != N - 1)
    throw Error("parse-error", where + ": expected " + std::to_string(N - 1) + " objects");
  for (std::size_t i = 0; i < objs.size(); ++i)
    X.obj.push_back(module_from_json(A, objs[i], where + ".objects[" + std::to_string(i) + "]"));
  const auto& mons = j.value("monics", json::array());
  if (mons.size() + 1 != objs.size()) throw Error("parse-error", where + ": expected one monic fewer than objects");
  for (std::size_t i = 0; i < mons.size(); ++i)
    X.mono.push_back(mat_from_json(A.field, mons[i], X.obj[i + 1].dim(), X.obj[i].dim(),
                                   where + ".monics[" + std::to_string(i) + "]"));
  auto v = mmor_validate(A, X);
  if (!v.ok) throw Error("invariant-violation", where + ": " + v.message + " at position " + std::to_string(v.degree));
  return X;
}

template <class F>
json field_to_json(const F& f) {
  if constexpr (std::is_same_v<F, PrimeField>) return json{{"kind", "Fp"}, {"p", f.p}};
  else {
    (void)f;
    return json{{"kind", "Q"}};
  }
}

}  // namespace io

template <class F>
json to_json(const Workspace<F>& ws) {
  json objs = json::object();
  for (const auto& [name, o] : ws.objects) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Module<F>>) objs[name] = io::module_to_json(v);
          else if constexpr (std::is_same_v<T, NComplex<F>>) objs[name] = io::complex_to_json(v);
          else if constexpr (std::is_same_v<T, MonChain<F>>) objs[name] = io::monchain_to_json(v);
          else {
            json comps = json::array();
            for (const auto& c : v.map.comps) comps.push_back(io::mat_to_json(c));
            objs[name] = json{{"kind", "chainmap"}, {"source", v.source}, {"target", v.target}, {"lo", v.map.lo},
                              {"comps", comps}};
          }
        },
        o);
  }
  return json{{"field", io::field_to_json(ws.alg.field)}, {"algebra", {{"m", ws.alg.m}}}, {"N", ws.N}, {"objects", objs}};
}

template <class F>
Workspace<F> workspace_from_json(const F& f, const json& doc) {
  Workspace<F> ws;
  if (!doc.contains("algebra") || !doc["algebra"].contains("m")) throw Error("parse-error", "algebra.m missing");
  if (!doc.contains("N") || !doc["N"].is_number_integer()) throw Error("parse-error", "N missing");
  ws.alg = Algebra<F>(f, doc["algebra"]["m"].get<int>());
  ws.N = doc["N"].get<int>();
  if (ws.N < 2) throw Error("invariant-violation", "N must be >= 2");
  const auto& objs = doc.value("objects", json::object());
  // chain maps refer to complexes, so read them last
  for (const auto& [name, j] : objs.items()) {
    std::string kind = j.value("kind", "");
    std::string where = "objects." + name;
    if (kind == "module") ws.objects.emplace(name, io::module_from_json(ws.alg, j, where));
    else if (kind == "ncomplex") ws.objects.emplace(name, io::complex_from_json(ws.alg, ws.N, j, where));
    else if (kind == "monchain") ws.objects.emplace(name, io::monchain_from_json(ws.alg, ws.N, j, where));
    else if (kind != "chainmap") throw Error("parse-error", where + ": unknown kind '" + kind + "'");
  }
  for (const auto& [name, j] : objs.items()) {
    if (j.value("kind", "") != "chainmap") continue;
    std::string where = "objects." + name;
    NamedMap<F> nm;
    nm.source = j.value("source", "");
    nm.target = j.value("target", "");
    auto complex_named = [&](const std::string& n) {
      const auto& o = ws.get(n);
      if (!std::holds_alternative<NComplex<F>>(o)) throw Error("parse-error", where + ": '" + n + "' is not a complex");
      return std::get<NComplex<F>>(o);
    };
    auto X = complex_named(nm.source), Y = complex_named(nm.target);
    int lo = j.value("lo", 0);
    nm.map = ChainMap<F>{X, Y, lo, {}};
    const auto& comps = j.value("comps", json::array());
    for (std::size_t i = 0; i < comps.size(); ++i) {
      int k = lo + static_cast<int>(i);
      nm.map.comps.push_back(
          io::mat_from_json(f, comps[i], Y.dim(k), X.dim(k), where + ".comps[" + std::to_string(i) + "]"));
    }
    if (!is_chain_map(ws.alg, nm.map)) throw Error("invariant-violation", where + ": not an equivariant chain map");
    ws.objects.emplace(name, nm);
  }
  return ws;
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("parse-error", std::string(e.what()));
  }
}

template <class F>
void save(const Workspace<F>& ws, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("io-error", "cannot write '" + path + "'");
  out << to_json(ws).dump(2) << "\n";
}

}  // namespace ncx
