#pragma once

#include <map>
#include <memory>

#include "ncx/resolve.hpp"

namespace ncx {

template <class F>
bool is_quasi_iso(const ChainMap<F>& f) {
  return is_acyclic(cone(f));
}

// Hom in D_N via a resolution of the source truncated just below the target.
template <class F>
KHomSpace<F> hom_D(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y) {
  if (X.empty_window() || Y.empty_window()) return {};
  Keller<F> K(A, X);
  K.extend_to(std::min(Y.lo, X.hi()) - 1);
  return hom_K(A, K.resolution(), Y);
}

// Sigma^{2k+l} Y as Theta^{kN} Sigma^l Y.
template <class F>
NComplex<F> ext_target(const NComplex<F>& Y, int n) {
  int k = floor_div(n, 2), l = n - 2 * k;
  return shift_theta(suspend_pow(Y, l), k * Y.N);
}

template <class F>
KHomSpace<F> ext(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y, int n) {
  return hom_D(A, X, ext_target(Y, n));
}

using Signature = std::vector<std::vector<int>>;

template <class F>
Signature monchain_signature(const MonChain<F>& X) {
  Signature s;
  for (const auto& M : X.obj) s.push_back(jordan_type(M));
  for (int r = 1; r <= X.N() - 1; ++r)
    for (int t = r + 1; t <= X.N() - 1; ++t) s.push_back(jordan_type(quotient(X.at(t), X.composite(r, t)).mod));
  return s;
}

struct PerfectResult {
  bool perfect = false;
  int degree = 0;       // syzygy index where the walk stopped
  int repeat_of = 0;    // for a cycle: the earlier index with the same signature
  int steps = 0;
};

// Walks Omega^{n+1} P for n descending; a projective syzygy certifies perfectness,
// a repeated non-projective signature certifies the opposite.
template <class F>
PerfectResult is_perfect(const Algebra<F>& A, const NComplex<F>& X, std::optional<int> cutoff = {}) {
  const int N = X.N;
  PerfectResult out;
  if (X.empty_window()) {
    out.perfect = true;
    return out;
  }
  int limit = cutoff ? *cutoff : 4 * N * A.m + static_cast<int>(X.obj.size()) + 2 * N;
  Keller<F> K(A, X);
  std::map<Signature, int> seen;
  for (int n = X.hi(); n >= X.hi() - limit; --n) {
    K.extend_to(n - 2 * N);
    auto P = K.resolution();
    bool ok = true;
    for (int q = n - N + 2; q <= n && ok; ++q) ok = is_acyclic_at(P, q);
    if (!ok) continue;
    ++out.steps;
    auto S = syzygy(P, n + 1);
    if (mmor_is_projective(A, S)) {
      out.perfect = true;
      out.degree = n + 1;
      return out;
    }
    auto sig = monchain_signature(S);
    auto it = seen.find(sig);
    if (it != seen.end()) {
      out.degree = n + 1;
      out.repeat_of = it->second;
      return out;
    }
    seen.emplace(sig, n + 1);
  }
  throw Error("cutoff-exhausted", "perfectness undecided within " + std::to_string(limit) + " syzygies");
}

template <class F>
struct SingHom {
  std::size_t dim = 0;         // in D_sg
  std::size_t dhom_dim = 0;    // in D_N
  int cutoff = 0;              // truncation degree of the target resolution
  std::vector<std::size_t> history;
  std::shared_ptr<HomWindow<F>> V;  // Hom(P_X, Y) with P_X truncated
  Mat<F> killed;                    // null-homotopic plus perfect-factoring, in V coordinates
  ChainMap<F> eps;                  // P_X -> X
};

namespace detail {
template <class F>
SingHom<F> sing_step(const Algebra<F>& A, Keller<F>& KX, Keller<F>& KY, const NComplex<F>& Y, int m) {
  KX.extend_to(std::min(m, Y.lo) - 1);
  KY.extend_to(m);
  auto PX = KX.resolution();
  auto PY = KY.resolution();
  auto tau = rewindow(PY, m, PY.hi());
  auto augY = KY.augmentation();
  auto epsY = build_map(tau, Y, [&](int k) { return augY.at(k); });
  SingHom<F> out;
  out.cutoff = m;
  out.V = std::make_shared<HomWindow<F>>(A, PX, Y);
  out.eps = KX.augmentation();
  HomWindow<F> T(A, PX, tau);
  const auto& CT = T.chain_basis();
  Mat<F> killed = out.V->null_span();
  for (std::size_t c = 0; c < CT.cols; ++c) killed = hcat(killed, out.V->coords(compose(epsY, T.from_coords(CT.col(c)))));
  const auto& C = out.V->chain_basis();
  std::size_t rk_null = rank(out.V->null_span());
  std::size_t rk_killed = rank(killed);
  out.dhom_dim = C.cols - rk_null;
  out.dim = C.cols - rk_killed;
  out.killed = killed;
  return out;
}
}  // namespace detail

// Hom in the singularity category: Hom_K(P_X, Y) modulo maps factoring through a bounded
// complex of projectives, approximated by hard truncations of P_Y and lowered until stable.
template <class F>
SingHom<F> hom_sing(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y, std::optional<int> cap = {},
                    int plateau = 0) {
  const int N = X.N;
  if (X.empty_window() || Y.empty_window()) return {};
  if (plateau <= 0) plateau = N + 1;
  int start = std::min(X.lo, Y.lo);
  int depth = cap ? *cap : 4 * N * A.m + 2 * N;
  Keller<F> KX(A, X), KY(A, Y);
  SingHom<F> cur;
  std::vector<std::size_t> hist;
  int stable = 0;
  for (int m = start; m >= start - depth; --m) {
    auto step = detail::sing_step(A, KX, KY, Y, m);
    if (!hist.empty() && step.dim == hist.back()) ++stable;
    else stable = 0;
    hist.push_back(step.dim);
    cur = std::move(step);
    if (stable >= plateau) {
      cur.history = hist;
      return cur;
    }
  }
  throw Error("no-plateau", "singular hom did not stabilise within depth " + std::to_string(depth));
}

struct BuchweitzReport {
  bool pass = false;
  std::size_t stable_dim = 0, sing_dim = 0;
  bool quasi_iso = false, omega_iso = false, perfect_piece = false, injective = false;
  int cutoff = 0;
};

template <class F>
BuchweitzReport buchweitz_verify(const Algebra<F>& A, const MonChain<F>& X, const MonChain<F>& Y,
                                 std::optional<int> cap = {}) {
  const int N = X.N();
  BuchweitzReport out;
  auto st = mmor_stable_hom(A, X, Y);
  out.stable_dim = st.dim;
  auto iX = mmor_iota(X, 0), iY = mmor_iota(Y, 0);
  auto sg = hom_sing(A, iX, iY, cap);
  out.sing_dim = sg.dim;
  out.cutoff = sg.cutoff;

  LazyAPC<F> P(A, X);
  auto W = P.window(-3 * N, N);
  auto aug = P.augmentation();
  int L = P.left().built_lo();
  out.quasi_iso = is_acyclic_on(cone(aug), L + N - 1, N);
  out.omega_iso = P.omega_iso().ok;
  auto piece = rewindow(W, -N + 1, 0);
  try {
    out.perfect_piece = is_perfect(A, piece).perfect;
  } catch (const Error&) {
    out.perfect_piece = false;
  }

  Mat<F> reps(A.field, sg.V->coord_dim(), 0);
  for (const auto& phi : st.reps) reps = hcat(reps, sg.V->coords(compose(phi, sg.eps)));
  std::size_t base = rank(sg.killed);
  out.injective = rank(hcat(sg.killed, reps)) - base == st.dim;
  out.pass = out.stable_dim == out.sing_dim && out.quasi_iso && out.omega_iso && out.perfect_piece && out.injective;
  return out;
}

template <class F>
struct TateHom {
  std::size_t dim = 0;
  int window = 0;
  std::vector<std::size_t> history;
};

// Hom_K(P_X, Sigma^n P_Y) between complete resolutions on widening windows [-w, w].
template <class F>
TateHom<F> tate_hom(const Algebra<F>& A, const MonChain<F>& X, const MonChain<F>& Y, int n,
                    std::optional<int> cap = {}, int plateau = 0) {
  const int N = X.N();
  int k = floor_div(n, 2), l = n - 2 * k;
  int reach = cap ? *cap : 4 * N * A.m + 4 * N;
  if (plateau <= 0) plateau = 2;
  LazyAPC<F> PX(A, X, reach + N), PY(A, Y, reach + std::abs(k) * N + 2 * N);
  TateHom<F> out;
  int stable = 0;
  for (int w = N; w <= reach; ++w) {
    int a = -w, b = w;
    auto S = PX.window(a, b + N - 1);
    int tlo = a - N + 1, thi = b;
    auto Ywin = PY.window(tlo + k * N - 1, thi + k * N + N);
    auto T = rewindow(shift_theta(suspend_pow(Ywin, l), k * N), tlo, thi);
    auto H = hom_K(HomWindow<F>(A, S, T, std::make_pair(a, b)));
    if (!out.history.empty() && H.dim == out.history.back()) ++stable;
    else stable = 0;
    out.history.push_back(H.dim);
    out.dim = H.dim;
    out.window = w;
    if (stable >= plateau) return out;
  }
  throw Error("no-plateau", "Tate hom did not stabilise within window " + std::to_string(reach));
}

}  // namespace ncx
