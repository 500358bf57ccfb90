#pragma once

#include <functional>

#include "ncx/homotopy.hpp"

namespace ncx {

// Grid X^k_r (r = 0..N) with p^k_r : X^k_r -> X^k_{r-1} and i^k_r : X^k_r -> X^{k+1}_{r+1}.
template <class F>
struct NArray {
  F field;
  int N = 2;
  int lo = 0, hi = -1;
  std::vector<std::vector<Module<F>>> obj;  // [k-lo][r]
  std::vector<std::vector<Mat<F>>> p, i;    // [k-lo][r]

  NArray() = default;
  NArray(const F& f, int n, int l, int h) : field(f), N(n), lo(l), hi(h) {
    std::size_t cols = h >= l ? static_cast<std::size_t>(h - l + 1) : 0;
    obj.assign(cols, std::vector<Module<F>>(n + 1, Module<F>::zero(f)));
    p.assign(cols, std::vector<Mat<F>>(n + 1));
    i.assign(cols, std::vector<Mat<F>>(n + 1));
  }

  bool in(int k) const { return k >= lo && k <= hi; }
  Module<F> at(int k, int r) const { return in(k) && r >= 0 && r <= N ? obj[k - lo][r] : Module<F>::zero(field); }
  std::size_t dim(int k, int r) const { return at(k, r).dim(); }
  Mat<F> P(int k, int r) const {
    if (in(k) && r >= 1 && r <= N && p[k - lo][r].rows == dim(k, r - 1) && p[k - lo][r].cols == dim(k, r))
      return p[k - lo][r];
    return Mat<F>(field, dim(k, r - 1), dim(k, r));
  }
  Mat<F> I(int k, int r) const {
    if (in(k) && r >= 0 && r < N && i[k - lo][r].rows == dim(k + 1, r + 1) && i[k - lo][r].cols == dim(k, r))
      return i[k - lo][r];
    return Mat<F>(field, dim(k + 1, r + 1), dim(k, r));
  }
  // p-composite X^k_N -> X^k_{N-s}.
  Mat<F> Pdown(int k, int s) const {
    Mat<F> m = Mat<F>::identity(field, dim(k, N));
    for (int r = N; r > N - s; --r) m = P(k, r) * m;
    return m;
  }
  // i-composite X^k_r -> X^{k+s}_{r+s}.
  Mat<F> Iup(int k, int r, int s) const {
    Mat<F> m = Mat<F>::identity(field, dim(k, r));
    for (int t = 0; t < s; ++t) m = I(k + t, r + t) * m;
    return m;
  }
};

template <class F>
NComplex<F> complex_from_array(const NArray<F>& X) {
  if (X.hi < X.lo) return NComplex<F>(X.field, X.N, 0);
  return build_complex(X.field, X.N, X.lo, X.hi, [&](int k) { return X.at(k, X.N); },
                       [&](int k) { return X.I(k, X.N - 1) * X.P(k, X.N); });
}

template <class F>
NComplex<F> bottom_row(const NArray<F>& X) {
  if (X.hi < X.lo) return NComplex<F>(X.field, X.N, 0);
  return build_complex(X.field, X.N, X.lo, X.hi, [&](int k) { return X.at(k, 0); },
                       [&](int k) { return X.P(k + 1, 1) * X.I(k, 0); });
}

struct SquareReport {
  bool ok = true;
  int k = 0, r = 0;
  std::string message;
};

// Square at (k, r): X^k_r -> X^k_{r-1} (+) X^{k+1}_{r+1} -> X^{k+1}_r must be short exact.
template <class F>
SquareReport check_square(const NArray<F>& X, int k, int r) {
  Mat<F> alpha = vcat(X.P(k, r), X.I(k, r));
  Mat<F> beta = hcat(-X.I(k, r - 1), X.P(k + 1, r + 1));
  auto fail = [&](const std::string& m) { return SquareReport{false, k, r, m}; };
  if (!(beta * alpha).is_zero()) return fail("square does not commute");
  if (rank(alpha) != alpha.cols) return fail("first map not monic");
  if (rank(beta) != beta.rows) return fail("second map not epic");
  if (alpha.cols + beta.rows != alpha.rows) return fail("middle not exact");
  return {};
}

template <class F>
SquareReport check_bicartesian(const NArray<F>& X, int kfrom, int kto) {
  for (int k = kfrom; k <= kto; ++k)
    for (int r = 1; r <= X.N - 1; ++r) {
      auto s = check_square(X, k, r);
      if (!s.ok) return s;
    }
  return {};
}

template <class F>
bool p_epic(const NArray<F>& X, int kfrom, int kto) {
  for (int k = kfrom; k <= kto; ++k)
    for (int r = 1; r <= X.N; ++r)
      if (rank(X.P(k, r)) != X.dim(k, r - 1)) return false;
  return true;
}

template <class F>
NArray<F> array_from_acyclic(const NComplex<F>& X) {
  if (X.empty_window()) return NArray<F>(X.field, X.N, 0, -1);
  for (int n = X.lo; n <= X.hi(); ++n)
    if (!is_acyclic_at(X, n)) throw Error("not-acyclic", "complex is not acyclic at position " + std::to_string(n));
  const int N = X.N;
  NArray<F> R(X.field, N, X.lo, X.hi());
  std::vector<std::vector<QuotientModule<F>>> q(R.obj.size());
  for (int k = X.lo; k <= X.hi(); ++k)
    for (int r = 0; r <= N; ++r) {
      q[k - X.lo].push_back(cokernels(X, k, r));
      R.obj[k - X.lo][r] = q[k - X.lo][r].mod;
    }
  for (int k = X.lo; k <= X.hi(); ++k)
    for (int r = 0; r <= N; ++r) {
      Mat<F> s = right_inverse(q[k - X.lo][r].proj);
      if (r >= 1) R.p[k - X.lo][r] = q[k - X.lo][r - 1].proj * s;
      if (r < N) {
        if (k < X.hi()) R.i[k - X.lo][r] = q[k + 1 - X.lo][r + 1].proj * X.diff(k) * s;
        else R.i[k - X.lo][r] = Mat<F>(X.field, 0, R.obj[k - X.lo][r].dim());
      }
    }
  return R;
}

// Projectively resolving array of a bounded-above complex, built column by column downward.
template <class F>
class Keller {
 public:
  using CoverFn = std::function<ModMap<F>(const Algebra<F>&, const Module<F>&)>;

  // cover defaults to the minimal projective cover
  Keller(const Algebra<F>& A, const NComplex<F>& X, CoverFn cover = {}) : A_(A), X_(X), cover_(std::move(cover)) {
    top_ = X.empty_window() ? 0 : X.hi();
    arr_ = NArray<F>(A.field, X.N, top_ + 1, top_);
    built_lo_ = top_ + 1;
  }

  const NComplex<F>& input() const { return X_; }
  int top() const { return top_; }
  int built_lo() const { return built_lo_; }

  void extend_to(int L) {
    while (built_lo_ > L) build_column(built_lo_ - 1);
  }

  const NArray<F>& array() const { return arr_; }

  NComplex<F> resolution() const { return complex_from_array(arr_); }

  ChainMap<F> augmentation() const {
    auto P = resolution();
    return build_map(P, X_, [&](int k) { return arr_.Pdown(k, X_.N); });
  }

 private:
  void build_column(int c) {
    const int N = X_.N;
    const int n = c + 1;
    NArray<F> next(A_.field, N, c, top_);
    for (int k = built_lo_; k <= top_; ++k) {
      next.obj[k - c] = arr_.obj[k - arr_.lo];
      next.p[k - c] = arr_.p[k - arr_.lo];
      next.i[k - c] = arr_.i[k - arr_.lo];
    }
    auto& col = next.obj[0];
    col[0] = X_.at(c);
    // j : X^c -> X^n_1 is determined by a'j = 0 and b'j = d.
    Mat<F> a1 = next.Iup(n, 1, N - 1);
    Mat<F> b1 = next.P(n, 1);
    Mat<F> rhs = vcat(Mat<F>(A_.field, a1.rows, X_.dim(c)), X_.diff(c));
    next.i[0][0] = solve_or_throw(vcat(a1, b1), rhs, "resolution j-map");
    for (int r = 1; r <= N - 1; ++r) {
      auto pb = pullback_square(next.P(n, r + 1), next.I(c, r - 1));
      col[r] = submodule(direct_sum(next.at(n, r + 1), next.at(c, r - 1)), pb.inclusion).mod;
      next.i[0][r] = pb.to_a;
      next.p[0][r] = pb.to_b;
    }
    auto cov = cover_ ? cover_(A_, col[N - 1]) : proj_cover(A_, col[N - 1]);
    col[N] = cov.src;
    next.p[0][N] = cov.mat;
    arr_ = std::move(next);
    built_lo_ = c;
  }

  Algebra<F> A_;
  NComplex<F> X_;
  CoverFn cover_;
  int top_ = 0;
  int built_lo_ = 0;
  NArray<F> arr_;
};

template <class F>
std::pair<NComplex<F>, ChainMap<F>> projective_resolution(const Algebra<F>& A, const NComplex<F>& X, int lowest) {
  Keller<F> K(A, X);
  K.extend_to(lowest);
  return {K.resolution(), K.augmentation()};
}

// Acyclic array of the cone of the resolution map; C^n_r = X^{n+N-r}_{N-r} (+) X_N^{n+N-r+1} (+) ... (+) X_N^{n+N-1}.
template <class F>
NArray<F> cone_array(const NArray<F>& X) {
  const int N = X.N;
  const F& f = X.field;
  auto top = complex_from_array(X);
  NArray<F> C(f, N, X.lo - N, X.hi);
  auto parts = [&](int n, int r) {
    std::vector<std::size_t> d{X.dim(n + N - r, N - r)};
    for (int k = N - r + 1; k <= N - 1; ++k) d.push_back(X.dim(n + k, N));
    return d;
  };
  auto offsets = [](const std::vector<std::size_t>& d) {
    std::vector<std::size_t> o{0};
    for (auto v : d) o.push_back(o.back() + v);
    return o;
  };
  for (int n = C.lo; n <= C.hi; ++n) {
    for (int r = 1; r <= N; ++r) {
      Module<F> M = X.at(n + N - r, N - r);
      for (int k = N - r + 1; k <= N - 1; ++k) M = direct_sum(M, X.at(n + k, N));
      C.obj[n - C.lo][r] = M;
    }
    for (int r = 1; r <= N; ++r) {
      auto so = offsets(parts(n, r));
      if (r == 1) {
        C.p[n - C.lo][r] = Mat<F>(f, 0, so.back());
        continue;
      }
      auto to = offsets(parts(n, r - 1));
      Mat<F> q(f, to.back(), so.back());
      q.set_block(0, 0, X.I(n + N - r, N - r));
      q.set_block(0, so[1], X.Pdown(n + N - r + 1, r - 1));
      for (int t = 2; t <= r - 1; ++t)
        q.set_block(to[t - 1], so[t], Mat<F>::identity(f, X.dim(n + N - r + t, N)));
      C.p[n - C.lo][r] = q;
    }
    for (int r = 1; r <= N - 1; ++r) {
      auto so = offsets(parts(n, r));
      auto to = offsets(parts(n + 1, r + 1));
      Mat<F> j(f, to.back(), so.back());
      j.set_block(0, 0, X.P(n + N - r, N - r));
      for (int t = 1; t <= r - 1; ++t) j.set_block(to[t], so[t], Mat<F>::identity(f, X.dim(n + N - r + t, N)));
      std::size_t last = to[r];
      j.set_block(last, 0, -X.Iup(n + N - r, N - r, r));
      for (int t = 1; t <= r - 1; ++t) j.set_block(last, so[t], -top.dpow(n + N - r + t, r - t));
      C.i[n - C.lo][r] = j;
    }
    C.i[n - C.lo][0] = Mat<F>(f, C.obj[n - C.lo][1].dim(), 0);
  }
  // fix shapes of j-maps leaving the last column
  for (int r = 1; r <= N - 1; ++r) {
    auto& j = C.i[C.hi - C.lo][r];
    if (j.rows != C.dim(C.hi + 1, r + 1)) j = Mat<F>(f, C.dim(C.hi + 1, r + 1), C.dim(C.hi, r));
  }
  return C;
}

// MonChain X^1 >-> ... >-> X^{N-1}.
template <class F>
struct MonChain {
  std::vector<Module<F>> obj;
  std::vector<Mat<F>> mono;  // mono[r-1] : X^r -> X^{r+1}
  int N() const { return static_cast<int>(obj.size()) + 1; }
  const Module<F>& at(int r) const { return obj[r - 1]; }
  // X^r -> X^s
  Mat<F> composite(int r, int s) const {
    Mat<F> m = Mat<F>::identity(obj[r - 1].field(), obj[r - 1].dim());
    for (int t = r; t < s; ++t) m = mono[t - 1] * m;
    return m;
  }
};

template <class F>
MonChain<F> zero_monchain(const F& f, int N) {
  MonChain<F> X;
  for (int r = 1; r <= N - 1; ++r) X.obj.push_back(Module<F>::zero(f));
  for (int r = 1; r < N - 1; ++r) X.mono.push_back(Mat<F>(f, 0, 0));
  return X;
}

// mu_t(A): A in the top t positions with identities.
template <class F>
MonChain<F> mu_chain(const Module<F>& A, int t, int N) {
  MonChain<F> X;
  const F& f = A.field();
  for (int r = 1; r <= N - 1; ++r) X.obj.push_back(r >= N - t ? A : Module<F>::zero(f));
  for (int r = 1; r < N - 1; ++r)
    X.mono.push_back(r >= N - t ? Mat<F>::identity(f, A.dim()) : Mat<F>(f, X.obj[r].dim(), X.obj[r - 1].dim()));
  return X;
}

template <class F>
Validation mmor_validate(const Algebra<F>& A, const MonChain<F>& X) {
  if (X.obj.empty()) return {false, 0, "chain has no objects"};
  if (X.mono.size() + 1 != X.obj.size()) return {false, 0, "expected one monic fewer than objects"};
  for (std::size_t r = 0; r < X.obj.size(); ++r)
    if (!is_module(A, X.obj[r])) return {false, static_cast<int>(r + 1), "object has action^m != 0"};
  for (std::size_t r = 0; r < X.mono.size(); ++r) {
    const auto& m = X.mono[r];
    if (!is_equivariant(X.obj[r], X.obj[r + 1], m)) return {false, static_cast<int>(r + 1), "map is not A-linear"};
    if (rank(m) != m.cols) return {false, static_cast<int>(r + 1), "map is not monic"};
  }
  return {};
}

// X^r at degree n-N+1+r.
template <class F>
NComplex<F> mmor_iota(const MonChain<F>& X, int n) {
  const int N = X.N();
  const F& f = X.obj[0].field();
  return build_complex(f, N, n - N + 2, n, [&](int k) { return X.at(k - n + N - 1); },
                       [&](int k) { return X.mono[k - n + N - 2]; });
}

template <class F>
bool mmor_is_projective(const Algebra<F>& A, const MonChain<F>& X) {
  for (const auto& M : X.obj)
    if (!is_projective(A, M)) return false;
  for (std::size_t r = 0; r < X.mono.size(); ++r)
    if (!is_projective(A, quotient(X.obj[r + 1], X.mono[r]).mod)) return false;
  return true;
}

template <class F>
struct MonMap {
  MonChain<F> src, tgt;
  std::vector<Mat<F>> comps;
};

template <class F>
ChainMap<F> iota_map(const MonMap<F>& f, int n) {
  auto X = mmor_iota(f.src, n), Y = mmor_iota(f.tgt, n);
  const int N = f.src.N();
  return build_map(X, Y, [&](int k) { return f.comps[k - n + N - 2]; });
}

// Q^r = P^1 (+) ... (+) P^r with P^j the cover of X^j.
template <class F>
MonMap<F> mmor_proj_cover(const Algebra<F>& A, const MonChain<F>& X) {
  const int N = X.N();
  std::vector<ModMap<F>> covers;
  for (const auto& M : X.obj) covers.push_back(proj_cover(A, M));
  MonChain<F> Q;
  MonMap<F> pi;
  for (int r = 1; r <= N - 1; ++r) {
    Module<F> M = Module<F>::zero(A.field);
    Mat<F> comp(A.field, X.at(r).dim(), 0);
    for (int j = 1; j <= r; ++j) {
      M = direct_sum(M, covers[j - 1].src);
      comp = hcat(comp, X.composite(j, r) * covers[j - 1].mat);
    }
    Q.obj.push_back(M);
    pi.comps.push_back(comp);
    if (r > 1) {
      Mat<F> inc(A.field, M.dim(), Q.obj[r - 2].dim());
      inc.set_block(0, 0, Mat<F>::identity(A.field, Q.obj[r - 2].dim()));
      Q.mono.push_back(inc);
    }
  }
  pi.src = Q;
  pi.tgt = X;
  return pi;
}

template <class F>
struct MonStableHom {
  std::size_t dim = 0;
  std::vector<ChainMap<F>> reps;  // as chain maps iota^0 X -> iota^0 Y
};

template <class F>
MonStableHom<F> mmor_stable_hom(const Algebra<F>& A, const MonChain<F>& X, const MonChain<F>& Y) {
  auto iX = mmor_iota(X, 0), iY = mmor_iota(Y, 0);
  auto pi = mmor_proj_cover(A, Y);
  auto iQ = mmor_iota(pi.src, 0);
  auto ipi = iota_map(pi, 0);
  HomWindow<F> H(A, iX, iY), HQ(A, iX, iQ);
  const auto& C = H.chain_basis();
  const auto& CQ = HQ.chain_basis();
  Mat<F> sub(A.field, H.coord_dim(), 0);
  for (std::size_t c = 0; c < CQ.cols; ++c) sub = hcat(sub, H.coords(compose(ipi, HQ.from_coords(CQ.col(c)))));
  MonStableHom<F> out;
  for (auto c : complement_pivots(sub, C)) out.reps.push_back(H.from_coords(C.col(c)));
  out.dim = out.reps.size();
  return out;
}

// Omega^n X = C^{n-N+1}_(1) >-> ... >-> C^{n-1}_(N-1).
template <class F>
MonChain<F> syzygy(const NComplex<F>& X, int n) {
  const int N = X.N;
  for (int k = n - N + 1; k <= n - 1; ++k)
    if (!is_acyclic_at(X, k)) throw Error("not-acyclic", "syzygy needs acyclicity at position " + std::to_string(k));
  std::vector<QuotientModule<F>> qs;
  for (int r = 1; r <= N - 1; ++r) qs.push_back(cokernels(X, n - N + r, r));
  MonChain<F> out;
  for (int r = 1; r <= N - 1; ++r) out.obj.push_back(qs[r - 1].mod);
  for (int r = 1; r < N - 1; ++r)
    out.mono.push_back(qs[r].proj * X.diff(n - N + r) * right_inverse(qs[r - 1].proj));
  return out;
}

// Components C^{n-N+r}_(r) -> W^r induced by a chain map X -> iota^{n-1} W.
template <class F>
std::vector<Mat<F>> induced_on_syzygy(const ChainMap<F>& f, int n) {
  const int N = f.src.N;
  std::vector<Mat<F>> out;
  for (int r = 1; r <= N - 1; ++r) {
    auto q = cokernels(f.src, n - N + r, r);
    out.push_back(f.at(n - N + r) * right_inverse(q.proj));
  }
  return out;
}

template <class F>
struct LiftResult {
  ChainMap<F> map;                         // between the resolutions
  std::vector<std::vector<Mat<F>>> grid;   // [k-lo][r]
  int lo = 0;
};

// Lift f : X -> Y to the resolving arrays; perturb adds random kernel elements at the projective step.
template <class F, class Rng = std::mt19937_64>
LiftResult<F> lift_along(const Algebra<F>& A, const ChainMap<F>& f, const Keller<F>& KX, const Keller<F>& KY,
                         Rng* perturb = nullptr) {
  const auto& X = KX.array();
  const auto& Y = KY.array();
  const int N = X.N;
  const F& fld = A.field;
  int top = std::max(KX.top(), KY.top());
  int lo = std::max(KX.built_lo(), KY.built_lo());
  LiftResult<F> out;
  out.lo = lo;
  out.grid.assign(top - lo + 2, std::vector<Mat<F>>(N + 1));
  auto g = [&](int k, int r) -> Mat<F> {
    if (k > top || k < lo) return Mat<F>(fld, Y.dim(k, r), X.dim(k, r));
    return out.grid[k - lo][r];
  };
  for (int k = top; k >= lo; --k) {
    auto& col = out.grid[k - lo];
    col[0] = f.at(k);
    for (int r = 1; r <= N - 1; ++r) {
      Mat<F> M = vcat(Y.I(k, r), Y.P(k, r));
      Mat<F> rhs = vcat(g(k + 1, r + 1) * X.I(k, r), col[r - 1] * X.P(k, r));
      col[r] = solve_or_throw(M, rhs, "lift through pullback");
    }
    Mat<F> target = col[N - 1] * X.P(k, N);
    const Mat<F>& py = Y.P(k, N);
    Mat<F> ker = kernel_basis(py);
    std::size_t t = X.dim(k, N) / A.m;
    Mat<F> lift(fld, Y.dim(k, N), X.dim(k, N));
    const auto& act = Y.at(k, N).act;
    for (std::size_t e = 0; e < t; ++e) {
      Mat<F> w = solve_or_throw(py, target.col(e * A.m), "lift through cover");
      if (perturb && ker.cols) {
        Mat<F> c(fld, ker.cols, 1);
        for (auto& v : c.a) {
          if constexpr (std::is_same_v<F, PrimeField>)
            v = fld.from_int(std::uniform_int_distribution<int>(0, static_cast<int>(fld.p) - 1)(*perturb));
          else
            v = fld.from_int(std::uniform_int_distribution<int>(-2, 2)(*perturb));
        }
        w = w + ker * c;
      }
      for (int j = 0; j < A.m; ++j) {
        lift.set_block(0, e * A.m + j, w);
        w = act * w;
      }
    }
    col[N] = lift;
  }
  auto PX = KX.resolution(), PY = KY.resolution();
  out.map = build_map(PX, PY, [&](int k) { return g(k, N); });
  return out;
}

// Complete resolution: left half resolves iota^0 X; right half is the dual of a resolution of
// iota^{-1} of the dualised column of cokernels at degree 0.
template <class F>
class LazyAPC {
 public:
  LazyAPC(const Algebra<F>& A, const MonChain<F>& X, std::optional<int> cap = {})
      : A_(A), X_(X), N_(X.N()), left_(A, mmor_iota(X, 0)) {
    cap_ = cap ? *cap : 4 * N_ * A.m + N_;
    ensure_left(-2 * N_);
    build_right_seed();
  }

  int cap() const { return cap_; }
  const MonChain<F>& input() const { return X_; }
  const Keller<F>& left() const { return left_; }

  // Materialised window [lo, hi].
  NComplex<F> window(int lo, int hi) {
    if (-lo > cap_ || hi > cap_)
      throw Error("cutoff-exhausted", "complete resolution window [" + std::to_string(lo) + "," + std::to_string(hi) +
                                          "] exceeds cap " + std::to_string(cap_));
    ensure_left(std::min(lo, 0) - 1);
    right_->extend_to(-std::max(hi, 1) - 1);
    auto L = left_.resolution();
    auto R = right_->resolution();
    auto obj = [&](int k) -> Module<F> {
      if (k <= 0) return L.at(k);
      return free_module(A_, R.dim(-k) / A_.m);
    };
    auto diff = [&](int k) -> Mat<F> {
      if (k < 0) return L.diff(k);
      if (k == 0) return dualize(aug_top(), 0, R.dim(-1) / A_.m) * q_top_;
      return dualize(R.diff(-k - 1), R.dim(-k) / A_.m, R.dim(-k - 1) / A_.m);
    };
    return build_complex(A_.field, N_, lo, hi, obj, diff);
  }

  // Canonical map tau^{<=0} P -> iota^0 X (the left augmentation).
  ChainMap<F> augmentation() const { return left_.augmentation(); }

  void ensure_left(int L) { left_.extend_to(L); }

  struct OmegaIso {
    bool ok = false;
    MonChain<F> omega;
    std::vector<Mat<F>> comps;  // Omega^1 P -> X
  };

  // Omega^1 P -> X induced by the augmentation; ok when every component is an equivariant bijection
  // commuting with the monics.
  OmegaIso omega_iso() {
    auto W = window(-2 * N_, N_);
    OmegaIso out;
    out.omega = syzygy(W, 1);
    auto aug = augmentation();
    out.comps = induced_on_syzygy(build_map(W, aug.tgt, [&](int k) { return aug.at(k); }), 1);
    out.ok = true;
    for (int r = 1; r <= N_ - 1; ++r) {
      const auto& c = out.comps[r - 1];
      if (c.rows != c.cols || rank(c) != c.rows || !is_equivariant(out.omega.at(r), X_.at(r), c)) out.ok = false;
      if (r < N_ - 1 && !(c.rows == X_.at(r).dim() &&
                          out.comps[r] * out.omega.mono[r - 1] == X_.mono[r - 1] * c))
        out.ok = false;
    }
    return out;
  }

 private:
  // Transpose conjugated into the standard free basis.
  Mat<F> dualize(const Mat<F>& m, std::size_t t_src_dual, std::size_t t_tgt_dual) const {
    Mat<F> r = m.transpose();
    Mat<F> Jl = r.rows == t_tgt_dual * A_.m ? block_reversal(A_, t_tgt_dual) : Mat<F>::identity(A_.field, r.rows);
    Mat<F> Jr = r.cols == t_src_dual * A_.m ? block_reversal(A_, t_src_dual) : Mat<F>::identity(A_.field, r.cols);
    return Jl * r * Jr;
  }

  Mat<F> aug_top() const {
    const auto& arr = right_->array();
    return arr.Pdown(-1, N_);
  }

  void build_right_seed() {
    auto P = left_.resolution();
    std::vector<QuotientModule<F>> qs;
    for (int r = 1; r <= N_ - 1; ++r) qs.push_back(cokernels(P, 0, r));
    MonChain<F> W;
    for (int r = 1; r <= N_ - 1; ++r) W.obj.push_back(dual(qs[r - 1].mod));
    for (int r = 1; r < N_ - 1; ++r) W.mono.push_back((qs[r - 1].proj * right_inverse(qs[r].proj)).transpose());
    q_top_ = qs[N_ - 2].proj;
    right_.emplace(A_, mmor_iota(W, -1));
    right_->extend_to(-2);
  }

  Algebra<F> A_;
  MonChain<F> X_;
  int N_;
  int cap_;
  Keller<F> left_;
  std::optional<Keller<F>> right_;
  Mat<F> q_top_;
};

}  // namespace ncx
