#pragma once

#include <random>
#include <type_traits>

#include "ncx/complex.hpp"

namespace ncx {

// (Sigma X)^n = X^{n+1} (+) ... (+) X^{n+N-1}.
template <class F>
NComplex<F> suspend(const NComplex<F>& X) {
  const int N = X.N;
  if (X.empty_window()) return X;
  auto obj = [&](int n) {
    Module<F> M = Module<F>::zero(X.field);
    for (int k = 1; k <= N - 1; ++k) M = direct_sum(M, X.at(n + k));
    return M;
  };
  auto diff = [&](int n) {
    std::vector<std::size_t> so, to;  // block offsets
    std::size_t s = 0, t = 0;
    for (int k = 1; k <= N - 1; ++k) {
      so.push_back(s);
      s += X.dim(n + k);
      to.push_back(t);
      t += X.dim(n + 1 + k);
    }
    Mat<F> D(X.field, t, s);
    for (int i = 1; i <= N - 2; ++i) D.set_block(to[i - 1], so[i], Mat<F>::identity(X.field, X.dim(n + 1 + i)));
    for (int k = 1; k <= N - 1; ++k) D.set_block(to[N - 2], so[k - 1], -X.dpow(n + k, N - k));
    return D;
  };
  return build_complex(X.field, N, X.lo - N + 1, X.hi() - 1, obj, diff);
}

// (Sigma^{-1} X)^n = X^{n-N+1} (+) ... (+) X^{n-1}.
template <class F>
NComplex<F> desuspend(const NComplex<F>& X) {
  const int N = X.N;
  if (X.empty_window()) return X;
  auto obj = [&](int n) {
    Module<F> M = Module<F>::zero(X.field);
    for (int j = 1; j <= N - 1; ++j) M = direct_sum(M, X.at(n - N + j));
    return M;
  };
  auto diff = [&](int n) {
    std::vector<std::size_t> so, to;
    std::size_t s = 0, t = 0;
    for (int j = 1; j <= N - 1; ++j) {
      so.push_back(s);
      s += X.dim(n - N + j);
      to.push_back(t);
      t += X.dim(n + 1 - N + j);
    }
    Mat<F> D(X.field, t, s);
    for (int j = 1; j <= N - 1; ++j) D.set_block(to[j - 1], so[0], -X.dpow(n - N + 1, j));
    for (int j = 2; j <= N - 1; ++j) D.set_block(to[j - 2], so[j - 1], Mat<F>::identity(X.field, X.dim(n - N + j)));
    return D;
  };
  return build_complex(X.field, N, X.lo + 1, X.hi() + N - 1, obj, diff);
}

template <class F>
NComplex<F> suspend_pow(const NComplex<F>& X, int n) {
  NComplex<F> Y = X;
  for (int i = 0; i < n; ++i) Y = suspend(Y);
  for (int i = 0; i < -n; ++i) Y = desuspend(Y);
  return Y;
}

namespace detail {
inline std::pair<int, int> union_window(std::initializer_list<std::pair<int, int>> ws) {
  int lo = 0, hi = -1;
  bool any = false;
  for (auto [l, h] : ws) {
    if (l > h) continue;
    lo = any ? std::min(lo, l) : l;
    hi = any ? std::max(hi, h) : h;
    any = true;
  }
  return {lo, hi};
}
}  // namespace detail

// C(f)^n = Y^n (+) (Sigma X)^n.
template <class F>
NComplex<F> cone(const ChainMap<F>& f) {
  const auto& X = f.src;
  const auto& Y = f.tgt;
  auto S = suspend(X);
  auto [lo, hi] = detail::union_window({{Y.lo, Y.hi()}, {S.lo, S.hi()}});
  if (lo > hi) return NComplex<F>(X.field, X.N, 0);
  return build_complex(
      X.field, X.N, lo, hi, [&](int n) { return direct_sum(Y.at(n), S.at(n)); },
      [&](int n) {
        Mat<F> D = diag(Y.diff(n), S.diff(n));
        D.set_block(0, Y.dim(n), f.at(n + 1));
        return D;
      });
}

// C*(f)^n = (Sigma^{-1} Y)^n (+) X^n.
template <class F>
NComplex<F> cocone(const ChainMap<F>& f) {
  const auto& X = f.src;
  const auto& Y = f.tgt;
  auto S = desuspend(Y);
  auto [lo, hi] = detail::union_window({{X.lo, X.hi()}, {S.lo, S.hi()}});
  if (lo > hi) return NComplex<F>(X.field, X.N, 0);
  return build_complex(
      X.field, X.N, lo, hi, [&](int n) { return direct_sum(S.at(n), X.at(n)); },
      [&](int n) {
        Mat<F> D = diag(S.diff(n), X.diff(n));
        D.set_block(S.dim(n + 1) - Y.dim(n), S.dim(n), -f.at(n));
        return D;
      });
}

template <class F>
struct Triangle {
  ChainMap<F> f, to_cone, to_suspension;
};

template <class F>
Triangle<F> standard_triangle(const ChainMap<F>& f) {
  auto C = cone(f);
  auto S = suspend(f.src);
  const auto& Y = f.tgt;
  auto inc = build_map(Y, C, [&](int n) {
    Mat<F> m(Y.field, C.dim(n), Y.dim(n));
    m.set_block(0, 0, Mat<F>::identity(Y.field, Y.dim(n)));
    return m;
  });
  auto proj = build_map(C, S, [&](int n) {
    Mat<F> m(Y.field, S.dim(n), C.dim(n));
    m.set_block(0, Y.dim(n), Mat<F>::identity(Y.field, S.dim(n)));
    return m;
  });
  return {f, inc, proj};
}

// h^j : X^j -> Y^{j-N+1}.
template <class F>
struct Homotopy {
  NComplex<F> src, tgt;
  int lo = 0;
  std::vector<Mat<F>> comps;
  Mat<F> at(int j) const {
    int i = j - lo;
    if (i >= 0 && i < static_cast<int>(comps.size())) return comps[i];
    return Mat<F>(src.field, tgt.dim(j - src.N + 1), src.dim(j));
  }
};

// f^k = sum_r d_Y^{N-r-1} h^{k+r} d_X^r.
template <class F>
Mat<F> homotopy_component(const NComplex<F>& X, const NComplex<F>& Y, const Homotopy<F>& h, int k) {
  const int N = X.N;
  Mat<F> f(X.field, Y.dim(k), X.dim(k));
  for (int r = 0; r <= N - 1; ++r) f = f + Y.dpow(k + r - N + 1, N - r - 1) * h.at(k + r) * X.dpow(k, r);
  return f;
}

template <class F>
ChainMap<F> boundary_of(const Homotopy<F>& h) {
  return build_map(h.src, h.tgt, [&](int k) { return homotopy_component(h.src, h.tgt, h, k); });
}

// Chain maps restricted to degrees [a, b], with homotopies h^j for j in [a, b+N-1].
// The default window covers both supports, which gives the honest Hom in K_N.
template <class F>
class HomWindow {
 public:
  HomWindow(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y, std::optional<std::pair<int, int>> win = {})
      : A_(A), X_(X), Y_(Y) {
    if (X.N != Y.N) throw Error("n-mismatch", "hom between complexes with different N");
    if (win) {
      a_ = win->first;
      b_ = win->second;
    } else {
      auto w = detail::union_window({{X.lo, X.hi()}, {Y.lo, Y.hi()}});
      a_ = w.first;
      b_ = w.second;
    }
    for (int k = a_; k <= b_; ++k) {
      off_.push_back(dim_);
      H_.emplace_back(A, X.at(k), Y.at(k));
      dim_ += H_.back().dim();
    }
    for (int j = a_; j <= b_ + X.N - 1; ++j) {
      hoff_.push_back(hdim_);
      G_.emplace_back(A, X.at(j), Y.at(j - X.N + 1));
      hdim_ += G_.back().dim();
    }
  }

  int a() const { return a_; }
  int b() const { return b_; }
  std::size_t coord_dim() const { return dim_; }
  std::size_t homotopy_dim() const { return hdim_; }
  const NComplex<F>& source() const { return X_; }
  const NComplex<F>& target() const { return Y_; }

  Mat<F> coords(const ChainMap<F>& f) const {
    Mat<F> c(A_.field, dim_, 0 + 1);
    for (int k = a_; k <= b_; ++k) c.set_block(off_[k - a_], 0, H_[k - a_].coords(f.at(k)));
    return c;
  }
  ChainMap<F> from_coords(const Mat<F>& c) const {
    ChainMap<F> f{X_, Y_, a_, {}};
    for (int k = a_; k <= b_; ++k) f.comps.push_back(H_[k - a_].from_coords(c, off_[k - a_]));
    return f;
  }
  Homotopy<F> homotopy_from_coords(const Mat<F>& c) const {
    Homotopy<F> h{X_, Y_, a_, {}};
    for (int j = a_; j <= b_ + X_.N - 1; ++j) h.comps.push_back(G_[j - a_].from_coords(c, hoff_[j - a_]));
    return h;
  }

  // Columns: basis of chain maps in coordinates.
  const Mat<F>& chain_basis() const {
    if (!chain_) {
      const F& f = A_.field;
      std::vector<std::size_t> roff;
      std::size_t rows = 0;
      for (int k = a_; k < b_; ++k) {
        roff.push_back(rows);
        rows += Y_.dim(k + 1) * X_.dim(k);
      }
      Mat<F> C(f, rows, dim_);
      for (int k = a_; k <= b_; ++k) {
        const auto& H = H_[k - a_];
        for (std::size_t i = 0; i < H.dim(); ++i) {
          Mat<F> e = H.element(i);
          std::size_t col = off_[k - a_] + i;
          if (k < b_) C.set_block(roff[k - a_], col, (-(Y_.diff(k) * e)).vec());
          if (k > a_) {
            Mat<F> v = (e * X_.diff(k - 1)).vec();
            Mat<F> cur = C.block(roff[k - 1 - a_], col, v.rows, 1);
            C.set_block(roff[k - 1 - a_], col, cur + v);
          }
        }
      }
      chain_ = kernel_basis(C);
    }
    return *chain_;
  }

  // Columns: images of the homotopy basis under the boundary operator.
  const Mat<F>& null_span() const {
    if (!null_) {
      Mat<F> S(A_.field, dim_, hdim_);
      for (std::size_t j = 0; j < hdim_; ++j) {
        Mat<F> e(A_.field, hdim_, 1);
        e(j, 0) = A_.field.one();
        auto h = homotopy_from_coords(e);
        ChainMap<F> f{X_, Y_, a_, {}};
        for (int k = a_; k <= b_; ++k) f.comps.push_back(homotopy_component(X_, Y_, h, k));
        S.set_block(0, j, coords(f));
      }
      null_ = S;
    }
    return *null_;
  }

  std::optional<Homotopy<F>> null_homotopy(const ChainMap<F>& f) const {
    auto x = solve(null_span(), coords(f));
    if (!x) return std::nullopt;
    return homotopy_from_coords(*x);
  }

 private:
  Algebra<F> A_;
  NComplex<F> X_, Y_;
  int a_ = 0, b_ = -1;
  std::vector<HomSpace<F>> H_, G_;
  std::vector<std::size_t> off_, hoff_;
  std::size_t dim_ = 0, hdim_ = 0;
  mutable std::optional<Mat<F>> chain_, null_;
};

template <class F>
std::optional<Homotopy<F>> null_homotopy(const Algebra<F>& A, const ChainMap<F>& f,
                                         std::optional<std::pair<int, int>> win = {}) {
  return HomWindow<F>(A, f.src, f.tgt, win).null_homotopy(f);
}

template <class F>
bool verify_homotopy(const Homotopy<F>& h, const ChainMap<F>& f, int a, int b) {
  for (int k = a; k <= b; ++k)
    if (!(homotopy_component(h.src, h.tgt, h, k) == f.at(k))) return false;
  return true;
}

template <class F>
struct KHomSpace {
  std::size_t chain_dim = 0, null_dim = 0, dim = 0;
  std::vector<ChainMap<F>> reps;
};

template <class F>
KHomSpace<F> hom_K(const HomWindow<F>& W) {
  const auto& C = W.chain_basis();
  const auto& S = W.null_span();
  KHomSpace<F> out;
  out.chain_dim = C.cols;
  out.null_dim = rank(S);
  for (auto c : complement_pivots(S, C)) out.reps.push_back(W.from_coords(C.col(c)));
  out.dim = out.reps.size();
  return out;
}

template <class F>
KHomSpace<F> hom_K(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y) {
  return hom_K(HomWindow<F>(A, X, Y));
}

template <class F>
struct Equivalence {
  enum class Status { found, absent, budget_exceeded } status = Status::absent;
  std::optional<ChainMap<F>> u, v;
  std::optional<Homotopy<F>> vu_witness, uv_witness;  // vu - id, uv - id
  std::size_t tried = 0;
};

namespace detail {
template <class F>
std::optional<Equivalence<F>> try_equivalence(const HomWindow<F>& XY, const HomWindow<F>& XX, const HomWindow<F>& YY,
                                              const ChainMap<F>& u, const std::vector<ChainMap<F>>& vs) {
  const F& f = u.src.field;
  const std::size_t b = vs.size();
  const auto& NX = XX.null_span();
  const auto& NY = YY.null_span();
  std::size_t rows = NX.rows + NY.rows, cols = b + NX.cols + NY.cols;
  Mat<F> M(f, rows, cols);
  for (std::size_t j = 0; j < b; ++j) {
    M.set_block(0, j, XX.coords(compose(vs[j], u)));
    M.set_block(NX.rows, j, YY.coords(compose(u, vs[j])));
  }
  M.set_block(0, b, -NX);
  M.set_block(NX.rows, b + NX.cols, -NY);
  Mat<F> rhs = vcat(XX.coords(identity_map(u.src)), YY.coords(identity_map(u.tgt)));
  auto x = solve(M, rhs);
  if (!x) return std::nullopt;
  ChainMap<F> v = zero_map(u.tgt, u.src);
  for (std::size_t j = 0; j < b; ++j) v = add(v, scale(vs[j], (*x)(j, 0)));
  Equivalence<F> e;
  e.status = Equivalence<F>::Status::found;
  e.u = u;
  e.v = v;
  e.vu_witness = XX.homotopy_from_coords(x->block(b, 0, NX.cols, 1));
  e.uv_witness = YY.homotopy_from_coords(x->block(b + NX.cols, 0, NY.cols, 1));
  (void)XY;
  return e;
}
}  // namespace detail

// Search over u in Hom_K(X, Y); for each u the inverse and witnesses solve a linear system.
template <class F>
Equivalence<F> find_homotopy_equivalence(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y,
                                         std::size_t budget = 4096, std::uint64_t seed = 0) {
  HomWindow<F> XY(A, X, Y), YX(A, Y, X), XX(A, X, X), YY(A, Y, Y);
  auto kxy = hom_K(XY);
  auto kyx = hom_K(YX);
  // v ranges over all chain maps Y -> X modulo nothing; homotopies absorb the rest.
  std::vector<ChainMap<F>> vs = kyx.reps;
  Equivalence<F> result;
  auto attempt = [&](const ChainMap<F>& u) -> bool {
    ++result.tried;
    auto e = detail::try_equivalence(XY, XX, YY, u, vs);
    if (!e) return false;
    e->tried = result.tried;
    result = *e;
    return true;
  };
  if (same_complex(X, Y) && attempt(identity_map(X))) return result;
  const F& f = A.field;
  const std::size_t a = kxy.reps.size();
  auto combo = [&](const std::vector<typename F::value_type>& c) {
    ChainMap<F> u = zero_map(X, Y);
    for (std::size_t i = 0; i < a; ++i)
      if (!f.is_zero(c[i])) u = add(u, scale(kxy.reps[i], c[i]));
    return u;
  };
  if constexpr (std::is_same_v<F, PrimeField>) {
    std::vector<std::int64_t> c(a, 0);
    bool exhaustive = true;
    while (true) {
      if (result.tried >= budget) {
        exhaustive = false;
        break;
      }
      if (attempt(combo(c))) return result;
      std::size_t i = 0;
      while (i < a && c[i] == f.p - 1) c[i++] = 0;
      if (i == a) break;
      ++c[i];
    }
    result.status = exhaustive ? Equivalence<F>::Status::absent : Equivalence<F>::Status::budget_exceeded;
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(-2, 2);
    while (result.tried < budget) {
      std::vector<typename F::value_type> c(a);
      for (auto& v : c) v = f.from_int(dist(rng));
      if (attempt(combo(c))) return result;
      if (a == 0) break;
    }
    result.status = a == 0 ? Equivalence<F>::Status::absent : Equivalence<F>::Status::budget_exceeded;
  }
  return result;
}

}  // namespace ncx
