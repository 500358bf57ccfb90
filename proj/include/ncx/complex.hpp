#pragma once

#include <optional>

#include "ncx/modcat.hpp"

namespace ncx {

inline int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

// Finite window [lo, hi]; zero outside.
template <class F>
struct NComplex {
  F field;
  int N = 2;
  int lo = 0;
  std::vector<Module<F>> obj;
  std::vector<Mat<F>> d;  // d[i] : obj[i] -> obj[i+1]

  NComplex() = default;
  NComplex(const F& f, int n, int l = 0) : field(f), N(n), lo(l) {
    if (n < 2) throw Error("bad-complex", "N must be >= 2");
  }

  int hi() const { return lo + static_cast<int>(obj.size()) - 1; }
  bool empty_window() const { return obj.empty(); }
  bool in(int k) const { return k >= lo && k <= hi(); }
  std::size_t dim(int k) const { return in(k) ? obj[k - lo].dim() : 0; }
  Module<F> at(int k) const { return in(k) ? obj[k - lo] : Module<F>::zero(field); }
  Mat<F> diff(int k) const {
    if (in(k) && in(k + 1)) return d[k - lo];
    return Mat<F>(field, dim(k + 1), dim(k));
  }
  // d^{r} starting at X^k.
  Mat<F> dpow(int k, int r) const {
    Mat<F> p = Mat<F>::identity(field, dim(k));
    for (int j = 0; j < r; ++j) p = diff(k + j) * p;
    return p;
  }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& m : obj) s += m.dim();
    return s;
  }
};

template <class F>
NComplex<F> make_complex(const F& f, int N, int lo, std::vector<Module<F>> objs, std::vector<Mat<F>> diffs) {
  NComplex<F> X(f, N, lo);
  X.obj = std::move(objs);
  X.d = std::move(diffs);
  if (X.obj.size() > 0 && X.d.size() + 1 != X.obj.size())
    throw Error("invariant-violation", "expected " + std::to_string(X.obj.size() - 1) + " differentials");
  return X;
}

// Build from generator functions over [lo, hi].
template <class F, class ObjFn, class DiffFn>
NComplex<F> build_complex(const F& f, int N, int lo, int hi, ObjFn obj, DiffFn diff) {
  NComplex<F> X(f, N, lo);
  for (int k = lo; k <= hi; ++k) X.obj.push_back(obj(k));
  for (int k = lo; k < hi; ++k) X.d.push_back(diff(k));
  return X;
}

template <class F>
NComplex<F> zero_complex(const F& f, int N) {
  return NComplex<F>(f, N, 0);
}

// Equality up to zero padding of the windows.
template <class F>
bool same_complex(const NComplex<F>& X, const NComplex<F>& Y) {
  if (X.N != Y.N) return false;
  int lo = std::min(X.lo, Y.lo), hi = std::max(X.hi(), Y.hi());
  for (int k = lo; k <= hi; ++k) {
    if (!(X.at(k) == Y.at(k))) return false;
    if (!(X.diff(k) == Y.diff(k))) return false;
  }
  return true;
}

// Drop zero objects at both ends.
template <class F>
NComplex<F> trimmed(const NComplex<F>& X) {
  int lo = X.lo, hi = X.hi();
  while (lo <= hi && X.dim(lo) == 0) ++lo;
  while (hi >= lo && X.dim(hi) == 0) --hi;
  return build_complex(X.field, X.N, lo, hi, [&](int k) { return X.at(k); }, [&](int k) { return X.diff(k); });
}

template <class F>
NComplex<F> rewindow(const NComplex<F>& X, int lo, int hi) {
  return build_complex(X.field, X.N, lo, hi, [&](int k) { return X.at(k); }, [&](int k) { return X.diff(k); });
}

struct Validation {
  bool ok = true;
  int degree = 0;
  std::string message;
};

template <class F>
Validation validate(const Algebra<F>& A, const NComplex<F>& X) {
  for (int k = X.lo; k <= X.hi(); ++k) {
    const auto& M = X.obj[k - X.lo];
    if (!is_module(A, M)) return {false, k, "object at degree " + std::to_string(k) + " has action^m != 0"};
    if (k < X.hi()) {
      const auto& dk = X.d[k - X.lo];
      if (dk.rows != X.dim(k + 1) || dk.cols != X.dim(k))
        return {false, k, "differential at degree " + std::to_string(k) + " has shape " + dk.shape()};
      if (!is_equivariant(M, X.obj[k + 1 - X.lo], dk))
        return {false, k, "differential at degree " + std::to_string(k) + " is not A-linear"};
    }
  }
  for (int k = X.lo; k <= X.hi() - X.N; ++k)
    if (!X.dpow(k, X.N).is_zero())
      return {false, k, "N-fold composite of differentials starting at degree " + std::to_string(k) + " is nonzero"};
  return {};
}

template <class F>
NComplex<F> mu(const Module<F>& A, int s, int t, int N) {
  if (t < 1 || t > N) throw Error("out-of-range", "mu: t must lie in 1..N");
  return build_complex(A.field(), N, s - t + 1, s, [&](int) { return A; },
                       [&](int) { return Mat<F>::identity(A.field(), A.dim()); });
}

template <class F>
NComplex<F> direct_sum(const NComplex<F>& X, const NComplex<F>& Y) {
  if (X.N != Y.N) throw Error("n-mismatch", "direct_sum of complexes with different N");
  if (X.empty_window()) return Y;
  if (Y.empty_window()) return X;
  int lo = std::min(X.lo, Y.lo), hi = std::max(X.hi(), Y.hi());
  return build_complex(X.field, X.N, lo, hi, [&](int k) { return direct_sum(X.at(k), Y.at(k)); },
                       [&](int k) { return diag(X.diff(k), Y.diff(k)); });
}

// (Theta^j X)^k = X^{k+j}.
template <class F>
NComplex<F> shift_theta(const NComplex<F>& X, int j) {
  NComplex<F> Y = X;
  Y.lo = X.lo - j;
  return Y;
}

template <class F>
NComplex<F> negate(const NComplex<F>& X) {
  NComplex<F> Y = X;
  for (auto& m : Y.d) m = -m;
  return Y;
}

template <class F>
struct ChainMap {
  NComplex<F> src, tgt;
  int lo = 0;
  std::vector<Mat<F>> comps;

  Mat<F> at(int k) const {
    int i = k - lo;
    if (i >= 0 && i < static_cast<int>(comps.size())) return comps[i];
    return Mat<F>(src.field, tgt.dim(k), src.dim(k));
  }
  int hi() const { return lo + static_cast<int>(comps.size()) - 1; }
};

template <class F, class CompFn>
ChainMap<F> build_map(const NComplex<F>& X, const NComplex<F>& Y, CompFn comp) {
  ChainMap<F> f{X, Y, std::max(X.lo, Y.lo), {}};
  for (int k = f.lo; k <= std::min(X.hi(), Y.hi()); ++k) f.comps.push_back(comp(k));
  return f;
}

template <class F>
ChainMap<F> zero_map(const NComplex<F>& X, const NComplex<F>& Y) {
  return build_map(X, Y, [&](int k) { return Mat<F>(X.field, Y.dim(k), X.dim(k)); });
}

template <class F>
ChainMap<F> identity_map(const NComplex<F>& X) {
  return build_map(X, X, [&](int k) { return Mat<F>::identity(X.field, X.dim(k)); });
}

template <class F>
ChainMap<F> compose(const ChainMap<F>& g, const ChainMap<F>& f) {
  return build_map(f.src, g.tgt, [&](int k) { return g.at(k) * f.at(k); });
}

template <class F>
ChainMap<F> add(const ChainMap<F>& f, const ChainMap<F>& g) {
  return build_map(f.src, f.tgt, [&](int k) { return f.at(k) + g.at(k); });
}

template <class F>
ChainMap<F> sub(const ChainMap<F>& f, const ChainMap<F>& g) {
  return build_map(f.src, f.tgt, [&](int k) { return f.at(k) - g.at(k); });
}

template <class F>
ChainMap<F> scale(const ChainMap<F>& f, const typename F::value_type& c) {
  return build_map(f.src, f.tgt, [&](int k) { return f.at(k).scaled(c); });
}

template <class F>
bool same_map(const ChainMap<F>& f, const ChainMap<F>& g) {
  int lo = std::min(f.src.lo, f.tgt.lo), hi = std::max(f.src.hi(), f.tgt.hi());
  for (int k = lo; k <= hi; ++k)
    if (!(f.at(k) == g.at(k))) return false;
  return true;
}

template <class F>
bool is_chain_map(const Algebra<F>& A, const ChainMap<F>& f) {
  const auto& X = f.src;
  const auto& Y = f.tgt;
  int lo = std::min(X.lo, Y.lo) - 1, hi = std::max(X.hi(), Y.hi());
  for (int k = lo; k <= hi; ++k) {
    Mat<F> fk = f.at(k);
    if (fk.rows != Y.dim(k) || fk.cols != X.dim(k)) return false;
    if (!is_equivariant(X.at(k), Y.at(k), fk)) return false;
    if (!(f.at(k + 1) * X.diff(k) == Y.diff(k) * fk)) return false;
  }
  (void)A;
  return true;
}

// I(X) = (+)_k mu^k_N(X^k), summands of I(X)^n ordered X^n, ..., X^{n+N-1}.
template <class F>
std::pair<NComplex<F>, ChainMap<F>> hull_I(const NComplex<F>& X) {
  const int N = X.N;
  if (X.empty_window()) return {X, identity_map(X)};
  auto obj = [&](int n) {
    Module<F> M = Module<F>::zero(X.field);
    for (int k = n; k <= n + N - 1; ++k) M = direct_sum(M, X.at(k));
    return M;
  };
  auto diff = [&](int n) {
    Mat<F> D(X.field, obj(n + 1).dim(), obj(n).dim());
    std::size_t ro = 0, co = X.dim(n);
    for (int k = n + 1; k <= n + N - 1; ++k) {
      D.set_block(ro, co, Mat<F>::identity(X.field, X.dim(k)));
      ro += X.dim(k);
      co += X.dim(k);
    }
    return D;
  };
  auto I = build_complex(X.field, N, X.lo - N + 1, X.hi(), obj, diff);
  auto i = build_map(X, I, [&](int n) {
    Mat<F> c(X.field, 0, X.dim(n));
    for (int k = n; k <= n + N - 1; ++k) c = vcat(c, X.dpow(n, k - n));
    return c;
  });
  return {I, i};
}

// P(X) = (+)_k mu^k_N(X^{k-N+1}), summands of P(X)^n ordered X^{n-N+1}, ..., X^n.
template <class F>
std::pair<NComplex<F>, ChainMap<F>> hull_P(const NComplex<F>& X) {
  const int N = X.N;
  if (X.empty_window()) return {X, identity_map(X)};
  auto obj = [&](int n) {
    Module<F> M = Module<F>::zero(X.field);
    for (int k = n - N + 1; k <= n; ++k) M = direct_sum(M, X.at(k));
    return M;
  };
  auto diff = [&](int n) {
    Mat<F> D(X.field, obj(n + 1).dim(), obj(n).dim());
    std::size_t co = X.dim(n - N + 1), ro = 0;
    for (int k = n - N + 2; k <= n; ++k) {
      D.set_block(ro, co, Mat<F>::identity(X.field, X.dim(k)));
      ro += X.dim(k);
      co += X.dim(k);
    }
    return D;
  };
  auto P = build_complex(X.field, N, X.lo, X.hi() + N - 1, obj, diff);
  auto p = build_map(P, X, [&](int n) {
    Mat<F> c(X.field, X.dim(n), 0);
    for (int k = n - N + 1; k <= n; ++k) c = hcat(c, X.dpow(k, n - k));
    return c;
  });
  return {P, p};
}

// Extended reindexing: gamma(s) for the largest n + aN + br <= s.
inline int gamma_index(int n, int r, int N, int s) {
  int q = floor_div(s - n, N);
  int base = n + q * N;
  return s >= base + r ? n + 2 * q + 1 : n + 2 * q;
}

// Contraction to a 2-complex: X^{n+aN} at n+2a, X^{n+aN+r} at n+2a+1.
template <class F>
NComplex<F> gamma(const NComplex<F>& X, int n, int r) {
  const int N = X.N;
  if (r < 1 || r > N - 1) throw Error("out-of-range", "gamma: r must lie in 1..N-1");
  if (X.empty_window()) return NComplex<F>(X.field, 2, n);
  int amin = floor_div(X.lo - n, N) - 1, amax = floor_div(X.hi() - n, N) + 1;
  auto deg = [&](int pos) {
    int a = floor_div(pos - n, 2);
    return n + a * N + ((pos - n) - 2 * a) * r;
  };
  return build_complex(X.field, 2, n + 2 * amin, n + 2 * amax + 1, [&](int pos) { return X.at(deg(pos)); },
                       [&](int pos) { return X.dpow(deg(pos), deg(pos + 1) - deg(pos)); });
}

template <class F>
Mat<F> cycles(const NComplex<F>& X, int n, int r) {
  return kernel_basis(X.dpow(n, r));
}

template <class F>
Mat<F> boundaries(const NComplex<F>& X, int n, int r) {
  return image_basis(X.dpow(n - r, r));
}

template <class F>
QuotientModule<F> cokernels(const NComplex<F>& X, int n, int r) {
  return quotient(X.at(n), boundaries(X, n, r));
}

template <class F>
struct AmplitudeHomology {
  int n = 0, r = 1;
  SubModule<F> Z, B;      // submodules of X^n
  QuotientModule<F> H;    // Z ->> H
  std::size_t dim() const { return H.mod.dim(); }
};

template <class F>
AmplitudeHomology<F> homology(const NComplex<F>& X, int n, int r) {
  if (r < 1 || r > X.N - 1) throw Error("out-of-range", "homology: r must lie in 1..N-1");
  AmplitudeHomology<F> h;
  h.n = n;
  h.r = r;
  h.Z = submodule(X.at(n), cycles(X, n, r));
  h.B = submodule(X.at(n), boundaries(X, n, X.N - r));
  Mat<F> bz = h.Z.incl.cols ? left_inverse(h.Z.incl) * h.B.incl : Mat<F>(X.field, 0, h.B.incl.cols);
  h.H = quotient(h.Z.mod, bz);
  return h;
}

template <class F>
std::size_t homology_dim(const NComplex<F>& X, int n, int r) {
  return X.dim(n) - rank(X.dpow(n, r)) - rank(X.dpow(n - X.N + r, X.N - r));
}

template <class F>
bool is_acyclic_at(const NComplex<F>& X, int n) {
  for (int r = 1; r < X.N; ++r)
    if (homology_dim(X, n, r) != 0) return false;
  return true;
}

template <class F>
bool is_acyclic_on(const NComplex<F>& X, int from, int to) {
  for (int n = from; n <= to; ++n)
    if (!is_acyclic_at(X, n)) return false;
  return true;
}

template <class F>
bool is_acyclic(const NComplex<F>& X) {
  return X.empty_window() || is_acyclic_on(X, X.lo, X.hi());
}

enum class Variance { covariant, contravariant };

// Covariant: Hom(M, X^n). Contravariant: Hom(X^{-n}, M). Objects are vector spaces (zero action).
template <class F>
NComplex<F> hom_complex(const Algebra<F>& A, const NComplex<F>& X, const Module<F>& M, Variance v) {
  if (X.empty_window()) return NComplex<F>(X.field, X.N, 0);
  if (v == Variance::covariant) {
    std::vector<HomSpace<F>> hs;
    for (int n = X.lo; n <= X.hi(); ++n) hs.emplace_back(A, M, X.at(n));
    return build_complex(
        X.field, X.N, X.lo, X.hi(), [&](int n) { return Module<F>::trivial(X.field, hs[n - X.lo].dim()); },
        [&](int n) {
          const auto& H0 = hs[n - X.lo];
          const auto& H1 = hs[n + 1 - X.lo];
          Mat<F> D(X.field, H1.dim(), 0);
          for (std::size_t i = 0; i < H0.dim(); ++i) D = hcat(D, H1.coords(X.diff(n) * H0.element(i)));
          return D;
        });
  }
  std::vector<HomSpace<F>> hs;
  for (int n = -X.hi(); n <= -X.lo; ++n) hs.emplace_back(A, X.at(-n), M);
  const int lo = -X.hi();
  return build_complex(
      X.field, X.N, lo, -X.lo, [&](int n) { return Module<F>::trivial(X.field, hs[n - lo].dim()); },
      [&](int n) {
        const auto& H0 = hs[n - lo];
        const auto& H1 = hs[n + 1 - lo];
        Mat<F> D(X.field, H1.dim(), 0);
        for (std::size_t i = 0; i < H0.dim(); ++i) D = hcat(D, H1.coords(H0.element(i) * X.diff(-n - 1)));
        return D;
      });
}

template <class F>
bool is_totally_acyclic_at(const Algebra<F>& A, const NComplex<F>& X, int n) {
  if (!is_acyclic_at(X, n)) return false;
  auto H = hom_complex(A, X, free_module(A, 1), Variance::contravariant);
  return is_acyclic_at(H, -n);
}

enum class Side { le, ge };

// tau^{<=n} (Side::le) or tau^{>=n} (Side::ge).
template <class F>
NComplex<F> truncate_hard(const NComplex<F>& X, Side side, int n) {
  if (X.empty_window()) return X;
  int lo = side == Side::ge ? std::max(X.lo, n) : X.lo;
  int hi = side == Side::le ? std::min(X.hi(), n) : X.hi();
  if (lo > hi) return NComplex<F>(X.field, X.N, n);
  return rewindow(X, lo, hi);
}

// sigma^{>=n}: C^{n+r-1}_(r) for r < N, then X^k.  sigma^{<=n}: X^k, then Z^{n-r+1}_(r).
template <class F>
NComplex<F> truncate_soft(const NComplex<F>& X, Side side, int n) {
  const int N = X.N;
  if (side == Side::ge) {
    for (int k = n; k <= n + N - 2; ++k)
      if (!is_acyclic_at(X, k)) throw Error("not-acyclic", "soft truncation needs acyclicity at " + std::to_string(k));
    int hi = std::max(X.hi(), n);
    std::vector<QuotientModule<F>> qs;
    for (int k = n; k <= hi; ++k) qs.push_back(cokernels(X, k, std::min(k - n + 1, N)));
    return build_complex(X.field, N, n, hi, [&](int k) { return qs[k - n].mod; },
                         [&](int k) { return qs[k + 1 - n].proj * X.diff(k) * right_inverse(qs[k - n].proj); });
  }
  for (int k = n - N + 2; k <= n; ++k)
    if (!is_acyclic_at(X, k)) throw Error("not-acyclic", "soft truncation needs acyclicity at " + std::to_string(k));
  int lo = std::min(X.lo, n);
  std::vector<SubModule<F>> zs;
  for (int k = lo; k <= n; ++k) zs.push_back(submodule(X.at(k), cycles(X, k, std::min(n - k + 1, N))));
  return build_complex(X.field, N, lo, n, [&](int k) { return zs[k - lo].mod; }, [&](int k) {
    const auto& z1 = zs[k + 1 - lo];
    if (z1.incl.cols == 0) return Mat<F>(X.field, 0, zs[k - lo].incl.cols);
    return left_inverse(z1.incl) * X.diff(k) * zs[k - lo].incl;
  });
}

}  // namespace ncx
