#pragma once

#include <algorithm>
#include <map>

#include "ncx/exactla.hpp"

namespace ncx {

// A_m = k[x]/(x^m); m = 1 is plain vector spaces.
template <class F>
struct Algebra {
  F field;
  int m = 1;
  Algebra() = default;
  Algebra(const F& f, int mm) : field(f), m(mm) {
    if (mm < 1) throw Error("bad-algebra", "m must be >= 1");
  }
};

template <class F>
struct Module {
  Mat<F> act;
  Module() = default;
  explicit Module(Mat<F> a) : act(std::move(a)) {
    if (act.rows != act.cols) throw Error("invariant-violation", "action must be square");
  }
  std::size_t dim() const { return act.rows; }
  const F& field() const { return act.field; }
  bool operator==(const Module& o) const { return act == o.act; }

  static Module zero(const F& f) { return Module(Mat<F>(f, 0, 0)); }
  static Module trivial(const F& f, std::size_t n) { return Module(Mat<F>(f, n, n)); }
};

template <class F>
struct ModMap {
  Module<F> src, tgt;
  Mat<F> mat;
};

template <class F>
bool is_module(const Algebra<F>& A, const Module<F>& M) {
  return power(M.act, A.m).is_zero();
}

template <class F>
bool is_equivariant(const Module<F>& M, const Module<F>& N, const Mat<F>& f) {
  return f.rows == N.dim() && f.cols == M.dim() && f * M.act == N.act * f;
}

template <class F>
Module<F> direct_sum(const Module<F>& M, const Module<F>& N) {
  return Module<F>(diag(M.act, N.act));
}

template <class F>
Module<F> direct_sum(const F& f, const std::vector<Module<F>>& ms) {
  Module<F> r = Module<F>::zero(f);
  for (const auto& m : ms) r = direct_sum(r, m);
  return r;
}

// Standard basis x^j e_i at index i*m + j.
template <class F>
Module<F> free_module(const Algebra<F>& A, std::size_t t) {
  Mat<F> a(A.field, t * A.m, t * A.m);
  for (std::size_t i = 0; i < t; ++i)
    for (int j = 0; j + 1 < A.m; ++j) a(i * A.m + j + 1, i * A.m + j) = A.field.one();
  return Module<F>(a);
}

// Cyclic module k[x]/(x^len) with basis 1, x, ..., x^(len-1).
template <class F>
Module<F> cyclic_module(const F& f, int len) {
  Mat<F> a(f, len, len);
  for (int j = 0; j + 1 < len; ++j) a(j + 1, j) = f.one();
  return Module<F>(a);
}

template <class F>
Module<F> module_from_partition(const F& f, const std::vector<int>& parts) {
  Module<F> r = Module<F>::zero(f);
  for (int p : parts) r = direct_sum(r, cyclic_module(f, p));
  return r;
}

template <class F>
Module<F> dual(const Module<F>& M) {
  return Module<F>(M.act.transpose());
}

// Number of blocks of size >= j is rank(a^(j-1)) - rank(a^j).
template <class F>
std::vector<int> jordan_type(const Module<F>& M) {
  std::vector<std::size_t> rk{M.dim()};
  Mat<F> p = M.act;
  while (rk.back() > 0) {
    rk.push_back(rank(p));
    if (rk.back() == rk[rk.size() - 2] && rk.back() > 0) throw Error("invariant-violation", "action not nilpotent");
    p = M.act * p;
  }
  std::vector<int> parts;
  for (std::size_t j = rk.size() - 1; j >= 1; --j) {
    std::size_t ge = rk[j - 1] - rk[j];
    std::size_t ge_next = j + 1 < rk.size() ? rk[j] - rk[j + 1] : 0;
    for (std::size_t c = 0; c < ge - ge_next; ++c) parts.push_back(static_cast<int>(j));
  }
  return parts;
}

template <class F>
bool is_projective(const Algebra<F>& A, const Module<F>& M) {
  for (int p : jordan_type(M))
    if (p != A.m) return false;
  return true;
}

template <class F>
bool is_standard_free(const Algebra<F>& A, const Module<F>& M) {
  return M.dim() % A.m == 0 && M.act == free_module(A, M.dim() / A.m).act;
}

// Generators g_i of cyclic summands of lengths len_i (descending); M = (+) A g_i.
template <class F>
struct CyclicDecomposition {
  std::vector<Mat<F>> gens;
  std::vector<int> lens;
  Mat<F> basis;  // columns x^j g_i, generator-major
};

template <class F>
CyclicDecomposition<F> cyclic_decomposition(const Module<F>& M) {
  const F& f = M.field();
  const std::size_t n = M.dim();
  CyclicDecomposition<F> out;
  out.basis = Mat<F>(f, n, 0);
  if (n == 0) return out;
  std::vector<Mat<F>> kers{Mat<F>(f, n, 0)};
  Mat<F> p = Mat<F>::identity(f, n);
  while (kers.back().cols < n) {
    p = M.act * p;
    kers.push_back(kernel_basis(p));
    if (kers.size() > n + 1) throw Error("invariant-violation", "action not nilpotent");
  }
  const int top = static_cast<int>(kers.size()) - 1;
  for (int j = top; j >= 1; --j) {
    Mat<F> cols = kers[j - 1];
    for (std::size_t g = 0; g < out.gens.size(); ++g)
      cols = hcat(cols, power(M.act, out.lens[g] - j) * out.gens[g]);
    const std::size_t off = cols.cols;
    cols = hcat(cols, kers[j]);
    for (auto c : rref(cols).pivots)
      if (c >= off) {
        out.gens.push_back(kers[j].col(c - off));
        out.lens.push_back(j);
      }
  }
  for (std::size_t g = 0; g < out.gens.size(); ++g) {
    Mat<F> v = out.gens[g];
    for (int j = 0; j < out.lens[g]; ++j) {
      out.basis = hcat(out.basis, v);
      v = M.act * v;
    }
  }
  return out;
}

// Hom_A(M, N) parametrised by images of the generators of M:
// g_i may go to any vector killed by x^len_i.
template <class F>
class HomSpace {
 public:
  HomSpace(const Algebra<F>& A, const Module<F>& M, const Module<F>& N) : f_(A.field), M_(M), N_(N) {
    if (is_standard_free(A, M)) {
      std::size_t t = M.dim() / A.m;
      for (std::size_t i = 0; i < t; ++i) {
        Mat<F> e(f_, M.dim(), 1);
        e(i * A.m, 0) = f_.one();
        gens_.push_back(e);
        lens_.push_back(A.m);
      }
      basis_inv_ = Mat<F>::identity(f_, M.dim());
    } else {
      auto cd = cyclic_decomposition(M);
      gens_ = cd.gens;
      lens_ = cd.lens;
      basis_inv_ = *inverse(cd.basis);
    }
    std::map<int, std::size_t> cache;
    for (int l : lens_) {
      if (!cache.count(l)) {
        cache[l] = kers_.size();
        kers_.push_back(kernel_basis(power(N.act, l)));
        kers_left_.push_back(kers_.back().cols ? left_inverse(kers_.back()) : Mat<F>(f_, 0, N.dim()));
      }
      which_.push_back(cache[l]);
      offset_.push_back(dim_);
      dim_ += kers_[which_.back()].cols;
    }
  }

  std::size_t dim() const { return dim_; }
  const Module<F>& source() const { return M_; }
  const Module<F>& target() const { return N_; }

  Mat<F> from_coords(const Mat<F>& c, std::size_t off = 0) const {
    Mat<F> img(f_, N_.dim(), 0);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const Mat<F>& K = kers_[which_[g]];
      Mat<F> v = K * c.block(off + offset_[g], 0, K.cols, 1);
      for (int j = 0; j < lens_[g]; ++j) {
        img = hcat(img, v);
        v = N_.act * v;
      }
    }
    return img * basis_inv_;
  }
  Mat<F> element(std::size_t idx) const {
    Mat<F> c(f_, dim_, 1);
    c(idx, 0) = f_.one();
    return from_coords(c);
  }
  std::vector<Mat<F>> basis() const {
    std::vector<Mat<F>> b;
    for (std::size_t i = 0; i < dim_; ++i) b.push_back(element(i));
    return b;
  }
  // Coordinates of an equivariant map.
  Mat<F> coords(const Mat<F>& phi) const {
    Mat<F> c(f_, dim_, 1);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      Mat<F> v = kers_left_[which_[g]] * (phi * gens_[g]);
      c.set_block(offset_[g], 0, v);
    }
    return c;
  }

 private:
  F f_;
  Module<F> M_, N_;
  std::vector<Mat<F>> gens_;
  std::vector<int> lens_;
  Mat<F> basis_inv_;
  std::vector<Mat<F>> kers_, kers_left_;
  std::vector<std::size_t> which_, offset_;
  std::size_t dim_ = 0;
};

// Reference construction: kernel of the intertwining constraint f a_M - a_N f.
template <class F>
std::vector<Mat<F>> hom_basis(const Module<F>& M, const Module<F>& N) {
  const F& f = M.field();
  const std::size_t m = M.dim(), n = N.dim();
  Mat<F> C(f, n * m, n * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Mat<F> e(f, n, m);
      e(i, j) = f.one();
      C.set_block(0, j * n + i, (e * M.act - N.act * e).vec());
    }
  auto K = kernel_basis(C);
  std::vector<Mat<F>> out;
  for (std::size_t c = 0; c < K.cols; ++c) out.push_back(Mat<F>::unvec(K.col(c), n, m));
  return out;
}

template <class F>
ModMap<F> proj_cover(const Algebra<F>& A, const Module<F>& M) {
  auto cd = cyclic_decomposition(M);
  auto P = free_module(A, cd.gens.size());
  Mat<F> pi(A.field, M.dim(), P.dim());
  for (std::size_t g = 0; g < cd.gens.size(); ++g) {
    Mat<F> v = cd.gens[g];
    for (int j = 0; j < A.m; ++j) {
      pi.set_block(0, g * A.m + j, v);
      v = M.act * v;
    }
  }
  return {P, M, pi};
}

// Reverses each length-m block; conjugates the transposed free action back to standard form.
template <class F>
Mat<F> block_reversal(const Algebra<F>& A, std::size_t t) {
  Mat<F> J(A.field, t * A.m, t * A.m);
  for (std::size_t i = 0; i < t; ++i)
    for (int j = 0; j < A.m; ++j) J(i * A.m + j, i * A.m + (A.m - 1 - j)) = A.field.one();
  return J;
}

template <class F>
ModMap<F> inj_hull(const Algebra<F>& A, const Module<F>& M) {
  auto c = proj_cover(A, dual(M));
  std::size_t t = c.src.dim() / A.m;
  return {M, c.src, block_reversal(A, t) * c.mat.transpose()};
}

template <class F>
struct SubModule {
  Module<F> mod;
  Mat<F> incl;
};

template <class F>
SubModule<F> submodule(const Module<F>& M, const Mat<F>& basis) {
  if (basis.cols == 0) return {Module<F>::zero(M.field()), Mat<F>(M.field(), M.dim(), 0)};
  return {Module<F>(left_inverse(basis) * M.act * basis), basis};
}

template <class F>
struct QuotientModule {
  Module<F> mod;
  Mat<F> proj;
};

// M / span(cols); the span must be a submodule.
template <class F>
QuotientModule<F> quotient(const Module<F>& M, const Mat<F>& cols) {
  Mat<F> q = cokernel_projection(cols.cols ? cols : Mat<F>(M.field(), M.dim(), 0));
  if (q.rows == 0) return {Module<F>::zero(M.field()), Mat<F>(M.field(), 0, M.dim())};
  return {Module<F>(q * M.act * right_inverse(q)), q};
}

template <class F>
struct Analysis {
  SubModule<F> kernel;
  Mat<F> coimage;  // source ->> image
  SubModule<F> image;
  QuotientModule<F> cokernel;
};

template <class F>
Analysis<F> analysis(const ModMap<F>& f) {
  Analysis<F> a;
  a.kernel = submodule(f.src, kernel_basis(f.mat));
  a.image = submodule(f.tgt, image_basis(f.mat));
  a.coimage = a.image.incl.cols ? left_inverse(a.image.incl) * f.mat : Mat<F>(f.mat.field, 0, f.src.dim());
  a.cokernel = quotient(f.tgt, a.image.incl);
  return a;
}

template <class F>
struct StableHom {
  std::size_t dim = 0;
  std::vector<Mat<F>> reps;
};

// Quotient of a coordinate space by a subspace: representatives of a complement.
template <class F>
std::vector<std::size_t> complement_pivots(const Mat<F>& sub, const Mat<F>& whole) {
  auto e = rref(hcat(sub, whole));
  std::vector<std::size_t> out;
  for (auto c : e.pivots)
    if (c >= sub.cols) out.push_back(c - sub.cols);
  return out;
}

template <class F>
StableHom<F> stable_hom(const Algebra<F>& A, const Module<F>& M, const Module<F>& N) {
  HomSpace<F> H(A, M, N);
  auto pc = proj_cover(A, N);
  HomSpace<F> HP(A, M, pc.src);
  Mat<F> sub(A.field, H.dim(), 0);
  for (std::size_t i = 0; i < HP.dim(); ++i) sub = hcat(sub, H.coords(pc.mat * HP.element(i)));
  Mat<F> whole = Mat<F>::identity(A.field, H.dim());
  StableHom<F> out;
  for (auto c : complement_pivots(sub, whole)) out.reps.push_back(H.element(c));
  out.dim = out.reps.size();
  return out;
}

}  // namespace ncx
