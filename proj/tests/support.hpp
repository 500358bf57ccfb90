#pragma once

// Random generators and brute-force oracles shared by the unit and acceptance suites.

#include <random>

#include "ncx/ncx.hpp"

namespace ncx::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

template <class F>
typename F::value_type random_scalar(const F& f, Rng& g) {
  if constexpr (std::is_same_v<F, PrimeField>) return f.from_int(uniform(g, 0, static_cast<int>(f.p) - 1));
  else return f.from_int(uniform(g, -2, 2));
}

template <class F>
Mat<F> random_mat(const F& f, std::size_t r, std::size_t c, Rng& g) {
  Mat<F> m(f, r, c);
  for (auto& v : m.a) v = random_scalar(f, g);
  return m;
}

template <class F>
Mat<F> random_invertible(const F& f, std::size_t n, Rng& g) {
  while (true) {
    auto m = random_mat(f, n, n, g);
    if (rank(m) == n) return m;
  }
}

inline std::vector<int> random_partition(Rng& g, int m, int max_dim) {
  std::vector<int> parts;
  int total = 0;
  int count = uniform(g, 0, 4);
  for (int i = 0; i < count; ++i) {
    int p = uniform(g, 1, m);
    if (total + p > max_dim) break;
    parts.push_back(p);
    total += p;
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

template <class F>
Module<F> conjugate(const Module<F>& M, const Mat<F>& T) {
  return Module<F>(T * M.act * *inverse(T));
}

template <class F>
Module<F> random_module(const Algebra<F>& A, Rng& g, int max_dim = 6, bool nonzero = false) {
  while (true) {
    auto parts = random_partition(g, A.m, max_dim);
    if (nonzero && parts.empty()) continue;
    auto M = module_from_partition(A.field, parts);
    return conjugate(M, random_invertible(A.field, M.dim(), g));
  }
}

template <class F>
Mat<F> random_hom(const Algebra<F>& A, const Module<F>& M, const Module<F>& N, Rng& g) {
  HomSpace<F> H(A, M, N);
  Mat<F> c(A.field, H.dim(), 1);
  for (auto& v : c.a) v = random_scalar(A.field, g);
  return H.from_coords(c);
}

// Each differential kills the image of the previous N-1 fold composite.
template <class F>
NComplex<F> random_complex(const Algebra<F>& A, int N, Rng& g, int max_len = 5, int max_dim = 5) {
  int len = uniform(g, 1, max_len);
  int lo = uniform(g, -3, 3);
  NComplex<F> X(A.field, N, lo);
  X.obj.push_back(random_module(A, g, max_dim));
  for (int k = lo; k < lo + len - 1; ++k) {
    auto next = random_module(A, g, max_dim);
    auto q = quotient(X.obj.back(), boundaries(X, k, N - 1));
    Mat<F> d = random_hom(A, q.mod, next, g) * q.proj;
    X.obj.push_back(next);
    X.d.push_back(d);
  }
  return X;
}

template <class F>
ChainMap<F> random_chain_map(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y, Rng& g) {
  auto K = HomWindow<F>(A, X, Y);
  const auto& C = K.chain_basis();
  Mat<F> c(A.field, C.cols, 1);
  for (auto& v : c.a) v = random_scalar(A.field, g);
  return K.from_coords(C * c);
}

// Acyclic: random sums of mu_N's, twisted by cones of random maps between them.
template <class F>
NComplex<F> random_acyclic(const Algebra<F>& A, int N, Rng& g, int max_dim = 3) {
  auto sum_of_mus = [&]() {
    NComplex<F> X(A.field, N, 0);
    int count = uniform(g, 1, 2);
    for (int i = 0; i < count; ++i) X = direct_sum(X, mu(random_module(A, g, max_dim, true), uniform(g, -2, 2), N, N));
    return X;
  };
  auto X = sum_of_mus();
  if (uniform(g, 0, 1)) {
    auto Y = sum_of_mus();
    X = cone(random_chain_map(A, X, Y, g));
  }
  return trimmed(X);
}

template <class F>
std::pair<Module<F>, Mat<F>> random_extension(const Algebra<F>& A, const Module<F>& M, const Module<F>& Z, Rng& g) {
  const F& f = A.field;
  const std::size_t m = M.dim(), z = Z.dim();
  Mat<F> C(f, m * z, m * z);
  for (std::size_t j = 0; j < z; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      Mat<F> e(f, m, z);
      e(i, j) = f.one();
      Mat<F> s(f, m, z);
      for (int p = 0; p < A.m; ++p) s = s + power(M.act, p) * e * power(Z.act, A.m - 1 - p);
      C.set_block(0, j * m + i, s.vec());
    }
  auto K = kernel_basis(C);
  Mat<F> c(f, K.cols, 1);
  for (auto& v : c.a) v = random_scalar(f, g);
  Mat<F> top = Mat<F>::unvec(K * c, m, z);
  Mat<F> act = diag(M.act, Z.act);
  act.set_block(0, m, top);
  Mat<F> inc(f, m + z, m);
  inc.set_block(0, 0, Mat<F>::identity(f, m));
  auto T = random_invertible(f, m + z, g);
  return {Module<F>(T * act * *inverse(T)), T * inc};
}

template <class F>
MonChain<F> random_monchain(const Algebra<F>& A, int N, Rng& g, int max_dim = 3) {
  MonChain<F> X;
  X.obj.push_back(random_module(A, g, max_dim));
  for (int r = 1; r < N - 1; ++r) {
    auto [E, inc] = random_extension(A, X.obj.back(), random_module(A, g, max_dim), g);
    X.obj.push_back(E);
    X.mono.push_back(inc);
  }
  return X;
}

// Brute-force: all vectors of F_p^n.
inline std::vector<std::vector<std::int64_t>> all_vectors(std::int64_t p, std::size_t n) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> c(n, 0);
  while (true) {
    out.push_back(c);
    std::size_t i = 0;
    while (i < n && c[i] == p - 1) c[i++] = 0;
    if (i == n) break;
    ++c[i];
  }
  return out;
}

}  // namespace ncx::testing

namespace ncx::testing {

// Minimal cover padded by e extra free generators with random images.
template <class F>
ModMap<F> padded_cover(const Algebra<F>& A, const Module<F>& M, std::size_t e, Rng& g) {
  auto c = proj_cover(A, M);
  auto extra = free_module(A, e);
  Mat<F> m = hcat(c.mat, random_hom(A, extra, M, g));
  return {free_module(A, c.src.dim() / A.m + e), M, m};
}

// Oracle values via enumeration of F_p^n.
template <class F>
std::size_t brute_kernel_dim(const Mat<F>& m) {
  std::size_t count = 0;
  for (const auto& v : all_vectors(m.field.p, m.cols)) {
    Mat<F> x(m.field, m.cols, 1);
    for (std::size_t i = 0; i < v.size(); ++i) x(i, 0) = v[i];
    if ((m * x).is_zero()) ++count;
  }
  std::size_t d = 0;
  while (count > 1) {
    count /= static_cast<std::size_t>(m.field.p);
    ++d;
  }
  return d;
}

template <class F>
std::size_t brute_rank(const Mat<F>& m) {
  return m.cols - brute_kernel_dim(m);
}

// dim of {f : f a_M = a_N f} by enumerating all matrices.
template <class F>
std::size_t brute_hom_dim(const Module<F>& M, const Module<F>& N) {
  const F& f = M.field();
  std::size_t r = N.dim(), c = M.dim();
  std::size_t count = 0;
  for (const auto& v : all_vectors(f.p, r * c)) {
    Mat<F> x(f, r, c);
    for (std::size_t i = 0; i < v.size(); ++i) x.a[i] = v[i];
    if (x * M.act == N.act * x) ++count;
  }
  std::size_t d = 0;
  while (count > 1) {
    count /= static_cast<std::size_t>(f.p);
    ++d;
  }
  return d;
}

inline std::vector<int> drop_parts(std::vector<int> v, int part) {
  v.erase(std::remove(v.begin(), v.end(), part), v.end());
  return v;
}

// End ring is local iff every endomorphism is nilpotent or invertible; enumerates all of End over F_p.
template <class F>
bool has_local_endomorphisms(const Algebra<F>& A, const MonChain<F>& X) {
  auto iX = mmor_iota(X, 0);
  HomWindow<F> H(A, iX, iX);
  const auto& C = H.chain_basis();
  for (const auto& v : all_vectors(A.field.p, C.cols)) {
    Mat<F> c(A.field, C.cols, 1);
    for (std::size_t i = 0; i < v.size(); ++i) c(i, 0) = v[i];
    auto e = H.from_coords(C * c);
    bool inv = true, nil = true;
    for (int k = iX.lo; k <= iX.hi(); ++k) {
      const auto& M = e.at(k);
      if (rank(M) != M.rows) inv = false;
      if (!power(M, static_cast<int>(M.rows) + 1).is_zero()) nil = false;
    }
    if (!inv && !nil) return false;
  }
  return true;
}

struct Corpus {
  int m, N;
  std::vector<MonChain<PrimeField>> objects;
};

// Indecomposable monic chains over F_2: A_2 with N = 2, 3 and A_3 with N = 2.
inline std::vector<Corpus> indecomposable_corpus() {
  using Fp = PrimeField;
  Fp f(2);
  std::vector<Corpus> out;
  Algebra<Fp> A2(f, 2);
  auto k = Module<Fp>::trivial(f, 1);
  auto F1 = free_module(A2, 1);
  out.push_back({2, 2, {mu_chain(k, 1, 2), mu_chain(F1, 1, 2)}});
  MonChain<Fp> soc{{k, F1}, {Mat<Fp>(f, 2, 1)}};
  soc.mono[0](1, 0) = 1;
  out.push_back({2, 3, {mu_chain(k, 1, 3), mu_chain(F1, 1, 3), mu_chain(k, 2, 3), mu_chain(F1, 2, 3), soc}});
  std::vector<MonChain<Fp>> a3;
  for (int j = 1; j <= 3; ++j) a3.push_back(mu_chain(cyclic_module(f, j), 1, 2));
  out.push_back({3, 2, a3});
  return out;
}

}  // namespace ncx::testing
