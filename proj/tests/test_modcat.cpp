#include <gtest/gtest.h>

#include "support.hpp"

using namespace ncx;
using namespace ncx::testing;
using Fp = PrimeField;

namespace {

// |ker x^j| = sum_i min(lambda_i, j)
std::vector<int> jordan_by_kernels(const Module<Fp>& M, int m) {
  std::vector<std::size_t> k(m + 2, 0);
  for (int j = 0; j <= m + 1; ++j) k[j] = brute_kernel_dim(power(M.act, j));
  std::vector<int> parts;
  for (int len = m; len >= 1; --len) {
    // number of blocks of size >= len minus size >= len+1
    auto ge = [&](int l) { return static_cast<int>(k[l] - k[l - 1]); };
    int cnt = ge(len) - (len + 1 <= m + 1 ? ge(len + 1) : 0);
    for (int c = 0; c < cnt; ++c) parts.push_back(len);
  }
  return parts;
}

// stable Hom(k[x]/x^a, k[x]/x^b) over A_m
int stable_cyclic(int a, int b, int m) { return std::min(a, b) - std::max(0, a + b - m); }

}  // namespace

class Modules : public ::testing::TestWithParam<std::tuple<int, int>> {
 protected:
  Fp f{std::get<0>(GetParam())};
  Algebra<Fp> A{f, std::get<1>(GetParam())};
};

TEST_P(Modules, JordanTypeMatchesKernelCounts) {
  Rng g(3 * A.m + f.p);
  for (int t = 0; t < 25; ++t) {
    auto M = random_module(A, g, 4);
    EXPECT_EQ(jordan_type(M), jordan_by_kernels(M, A.m));
  }
}

TEST_P(Modules, HomDimensionMatchesEnumerationAndPartitions) {
  Rng g(5 * A.m + f.p);
  for (int t = 0; t < 20; ++t) {
    auto M = random_module(A, g, 3), N = random_module(A, g, 3);
    HomSpace<Fp> H(A, M, N);
    EXPECT_EQ(H.dim(), brute_hom_dim(M, N));
    EXPECT_EQ(H.dim(), hom_basis(M, N).size());
    std::size_t expect = 0;
    for (int a : jordan_type(M))
      for (int b : jordan_type(N)) expect += std::min(a, b);
    EXPECT_EQ(H.dim(), expect);
    for (std::size_t i = 0; i < H.dim(); ++i) {
      auto e = H.element(i);
      EXPECT_TRUE(is_equivariant(M, N, e));
      EXPECT_EQ(H.coords(e), H.coords(H.from_coords(H.coords(e))));
    }
  }
}

TEST_P(Modules, ProjectiveCoverIsMinimalAndEpic) {
  Rng g(7 * A.m + f.p);
  for (int t = 0; t < 25; ++t) {
    auto M = random_module(A, g, 5);
    auto c = proj_cover(A, M);
    EXPECT_TRUE(is_standard_free(A, c.src));
    EXPECT_TRUE(is_equivariant(c.src, M, c.mat));
    EXPECT_EQ(rank(c.mat), M.dim());
    EXPECT_EQ(c.src.dim() / A.m, jordan_type(M).size());
  }
}

TEST_P(Modules, InjectiveHullIsMonic) {
  Rng g(9 * A.m + f.p);
  for (int t = 0; t < 25; ++t) {
    auto M = random_module(A, g, 5);
    auto h = inj_hull(A, M);
    EXPECT_TRUE(is_standard_free(A, h.tgt));
    EXPECT_TRUE(is_equivariant(M, h.tgt, h.mat));
    EXPECT_EQ(rank(h.mat), M.dim());
    EXPECT_EQ(h.tgt.dim() / A.m, jordan_type(M).size());
  }
}

TEST_P(Modules, StableHomMatchesCyclicFormula) {
  Rng g(13 * A.m + f.p);
  for (int t = 0; t < 20; ++t) {
    auto M = random_module(A, g, 4), N = random_module(A, g, 4);
    int expect = 0;
    for (int a : jordan_type(M))
      for (int b : jordan_type(N)) expect += stable_cyclic(a, b, A.m);
    EXPECT_EQ(static_cast<int>(stable_hom(A, M, N).dim), expect);
  }
}

TEST_P(Modules, AnalysisDimensionsAdd) {
  Rng g(17 * A.m + f.p);
  for (int t = 0; t < 20; ++t) {
    auto M = random_module(A, g, 4), N = random_module(A, g, 4);
    ModMap<Fp> phi{M, N, random_hom(A, M, N, g)};
    auto an = analysis(phi);
    EXPECT_EQ(an.kernel.mod.dim() + an.image.mod.dim(), M.dim());
    EXPECT_EQ(an.image.mod.dim() + an.cokernel.mod.dim(), N.dim());
    EXPECT_EQ(an.image.incl * an.coimage, phi.mat);
    EXPECT_TRUE(is_module(A, an.kernel.mod));
    EXPECT_TRUE(is_module(A, an.cokernel.mod));
  }
}

// Two projective presentations of the same module have syzygies that agree up to free summands.
TEST_P(Modules, Schanuel) {
  Rng g(19 * A.m + f.p);
  for (int t = 0; t < 30; ++t) {
    auto M = random_module(A, g, 4);
    auto p1 = proj_cover(A, M);
    auto p2 = padded_cover(A, M, uniform(g, 1, 2), g);
    auto Z1 = submodule(p1.src, kernel_basis(p1.mat)).mod;
    auto Z2 = submodule(p2.src, kernel_basis(p2.mat)).mod;
    auto lhs = jordan_type(direct_sum(Z1, p2.src));
    auto rhs = jordan_type(direct_sum(Z2, p1.src));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_P(Modules, DualReversesJordanTypeTrivially) {
  Rng g(23 * A.m + f.p);
  for (int t = 0; t < 10; ++t) {
    auto M = random_module(A, g, 5);
    EXPECT_EQ(jordan_type(dual(M)), jordan_type(M));
  }
}

INSTANTIATE_TEST_SUITE_P(Desk, Modules,
                         ::testing::Combine(::testing::Values(2, 3), ::testing::Values(1, 2, 3)));

TEST(ModuleBasics, NonNilpotentRejected) {
  Fp f(2);
  Mat<Fp> a = Mat<Fp>::identity(f, 1);
  EXPECT_THROW(jordan_type(Module<Fp>(a)), Error);
  EXPECT_FALSE(is_module(Algebra<Fp>(f, 2), Module<Fp>(a)));
}

TEST(ModuleBasics, BlockReversalIntertwinesDualFreeAction) {
  Fp f(3);
  Algebra<Fp> A(f, 3);
  auto F2 = free_module(A, 2);
  auto J = block_reversal(A, 2);
  EXPECT_EQ(J * F2.act.transpose() * J, F2.act);
}
