#include <gtest/gtest.h>

#include "support.hpp"

using namespace ncx;
using namespace ncx::testing;
using Fp = PrimeField;

namespace {

NComplex<Fp> point(const Module<Fp>& M, int N) { return make_complex(M.field(), N, 0, {M}, {}); }

}  // namespace

TEST(DerivedHom, ExtOfTrivialModuleIsOneDimensional) {
  for (int m : {2, 3}) {
    Fp f(2);
    Algebra<Fp> A(f, m);
    auto K = point(Module<Fp>::trivial(f, 1), 2);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(ext(A, K, K, n).dim, 1u) << "m=" << m << " n=" << n;
    auto P = point(free_module(A, 1), 2);
    EXPECT_EQ(ext(A, P, K, 0).dim, 1u);
    for (int n = 1; n <= 3; ++n) EXPECT_EQ(ext(A, P, K, n).dim, 0u);
  }
}

TEST(DerivedHom, AgreesWithHomotopyHomForProjectiveSource) {
  Fp f(3);
  Algebra<Fp> A(f, 2);
  Rng g(3);
  for (int t = 0; t < 6; ++t) {
    auto Y = random_complex(A, 3, g, 3, 3);
    auto X = mu(free_module(A, uniform(g, 1, 2)), uniform(g, -1, 2), 1, 3);
    EXPECT_EQ(hom_D(A, X, Y).dim, hom_K(A, X, Y).dim);
  }
}

TEST(DerivedHom, AugmentationIsQuasiIsomorphismOnBoundedWindow) {
  Fp f(2);
  Algebra<Fp> A(f, 2);
  Rng g(5);
  auto X = random_complex(A, 3, g, 3, 3);
  Keller<Fp> K(A, X);
  K.extend_to(X.lo - 6);
  auto aug = K.augmentation();
  auto C = cone(aug);
  EXPECT_TRUE(is_acyclic_on(C, X.lo - 6 + 2, C.hi()));
  EXPECT_TRUE(is_quasi_iso(identity_map(X)));
}

TEST(Perfectness, FreeMuIsPerfectAndNonProjectivePointIsNot) {
  for (int N : {2, 3}) {
    for (int m : {2, 3}) {
      Fp f(2);
      Algebra<Fp> A(f, m);
      auto r = is_perfect(A, mu(free_module(A, 1), 0, 1, N));
      EXPECT_TRUE(r.perfect);
      auto q = is_perfect(A, mmor_iota(mu_chain(Module<Fp>::trivial(f, 1), N - 1, N), 0));
      EXPECT_FALSE(q.perfect);
      EXPECT_GT(q.degree, -1000);
      EXPECT_NE(q.repeat_of, q.degree);
    }
    Fp f(3);
    Algebra<Fp> A1(f, 1);
    Rng g(N);
    for (int t = 0; t < 4; ++t) EXPECT_TRUE(is_perfect(A1, random_complex(A1, N, g, 3, 3)).perfect);
  }
}

TEST(SingularHom, AnchorTrivialModuleOverDualNumbers) {
  Fp f(2);
  Algebra<Fp> A(f, 2);
  auto K = point(Module<Fp>::trivial(f, 1), 2);
  auto s = hom_sing(A, K, K);
  EXPECT_EQ(s.dim, 1u);
  auto P = point(free_module(A, 1), 2);
  EXPECT_EQ(hom_sing(A, P, K).dim, 0u);
  EXPECT_EQ(hom_sing(A, K, P).dim, 0u);
}

TEST(Buchweitz, CorpusIsIndecomposable) {
  for (const auto& c : indecomposable_corpus()) {
    Algebra<Fp> A(Fp(2), c.m);
    for (const auto& X : c.objects) {
      EXPECT_TRUE(mmor_validate(A, X).ok);
      EXPECT_TRUE(has_local_endomorphisms(A, X));
    }
  }
}

TEST(Buchweitz, PassesOnAllCorpusPairs) {
  int pairs = 0;
  for (const auto& c : indecomposable_corpus()) {
    Algebra<Fp> A(Fp(2), c.m);
    for (const auto& X : c.objects)
      for (const auto& Y : c.objects) {
        auto r = buchweitz_verify(A, X, Y);
        EXPECT_TRUE(r.pass) << "m=" << c.m << " N=" << c.N << " stable " << r.stable_dim << " singular " << r.sing_dim;
        ++pairs;
      }
  }
  EXPECT_EQ(pairs, 4 + 25 + 9);
}

TEST(Buchweitz, TateHomInDegreeZeroIsStableHom) {
  for (const auto& c : indecomposable_corpus()) {
    Algebra<Fp> A(Fp(2), c.m);
    for (std::size_t i = 0; i < c.objects.size(); ++i) {
      const auto& X = c.objects[i];
      const auto& Y = c.objects[(i + 1) % c.objects.size()];
      EXPECT_EQ(tate_hom(A, X, Y, 0).dim, mmor_stable_hom(A, X, Y).dim);
    }
  }
}

TEST(Buchweitz, RandomMonChainsOverF3) {
  Fp f(3);
  Algebra<Fp> A(f, 2);
  Rng g(11);
  for (int t = 0; t < 4; ++t) {
    auto X = random_monchain(A, 3, g, 2), Y = random_monchain(A, 3, g, 2);
    EXPECT_TRUE(buchweitz_verify(A, X, Y).pass);
  }
}
