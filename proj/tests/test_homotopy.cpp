#include <gtest/gtest.h>

#include "support.hpp"

using namespace ncx;
using namespace ncx::testing;
using Fp = PrimeField;

namespace {

struct Desk {
  int p, m, N;
};
const std::vector<Desk> kDesk = {{2, 1, 2}, {2, 2, 2}, {3, 2, 3}, {2, 3, 3}, {3, 2, 4}, {2, 2, 4}};

template <class F>
Homotopy<F> random_homotopy(const Algebra<F>& A, const NComplex<F>& X, const NComplex<F>& Y, Rng& g) {
  HomWindow<F> W(A, X, Y);
  Mat<F> c(A.field, W.homotopy_dim(), 1);
  for (auto& v : c.a) v = random_scalar(A.field, g);
  return W.homotopy_from_coords(c);
}

}  // namespace

TEST(NullHomotopy, BoundariesAreChainMapsWithRecoveredWitness) {
  for (auto [p, m, N] : kDesk) {
    Fp f(p);
    Algebra<Fp> A(f, m);
    Rng g(p * 31 + m * 7 + N);
    for (int t = 0; t < 6; ++t) {
      auto X = random_complex(A, N, g, 4, 3), Y = random_complex(A, N, g, 4, 3);
      auto h = random_homotopy(A, X, Y, g);
      auto phi = boundary_of(h);
      EXPECT_TRUE(is_chain_map(A, phi));
      auto w = null_homotopy(A, phi);
      ASSERT_TRUE(w.has_value());
      EXPECT_TRUE(verify_homotopy(*w, phi, std::min(X.lo, Y.lo) - N, std::max(X.hi(), Y.hi()) + N));
    }
  }
}

TEST(NullHomotopy, IdentityOfNonAcyclicMuIsNotNull) {
  Fp f(2);
  Algebra<Fp> A(f, 2);
  auto X = mu(free_module(A, 1), 0, 1, 3);
  EXPECT_FALSE(null_homotopy(A, identity_map(X)).has_value());
  auto C = mu(free_module(A, 1), 0, 3, 3);
  EXPECT_TRUE(null_homotopy(A, identity_map(C)).has_value());
}

// Hom out of mu_t^s(M) is amplitude homology of Hom(M, X); Hom into it is homology of Hom(X, M).
TEST(HomMu, HomotopySolverMatchesHomologyOfHomComplex) {
  int checked = 0;
  for (auto [p, m, N] : kDesk) {
    Fp f(p);
    Algebra<Fp> A(f, m);
    Rng g(p * 37 + m * 5 + N);
    for (int t = 0; t < 8; ++t) {
      auto X = random_complex(A, N, g, 4, 3);
      auto M = random_module(A, g, 3, true);
      int tt = uniform(g, 1, N - 1);
      int s = uniform(g, X.lo - 1, X.hi() + tt);
      auto probe = mu(M, s, tt, N);
      auto cov = hom_complex(A, X, M, Variance::covariant);
      auto out = hom_K(A, probe, X);
      EXPECT_EQ(out.dim, homology_dim(cov, s - tt + 1, tt));
      EXPECT_EQ(out.chain_dim, cycles(cov, s - tt + 1, tt).cols);
      auto con = hom_complex(A, X, M, Variance::contravariant);
      auto in = hom_K(A, X, probe);
      EXPECT_EQ(in.dim, homology_dim(con, -s, tt));
      EXPECT_EQ(in.chain_dim, cycles(con, -s, tt).cols);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 48);
}

TEST(ContractibleObjects, ConeOfIdentityIsZeroInK) {
  for (auto [p, m, N] : kDesk) {
    Fp f(p);
    Algebra<Fp> A(f, m);
    Rng g(p * 41 + m + N);
    auto X = random_complex(A, N, g, 3, 2);
    auto C = cone(identity_map(X));
    EXPECT_EQ(hom_K(A, C, C).dim, 0u);
  }
}

TEST(Triangles, StandardTriangleComposesToZeroInK) {
  for (auto [p, m, N] : kDesk) {
    Fp f(p);
    Algebra<Fp> A(f, m);
    Rng g(p * 43 + m + N);
    auto X = random_complex(A, N, g, 3, 2), Y = random_complex(A, N, g, 3, 2);
    auto phi = random_chain_map(A, X, Y, g);
    auto T = standard_triangle(phi);
    EXPECT_TRUE(is_chain_map(A, T.to_cone));
    EXPECT_TRUE(is_chain_map(A, T.to_suspension));
    EXPECT_TRUE(null_homotopy(A, compose(T.to_cone, phi)).has_value());
    EXPECT_TRUE(same_map(compose(T.to_suspension, T.to_cone), zero_map(Y, suspend(X))));
  }
}

TEST(SuspensionSquared, MatchesThetaShiftWithWitnessesOverF2) {
  Fp f(2);
  int found = 0;
  for (auto [m, N] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}, {2, 3}, {3, 2}}) {
    Algebra<Fp> A(f, m);
    Rng g(m * 13 + N);
    for (int t = 0; t < 4; ++t) {
      auto X = random_complex(A, N, g, 2, 2);
      auto S2 = suspend(suspend(X)), T = shift_theta(X, N);
      auto e = find_homotopy_equivalence(A, S2, T);
      ASSERT_EQ(e.status, Equivalence<Fp>::Status::found);
      auto vu = sub(compose(*e.v, *e.u), identity_map(S2));
      auto uv = sub(compose(*e.u, *e.v), identity_map(T));
      int lo = std::min(S2.lo, T.lo) - N, hi = std::max(S2.hi(), T.hi()) + N;
      EXPECT_TRUE(verify_homotopy(*e.vu_witness, vu, lo, hi));
      EXPECT_TRUE(verify_homotopy(*e.uv_witness, uv, lo, hi));
      ++found;
    }
  }
  EXPECT_EQ(found, 20);
}

TEST(SuspensionOfMu, AgreesWithClosedFormUpToHomotopy) {
  Fp f(2);
  for (auto [m, N] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {1, 3}, {2, 3}, {1, 4}}) {
    Algebra<Fp> A(f, m);
    auto M = free_module(A, 1);
    for (int t = 1; t <= N - 1; ++t)
      for (int n = -2; n <= 2; ++n) {
        int k = floor_div(n, 2), l = n - 2 * k, s = 1;
        auto lhs = suspend_pow(mu(M, s, t, N), n);
        auto rhs = l == 0 ? mu(M, -k * N + s, t, N) : mu(M, -k * N + s - t, N - t, N);
        auto e = find_homotopy_equivalence(A, lhs, rhs);
        EXPECT_EQ(e.status, Equivalence<Fp>::Status::found) << "m=" << m << " N=" << N << " t=" << t << " n=" << n;
      }
  }
}

TEST(EquivalenceSearch, ReportsAbsenceAndBudget) {
  Fp f(2);
  Algebra<Fp> A(f, 2);
  auto k = free_module(Algebra<Fp>(f, 1), 1);
  auto X = mu(Module<Fp>::trivial(f, 1), 0, 1, 2);
  auto Y = mu(Module<Fp>::trivial(f, 1), 1, 1, 2);
  EXPECT_EQ(find_homotopy_equivalence(A, X, Y).status, Equivalence<Fp>::Status::absent);
  (void)k;
  auto Z = direct_sum(X, X);
  auto e = find_homotopy_equivalence(A, Z, Z, 1);
  EXPECT_EQ(e.status, Equivalence<Fp>::Status::found);
}

TEST(EquivalenceSearch, DeterministicForFixedSeedOverQ) {
  Rationals q;
  Algebra<Rationals> A(q, 1);
  auto M = Module<Rationals>::trivial(q, 2);
  auto X = mu(M, 0, 1, 2);
  auto a = find_homotopy_equivalence(A, X, X, 64, 9), b = find_homotopy_equivalence(A, X, X, 64, 9);
  ASSERT_EQ(a.status, Equivalence<Rationals>::Status::found);
  EXPECT_EQ(a.tried, b.tried);
  EXPECT_TRUE(same_map(*a.v, *b.v));
}
