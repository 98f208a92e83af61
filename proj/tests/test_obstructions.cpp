#include <gtest/gtest.h>

#include "cubiq/cubiq.hpp"
#include "support/oracles.hpp"

using namespace cubiq;
using namespace cubiq::testing;

namespace {

Status brute(const IntMatrix& m) { return is_cubiquitous_bruteforce(BasisMatrix(m)).status; }

}  // namespace

TEST(WuElement, Examples) {
  auto w = wu_element(Subset({{3}}));
  EXPECT_EQ(w.W, (Vector{3}));
  EXPECT_EQ(w.odd, (IndexSet{0}));

  w = wu_element(length3_family(3));
  EXPECT_EQ(w.W, (Vector{0, 1, 3}));

  w = wu_element(Subset({{1, 1}, {1, -1}}));
  EXPECT_EQ(w.W, (Vector{2, 0}));
  EXPECT_EQ(w.even, (IndexSet{0}));
  EXPECT_EQ(w.zero, (IndexSet{1}));
}

TEST(WuElement, ParityClassesPartitionCoordinates) {
  Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    const Subset s = random_subset(rng, static_cast<std::size_t>(uniform(rng, 1, 6)), 3);
    const auto w = wu_element(s);
    ASSERT_EQ(w.odd.size() + w.even.size() + w.zero.size(), s.dim());
  }
}

TEST(WuObstruction, Examples) {
  auto v = wu_obstruction(Subset({{3}}));
  EXPECT_EQ(v.status, Status::Obstructed);
  EXPECT_EQ(v.inequality->lhs, 9);
  EXPECT_EQ(v.inequality->rhs, 1);

  v = wu_obstruction(Subset({{1, 1}, {1, -1}}));
  EXPECT_EQ(v.status, Status::Inconclusive);
  EXPECT_EQ(v.inequality->lhs, 4);
  EXPECT_EQ(v.inequality->rhs, 8);

  v = wu_obstruction(length3_family(3));
  EXPECT_EQ(v.status, Status::Obstructed);
  EXPECT_EQ(v.inequality->lhs, 10);
  EXPECT_EQ(v.inequality->rhs, 6);
  EXPECT_EQ(brute(length3_family(3).to_matrix()), Status::NotCubiquitous);
}

TEST(WuObstruction, Preconditions) {
  EXPECT_THROW(wu_obstruction(Subset({{1, 1, 0}, {1, 0, 1}, {0, 0, 1}})), NotNonAcute);
  EXPECT_THROW(wu_obstruction(Subset({{1, 1}})), PreconditionFailed);
  EXPECT_THROW(wu_obstruction_orthogonal(Subset({{1, 1}, {1, 0}})), NotOrthogonal);
}

TEST(WuObstruction, OrthogonalExamples) {
  auto v = wu_obstruction_orthogonal(Subset({{3}}));
  EXPECT_EQ(v.status, Status::Obstructed);
  EXPECT_EQ(v.inequality->lhs, 6);
  EXPECT_EQ(v.inequality->rhs, -2);

  v = wu_obstruction_orthogonal(Subset({{1, 0}, {0, 1}}));
  EXPECT_EQ(v.status, Status::Inconclusive);
  EXPECT_EQ(v.inequality->lhs, -4);

  v = wu_obstruction_orthogonal(Subset({{2, 0}, {0, 2}}));
  EXPECT_EQ(v.status, Status::Inconclusive);
  EXPECT_EQ(v.inequality->lhs, 2);
  EXPECT_EQ(v.inequality->rhs, 2);
  EXPECT_EQ(brute(IntMatrix{{2, 0}, {0, 2}}), Status::Cubiquitous);
}

TEST(WuObstruction, OrthogonalFormAgreesWithGeneralForm) {
  // For orthogonal subsets sum k_j^2 = sum a_i, so both inequalities are the
  // same statement shifted by 3n.
  Rng rng(32);
  for (int k = 0; k < 500; ++k) {
    const Subset s = random_orthogonal(rng, 6);
    ASSERT_EQ(wu_obstruction(s).status, wu_obstruction_orthogonal(s).status) << format_matrix(s.to_matrix());
  }
}

TEST(BruteForce, Examples) {
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(brute(IntMatrix::identity(n)), Status::Cubiquitous);
  const auto v = is_cubiquitous_bruteforce(BasisMatrix(IntMatrix{{3}}));
  EXPECT_EQ(v.status, Status::NotCubiquitous);
  EXPECT_EQ(v.witness, (Vector{1}));
  const auto c = is_cubiquitous_bruteforce(catalog_blocks()[0]);
  EXPECT_EQ(c.status, Status::NotCubiquitous);
}

TEST(BruteForce, WitnessesAreRecheckable) {
  Rng rng(33);
  for (int k = 0; k < 200; ++k) {
    const BasisMatrix b = random_basis(rng, static_cast<std::size_t>(uniform(rng, 1, 3)), 3);
    const auto v = is_cubiquitous_bruteforce(b);
    if (v.status != Status::NotCubiquitous) continue;
    const CramerMembership oracle(b.matrix());
    const Vector& x = *v.witness;
    for (std::uint64_t mask = 0; mask < (1ULL << x.size()); ++mask) {
      Vector y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += static_cast<std::int64_t>((mask >> i) & 1U);
      ASSERT_FALSE(oracle.contains(y));
    }
  }
}

TEST(BruteForce, AgreesWithPeriodicOracle) {
  Rng rng(34);
  for (int k = 0; k < 300; ++k) {
    const BasisMatrix b = random_basis(rng, static_cast<std::size_t>(uniform(rng, 1, 3)), 2);
    const bool oracle_cub = !periodic_cube_miss(b.matrix()).has_value();
    ASSERT_EQ(is_cubiquitous_bruteforce(b).status == Status::Cubiquitous, oracle_cub) << format_matrix(b.matrix());
  }
}

TEST(BruteForce, WorkerCountDoesNotChangeTheWitness) {
  Rng rng(35);
  for (int k = 0; k < 40; ++k) {
    const BasisMatrix b = random_basis(rng, 3, 4);
    const auto one = is_cubiquitous_bruteforce(b, Limits{1 << 24, 8, 1});
    const auto four = is_cubiquitous_bruteforce(b, Limits{1 << 24, 8, 4});
    ASSERT_EQ(one.status, four.status);
    ASSERT_EQ(one.witness, four.witness);
  }
}

TEST(BruteForce, ResourceCap) {
  EXPECT_THROW(is_cubiquitous_bruteforce(BasisMatrix(IntMatrix{{100, 0}, {0, 100}}), Limits{1000}), ResourceLimit);
}

TEST(BruteForce, InvariantUnderSignedPermutationAndBasisChange) {
  Rng rng(36);
  for (int k = 0; k < 150; ++k) {
    const BasisMatrix b = random_basis(rng, static_cast<std::size_t>(uniform(rng, 1, 3)), 3);
    const IntMatrix moved = signed_row_permutation(rng, scramble_columns(rng, b.matrix(), 6));
    ASSERT_EQ(brute(b.matrix()), brute(moved));
  }
}

TEST(Hajos, Examples) {
  const auto h = hajos_basis(BasisMatrix(IntMatrix{{2}}));
  ASSERT_TRUE(h);
  EXPECT_EQ(h->basis, (IntMatrix{{2}}));

  EXPECT_FALSE(hajos_basis(BasisMatrix(IntMatrix{{1, 0}, {0, 4}})));
  EXPECT_EQ(brute(IntMatrix{{1, 0}, {0, 4}}), Status::NotCubiquitous);

  // Two hyperbolic pairs span an index-4 lattice, not 2^4: no Hajós basis.
  const BasisMatrix hyper(IntMatrix{{1, -1}, {1, 1}});
  EXPECT_EQ(direct_sum(hyper, hyper).abs_det(), 4);
  EXPECT_FALSE(hajos_basis(direct_sum(hyper, hyper)));

  // A Hajós matrix stays recognisable after moving coordinates around.
  const IntMatrix h4{{2, 0, 0, 0}, {1, 2, 0, 0}, {0, 1, 2, 0}, {1, 0, 1, 2}};
  EXPECT_EQ(brute(h4), Status::Cubiquitous);
  Rng rng(370);
  for (int k = 0; k < 20; ++k) {
    EXPECT_TRUE(hajos_basis(BasisMatrix(signed_row_permutation(rng, scramble_columns(rng, h4, 5)))));
  }
}

TEST(Hajos, BasisIsHajosShapedAndSpansTheLattice) {
  Rng rng(37);
  int found = 0;
  for (int k = 0; k < 300; ++k) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 4));
    const IntMatrix m = signed_row_permutation(rng, scramble_columns(rng, random_hnf(rng, n, std::int64_t{1} << n), 5));
    const BasisMatrix b(m);
    const auto h = hajos_basis(b);
    if (!h) continue;
    ++found;
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(h->basis(i, i), 2);
      for (std::size_t j = 0; j < i; ++j) ASSERT_TRUE(h->basis(i, j) == 0 || h->basis(i, j) == 1);
      for (std::size_t j = i + 1; j < n; ++j) ASSERT_EQ(h->basis(i, j), 0);
    }
    ASSERT_EQ(hnf(BasisMatrix(m.permute_rows(h->row_order))).matrix(), h->basis);
  }
  EXPECT_GT(found, 0);
}

TEST(Hajos, PermutationCap) {
  const BasisMatrix b(IntMatrix::diagonal(Vector{2, 2, 2}));
  EXPECT_THROW(hajos_basis(b, Limits{1 << 24, 2, 1}), ResourceLimit);
  EXPECT_TRUE(hajos_basis(b, Limits{1 << 24, 3, 1}));
}

TEST(DetGate, Examples) {
  auto v = det_gate(BasisMatrix(IntMatrix{{3}}));
  EXPECT_EQ(v.status, Status::Obstructed);
  EXPECT_EQ(v.inequality->lhs, 3);
  EXPECT_EQ(v.inequality->rhs, 2);
  v = det_gate(BasisMatrix(IntMatrix{{2}}));
  EXPECT_EQ(v.status, Status::Cubiquitous);
  EXPECT_TRUE(v.hajos);
  EXPECT_EQ(det_gate(BasisMatrix(IntMatrix{{1}})).status, Status::Inconclusive);
  EXPECT_EQ(det_gate(BasisMatrix(IntMatrix{{1, 0}, {0, 4}})).status, Status::Obstructed);
}

TEST(DetGate, SoundAgainstBruteForce) {
  Rng rng(38);
  for (int k = 0; k < 400; ++k) {
    const BasisMatrix b = random_basis(rng, static_cast<std::size_t>(uniform(rng, 1, 3)), 2);
    const auto gate = det_gate(b);
    const auto bf = is_cubiquitous_bruteforce(b);
    if (gate.status == Status::Obstructed) {
      ASSERT_EQ(bf.status, Status::NotCubiquitous);
    }
    if (gate.status == Status::Cubiquitous) {
      ASSERT_EQ(bf.status, Status::Cubiquitous);
    }
  }
}

TEST(WuObstruction, SoundOnRandomNonAcuteSubsets) {
  Rng rng(39);
  int obstructed = 0;
  for (int k = 0; k < 20000 && obstructed < 200; ++k) {
    const Subset s = random_subset(rng, static_cast<std::size_t>(uniform(rng, 1, 4)), 3);
    if (det(s.to_matrix()) == 0 || !is_non_acute(s)) continue;
    if (wu_obstruction(s).status != Status::Obstructed) continue;
    ++obstructed;
    ASSERT_EQ(brute(s.to_matrix()), Status::NotCubiquitous) << format_matrix(s.to_matrix());
  }
  EXPECT_GT(obstructed, 0);
}
