#include <gtest/gtest.h>

#include "fatpoints/oracle.hpp"

using namespace fatpoints;
using namespace fatpoints::oracle;

TEST(Rank, SmallMatrices) {
  const PrimeField f(65537);
  EXPECT_EQ(rank_mod_p(Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3), f), 3u);
  EXPECT_EQ(rank_mod_p(Matrix(3, 3), f), 0u);
  EXPECT_EQ(rank_mod_p(Matrix::from_rows({{1, 2, 3}, {1, 2, 3}, {0, 1, 5}}, 3), f), 2u);
  // rank depends on the characteristic
  EXPECT_EQ(rank_mod_p(Matrix::from_rows({{2, 4}, {1, 8}}, 2), 7), 2u);
  EXPECT_EQ(rank_mod_p(Matrix::from_rows({{2, 4}, {1, 9}}, 2), 7), 1u);
  EXPECT_EQ(rank_mod_p(Matrix::from_rows({{1, 3}, {2, 6}}, 2), 5), 1u);
}

TEST(Rank, KernelIsOrthogonalToRows) {
  const PrimeField f(101);
  Matrix m = Matrix::from_rows({{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 1, 0}}, 4);
  auto ker = kernel_basis(m, f);
  EXPECT_EQ(ker.size(), 2u);
  for (const auto& v : ker)
    for (std::size_t i = 0; i < m.rows; ++i) {
      u32 acc = 0;
      for (std::size_t j = 0; j < m.cols; ++j) acc = f.add(acc, f.mul(m(i, j), v[j]));
      EXPECT_EQ(acc, 0u);
    }
}

TEST(Field, Arithmetic) {
  const PrimeField f(65537);
  EXPECT_EQ(f.mul(f.inv(12345), 12345), 1u);
  EXPECT_EQ(f.pow(3, 65536), 1u);
  EXPECT_THROW(PrimeField(65536), std::invalid_argument);
  EXPECT_THROW(PrimeField(1ull << 33), std::invalid_argument);
  EXPECT_TRUE(is_prime(4294967291ull));
}

TEST(Sampling, DeterministicAndDistinct) {
  auto a = sample_points(20, 65537, 42, 0);
  auto b = sample_points(20, 65537, 42, 0);
  auto c = sample_points(20, 65537, 42, 1);
  EXPECT_EQ(a.points, b.points);
  EXPECT_NE(a.points, c.points);
  std::set<std::pair<u32, u32>> uniq(a.points.begin(), a.points.end());
  EXPECT_EQ(uniq.size(), 20u);
}

TEST(Conditions, MatrixShape) {
  auto cfg = sample_points(7, 65537, 1, 0);
  auto m = conditions_matrix(9, {4, 4, 4, 3, 3, 3, 3}, cfg);
  EXPECT_EQ(m.rows, 54u);
  EXPECT_EQ(m.cols, 55u);
  EXPECT_EQ(MonomialBasis(9).size(), 55u);
  EXPECT_EQ(MonomialBasis::index(0, 0), 0u);
  EXPECT_EQ(MonomialBasis::index(1, 0), 1u);
  EXPECT_EQ(MonomialBasis::index(0, 1), 2u);
}

TEST(DimSystem, ConicThroughFivePoints) {
  auto r = dim_system(2, parse_multiplicities("1^5"));
  EXPECT_EQ(r.dim_observed, 0);
  EXPECT_EQ(r.certificate, DimCertificate::Nonspecial);
}

TEST(DimSystem, DoubledConicIsSpecial) {
  auto r = dim_system(4, parse_multiplicities("2^5"));
  EXPECT_EQ(r.rows, 15u);
  EXPECT_EQ(r.cols, 15u);
  EXPECT_EQ(r.max_rank, 14u);
  EXPECT_EQ(r.dim_observed, 0);
  EXPECT_EQ(r.edim, -1);
  EXPECT_EQ(r.certificate, DimCertificate::None);
  EXPECT_EQ(r.trials_run, 3u);
}

TEST(DimSystem, LineWithDoublePointIsEmpty) {
  auto r = dim_system(1, MultiplicitySequence({2}), {65537, 1, 1});
  EXPECT_EQ(r.dim_observed, -1);
  EXPECT_EQ(r.certificate, DimCertificate::Empty);
}

TEST(DimSystem, ContinuedExample) {
  auto r = dim_system(9, parse_multiplicities("4,4,4,3,3,3,3"));
  EXPECT_EQ(r.max_rank, 54u);
  EXPECT_EQ(r.dim_observed, 0);
  EXPECT_EQ(r.certificate, DimCertificate::Nonspecial);
  EXPECT_EQ(r.trials_run, 1u);
}

TEST(DimSystem, Guards) {
  EXPECT_THROW(dim_system(-1, MultiplicitySequence({1})), std::invalid_argument);
  EXPECT_THROW(dim_system(20, MultiplicitySequence({1}), {13, 1, 1}), std::invalid_argument);
  EXPECT_THROW(dim_system(2, MultiplicitySequence({1}), {65537, 0, 1}), std::invalid_argument);
}

TEST(DimSystem, SmallPrimeStillWorks) {
  auto r = dim_system(4, parse_multiplicities("2^4"), {101, 3, 9});
  EXPECT_EQ(r.dim_observed, 2);
  EXPECT_EQ(r.certificate, DimCertificate::Nonspecial);
}

TEST(Alpha, Examples) {
  auto a = alpha_scan(parse_multiplicities("1^5"), 2);
  EXPECT_EQ(a.alpha_lb, 4);
  EXPECT_EQ(a.alpha_observed, 4);
  EXPECT_EQ(alpha_scan(parse_multiplicities("1^5"), 1).alpha_observed, 2);
  EXPECT_EQ(alpha_scan(MultiplicitySequence({6}), 1).alpha_observed, 6);
  EXPECT_TRUE(alpha_scan(MultiplicitySequence({6}), 1).alpha_certified);
  EXPECT_THROW(alpha_scan(MultiplicitySequence({1}), 0), std::invalid_argument);
}

TEST(TruncatedContainment, Examples) {
  EXPECT_TRUE(truncated_containment_check(MultiplicitySequence({1}), 1, 4).holds());
  EXPECT_TRUE(truncated_containment_check(parse_multiplicities("1^4"), 1, 6).holds());
  auto r = truncated_containment_check(parse_multiplicities("2,1^8"), 1, 8);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.degrees.size(), 9u);
  EXPECT_EQ(r.degrees.back().dim_symbolic, 11u);
}

TEST(TruncatedContainment, SquareOfPointIdealAtDegreeTwo) {
  // I^(2) = m_P^2 for one point: 3 quadrics in degree 2, inside the 5-dimensional (M m_P)_2.
  auto r = truncated_containment_check(MultiplicitySequence({1}), 1, 2);
  EXPECT_EQ(r.degrees[2].dim_symbolic, 3u);
  EXPECT_EQ(r.degrees[2].dim_target, 5u);
  EXPECT_TRUE(r.degrees[2].contained);
}

TEST(TruncatedContainment, Guards) {
  EXPECT_THROW(truncated_containment_check(MultiplicitySequence({1}), 0, 4), std::invalid_argument);
  EXPECT_THROW(truncated_containment_check(MultiplicitySequence({1}), 1, kMaxContainmentDegree + 1),
               std::invalid_argument);
  EXPECT_THROW(truncated_containment_check(MultiplicitySequence({1}), kMaxContainmentPower + 1, 4),
               std::invalid_argument);
  EXPECT_EQ(default_t_max(parse_multiplicities("1^4"), 2), 8);
  EXPECT_EQ(default_t_max(parse_multiplicities("3,1"), 1), 5);
}
