#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "floerss/f2linalg.hpp"

using namespace floerss;

namespace {

using Dense = std::vector<std::vector<int>>;

Dense random_dense(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Dense d(r, std::vector<int>(c));
  for (auto& row : d)
    for (auto& x : row) x = static_cast<int>(rng() & 1u);
  return d;
}

F2Matrix to_matrix(const Dense& d, std::size_t cols) {
  F2Matrix m(d.size(), cols);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, d[i][j] != 0);
  return m;
}

// Plain elimination over ints mod 2.
std::size_t naive_rank(Dense d) {
  std::size_t r = 0;
  const std::size_t cols = d.empty() ? 0 : d[0].size();
  for (std::size_t c = 0; c < cols && r < d.size(); ++c) {
    std::size_t p = r;
    while (p < d.size() && d[p][c] == 0) ++p;
    if (p == d.size()) continue;
    std::swap(d[p], d[r]);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (i != r && d[i][c])
        for (std::size_t j = 0; j < cols; ++j) d[i][j] ^= d[r][j];
    ++r;
  }
  return r;
}

}  // namespace

TEST(F2Vector, BasicOps) {
  F2Vector v(130);
  v.set(0);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 3u);
  EXPECT_EQ(v.support(), (std::vector<std::size_t>{0, 64, 129}));
  EXPECT_EQ(*v.first_set(), 0u);
  F2Vector w = F2Vector::unit(130, 64);
  EXPECT_TRUE(v.dot(w));
  v += w;
  EXPECT_FALSE(v.get(64));
  EXPECT_EQ(v.slice(128, 2).support(), (std::vector<std::size_t>{1}));
}

TEST(F2Matrix, ProductMatchesDefinition) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t a = 1 + rng() % 70, b = 1 + rng() % 70, c = 1 + rng() % 70;
    const Dense x = random_dense(rng, a, b), y = random_dense(rng, b, c);
    const F2Matrix p = to_matrix(x, b) * to_matrix(y, c);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t k = 0; k < c; ++k) {
        int s = 0;
        for (std::size_t j = 0; j < b; ++j) s ^= x[i][j] & y[j][k];
        ASSERT_EQ(p.get(i, k), s != 0);
      }
  }
}

TEST(F2Matrix, ShapeMismatchThrows) {
  EXPECT_THROW(F2Matrix(2, 3) * F2Matrix(2, 3), Error);
  EXPECT_THROW(F2Matrix(2, 3) * F2Vector(2), Error);
}

TEST(F2Linalg, RankKernelImageAgainstNaive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = rng() % 40, c = 1 + rng() % 80;
    const Dense d = random_dense(rng, r, c);
    const F2Matrix m = to_matrix(d, c);
    const std::size_t rk = naive_rank(d);
    ASSERT_EQ(rank(m), rk);
    const Subspace k = kernel(m);
    ASSERT_EQ(k.dim(), c - rk);
    for (const auto& v : k.basis_vectors()) ASSERT_TRUE((m * v).is_zero());
    const Subspace im = image(m);
    ASSERT_EQ(im.dim(), rk);
    for (std::size_t j = 0; j < c; ++j) ASSERT_TRUE(im.contains(m.column(j)));
  }
}

TEST(F2Linalg, SolveAndInverse) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
    const F2Matrix m = to_matrix(random_dense(rng, r, c), c);
    F2Vector x(c);
    for (std::size_t i = 0; i < c; ++i) x.set(i, rng() & 1u);
    const F2Vector b = m * x;
    const auto y = solve(m, b);
    ASSERT_TRUE(y.has_value());
    ASSERT_EQ(m * *y, b);
  }
  const F2Matrix singular = F2Matrix::from_rows(2, std::vector<F2Vector>{F2Vector::unit(2, 0), F2Vector::unit(2, 0)});
  EXPECT_FALSE(inverse(singular).has_value());
  EXPECT_FALSE(solve(singular, F2Vector::unit(2, 1)).has_value());
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const F2Matrix m = to_matrix(random_dense(rng, n, n), n);
    const auto inv = inverse(m);
    ASSERT_EQ(inv.has_value(), rank(m) == n);
    if (inv) {
      ASSERT_EQ(m * *inv, F2Matrix::identity(n));
    }
  }
}

TEST(Subspace, CanonicalAndReduce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 50;
    std::vector<F2Vector> vs;
    for (int k = 0; k < 6; ++k) {
      F2Vector v(n);
      for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1u);
      vs.push_back(v);
    }
    const Subspace a = Subspace::span(n, vs);
    std::vector<F2Vector> mixed = vs;
    for (std::size_t i = 1; i < mixed.size(); ++i) mixed[i] += mixed[i - 1];
    std::reverse(mixed.begin(), mixed.end());
    EXPECT_EQ(a, Subspace::span(n, mixed));
    for (const auto& v : vs) EXPECT_TRUE(a.contains(v));
    F2Vector u(n);
    for (std::size_t i = 0; i < n; ++i) u.set(i, rng() & 1u);
    const F2Vector red = a.reduce(u);
    EXPECT_TRUE(a.contains(red + u));
    for (std::size_t p : a.pivots()) EXPECT_FALSE(red.get(p));
  }
}

TEST(Quotient, DimsAndCoordinates) {
  const std::size_t n = 6;
  const Subspace sup = Subspace::span(n, std::vector<F2Vector>{F2Vector::from_bits({1, 1, 0, 0, 0, 0}),
                                                              F2Vector::from_bits({0, 0, 1, 0, 0, 0}),
                                                              F2Vector::from_bits({0, 0, 0, 1, 1, 0})});
  const Subspace sub = Subspace::span(n, std::vector<F2Vector>{F2Vector::from_bits({1, 1, 1, 0, 0, 0})});
  const Quotient q = quotient_map(sub, sup);
  EXPECT_EQ(q.dim(), 2u);
  for (const auto& rep : q.representatives()) EXPECT_TRUE(sup.contains(rep));
  const F2Vector v = F2Vector::from_bits({1, 1, 0, 1, 1, 0});
  const F2Vector c = q.coordinates(v);
  EXPECT_TRUE(sub.contains(q.lift(c) + v));
  EXPECT_TRUE(q.coordinates(F2Vector::from_bits({1, 1, 1, 0, 0, 0})).is_zero());
  EXPECT_THROW(q.coordinates(F2Vector::unit(n, 5)), Error);
  EXPECT_THROW(quotient_map(sup, sub), Error);
  EXPECT_TRUE((q.projector() * F2Vector::from_bits({1, 1, 1, 0, 0, 0})).is_zero());
}
