#include <gtest/gtest.h>

#include <random>

#include "floerss/maslov.hpp"

using namespace floerss;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ParseError;
}

Eigen::MatrixXd random_gl(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = u(rng);
    if (std::abs(g.determinant()) > 0.1) return g;
  }
}

}  // namespace

TEST(Maslov, UnitaryRepresentative) {
  const Frame z = rotation_loop({1, 2, 0}, 16).samples[3];
  const Frame u = unitary_representative(z);
  EXPECT_LT((u.adjoint() * u - Frame::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(std::abs(det_squared(z) - cplx(z.determinant() * z.determinant())), 1e-9);
  Eigen::MatrixXd real(2, 2);
  real << 2, 1, 0, 3;
  EXPECT_LT(std::abs(det_squared(real.cast<cplx>()) - cplx(1, 0)), 1e-9);
  Frame scaled = z;
  scaled.col(0) *= 4.5;
  scaled.col(2) *= 0.25;
  EXPECT_LT(std::abs(det_squared(scaled) - det_squared(z)), 1e-9);
}

TEST(Maslov, Errors) {
  Frame bad(1, 1);
  bad(0, 0) = 0;
  EXPECT_EQ(code_of([&] { unitary_representative(bad); }), Errc::DegenerateFrame);
  Frame notlag(2, 2);
  notlag << cplx(1, 0), cplx(0, 1), cplx(0, 0), cplx(1, 0);
  EXPECT_EQ(code_of([&] { unitary_representative(notlag); }), Errc::NotLagrangian);
  EXPECT_EQ(code_of([&] { maslov_index(rotation_loop({1}, 4)); }), Errc::InsufficientSampling);
  const auto a = rotation_loop({1}, 8);
  LagrangianLoop shifted{1, {a.samples[2]}};
  EXPECT_EQ(code_of([&] { concatenate(a, shifted); }), Errc::BasepointMismatch);
}

TEST(Maslov, BasicIndices) {
  EXPECT_EQ(maslov_index(constant_loop(3, 8)).value, 0);
  for (std::size_t k : {64u, 128u, 256u}) EXPECT_EQ(maslov_index(rotation_loop({1}, k)).value, 1);
  for (int n = 1; n <= kMaxMaslovDim; ++n) {
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    w[0] = 1;
    EXPECT_EQ(maslov_index(rotation_loop(w, 64)).value, 1);
  }
  EXPECT_EQ(maslov_index(rotation_loop({1, 0}, 64)).value, 1);
  EXPECT_EQ(maslov_index(rotation_loop({-1, 3}, 64)).value, 2);
  const auto a = rotation_loop({1}, 64);
  EXPECT_EQ(maslov_index(concatenate(a, a)).value, 2);
  EXPECT_EQ(maslov_index(concatenate(a, reverse(a))).value, 0);
}

TEST(Maslov, RandomConcatenations) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> w(-2, 2), dim(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = dim(rng);
    std::vector<int> wa, wb;
    long sa = 0, sb = 0;
    for (int j = 0; j < n; ++j) {
      wa.push_back(w(rng));
      wb.push_back(w(rng));
      sa += wa.back();
      sb += wb.back();
    }
    const auto a = rotation_loop(wa, 64), b = rotation_loop(wb, 64);
    const auto ia = maslov_index(a), ib = maslov_index(b);
    EXPECT_EQ(ia.value, sa);
    EXPECT_EQ(ib.value, sb);
    EXPECT_EQ(maslov_index(concatenate(a, b)).value, sa + sb);
    EXPECT_EQ(maslov_index(concatenate(b, a)).value, sa + sb);
    EXPECT_EQ(maslov_index(reverse(a)).value, -sa);
    EXPECT_EQ(maslov_index(rotation_loop(wa, 128)).value, sa);
    auto moved = a;
    for (auto& z : moved.samples) z = z * random_gl(rng, n).cast<cplx>();
    const auto im = maslov_index(moved);
    EXPECT_EQ(im.value, sa);
    EXPECT_LT(std::abs(im.winding - static_cast<double>(sa)), kWindingTol);
  }
}
