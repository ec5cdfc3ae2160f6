#pragma once

// Maslov index of a sampled loop of Lagrangian frames in C^n, computed as the
// winding number of det^2 of the unitary polar factor.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "floerss/error.hpp"

namespace floerss {

using cplx = std::complex<double>;
using Frame = Eigen::MatrixXcd;

inline constexpr int kMaxMaslovDim = 8;
inline constexpr double kLagrangianTol = 1e-9;
inline constexpr double kWindingTol = 1e-6;
inline constexpr double kStepGuard = std::numbers::pi / 2;

struct LagrangianLoop {
  int n = 0;
  std::vector<Frame> samples;
};

struct MaslovIndex {
  long value = 0;
  double max_step = 0;  // largest |arg change| of det^2 over one step
  double winding = 0;   // accumulated arg / 2 pi before rounding
};

/// Throws unless Im(Z^H Z) vanishes relative to |Z^H Z|.
inline void check_lagrangian(const Frame& z) {
  if (z.rows() != z.cols() || z.rows() == 0) throw Error(Errc::ShapeMismatch, "frame must be a nonempty square matrix");
  if (!z.allFinite()) throw Error(Errc::DegenerateFrame, "frame has non-finite entries");
  const Frame g = z.adjoint() * z;
  const double scale = g.cwiseAbs().maxCoeff();
  if (scale == 0) throw Error(Errc::DegenerateFrame, "zero frame");
  if (g.imag().cwiseAbs().maxCoeff() > kLagrangianTol * scale)
    throw Error(Errc::NotLagrangian, "symplectic form does not vanish on the frame columns");
}

/// Unitary polar factor of the frame by Newton iteration U <- (U + U^{-H}) / 2.
inline Frame unitary_representative(const Frame& z) {
  check_lagrangian(z);
  const Eigen::JacobiSVD<Frame> svd(z);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-12 * s(0)) throw Error(Errc::DegenerateFrame, "frame does not have full rank");
  Frame u = z / std::sqrt(s(0) * s(s.size() - 1));
  for (int it = 0; it < 100; ++it) {
    const Frame next = 0.5 * (u + u.adjoint().inverse());
    const double diff = (next - u).cwiseAbs().maxCoeff();
    u = next;
    if (diff < 1e-15) break;
  }
  return u;
}

inline cplx det_squared(const Frame& z) {
  const cplx d = unitary_representative(z).determinant();
  return d * d;
}

inline double normalized_arg_step(cplx from, cplx to) { return std::arg(to / from); }

inline MaslovIndex maslov_index(const LagrangianLoop& loop) {
  if (loop.n < 1 || loop.n > kMaxMaslovDim) throw Error(Errc::SizeLimit, "ambient dimension must be in 1..8");
  if (loop.samples.empty()) throw Error(Errc::InvalidArgument, "loop has no samples");
  std::vector<cplx> dets;
  dets.reserve(loop.samples.size());
  for (const auto& z : loop.samples) {
    if (z.rows() != loop.n || z.cols() != loop.n) throw Error(Errc::ShapeMismatch, "frame size differs from n");
    dets.push_back(det_squared(z));
  }
  MaslovIndex out;
  double total = 0;
  const std::size_t k = dets.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double step = normalized_arg_step(dets[i], dets[(i + 1) % k]);
    out.max_step = std::max(out.max_step, std::abs(step));
    if (std::abs(step) >= kStepGuard)
      throw Error(Errc::InsufficientSampling,
                  "det^2 argument jumps by " + std::to_string(std::abs(step)) + " rad at sample " + std::to_string(i) +
                      "; resample the loop");
    total += step;
  }
  out.winding = total / (2 * std::numbers::pi);
  out.value = std::lround(out.winding);
  if (std::abs(out.winding - static_cast<double>(out.value)) > kWindingTol)
    throw Error(Errc::InsufficientSampling, "winding is not an integer within tolerance");
  return out;
}

/// Same real span: U_a^H U_b is real for the unitary factors.
inline bool same_subspace(const Frame& a, const Frame& b) {
  if (a.rows() != b.rows()) return false;
  const Frame m = unitary_representative(a).adjoint() * unitary_representative(b);
  return m.imag().cwiseAbs().maxCoeff() <= 1e-7;
}

inline LagrangianLoop concatenate(const LagrangianLoop& a, const LagrangianLoop& b) {
  if (a.n != b.n || a.samples.empty() || b.samples.empty() || !same_subspace(a.samples.front(), b.samples.front()))
    throw Error(Errc::BasepointMismatch, "loops are not based at the same Lagrangian subspace");
  LagrangianLoop out{a.n, a.samples};
  out.samples.insert(out.samples.end(), b.samples.begin(), b.samples.end());
  return out;
}

/// Traversed backwards from the same basepoint.
inline LagrangianLoop reverse(const LagrangianLoop& a) {
  LagrangianLoop out{a.n, {}};
  if (a.samples.empty()) return out;
  out.samples.push_back(a.samples.front());
  for (std::size_t i = a.samples.size(); i-- > 1;) out.samples.push_back(a.samples[i]);
  return out;
}

/// diag(e^{i pi w_j t}) for t = s / samples; index sum(w_j).
inline LagrangianLoop rotation_loop(const std::vector<int>& weights, std::size_t samples) {
  const int n = static_cast<int>(weights.size());
  if (n < 1 || n > kMaxMaslovDim) throw Error(Errc::SizeLimit, "ambient dimension must be in 1..8");
  if (samples == 0) throw Error(Errc::InvalidArgument, "need at least one sample");
  LagrangianLoop out{n, {}};
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(samples);
    Frame z = Frame::Zero(n, n);
    for (int j = 0; j < n; ++j) z(j, j) = std::polar(1.0, std::numbers::pi * weights[static_cast<std::size_t>(j)] * t);
    out.samples.push_back(std::move(z));
  }
  return out;
}

inline LagrangianLoop constant_loop(int n, std::size_t samples) { return rotation_loop(std::vector<int>(n, 0), samples); }

}  // namespace floerss
