#pragma once

// Independent reference computations for the test suites. Everything here
// works from the global operator matrices and generator degrees directly,
// without the engine's per-degree caches or page recursion.

#include <cstdint>
#include <random>
#include <vector>

#include "floerss/spectral.hpp"

namespace oracle {

using namespace floerss;

struct CorpusShape {
  std::vector<std::size_t> dims;
  int nl = 2;
};

/// Morse-degree dims with total in [1, 12], dimL in [1, 4], N_L in {2, 3, 4}.
inline CorpusShape corpus_shape(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  CorpusShape s;
  s.nl = 2 + static_cast<int>(seed % 3);
  const std::size_t dim_l = 1 + rng() % 4;
  std::size_t total = 0;
  for (std::size_t m = 0; m <= dim_l; ++m) {
    std::size_t d = rng() % 4;
    if (m == 0 && d == 0) d = 1;
    if (total + d > 12) d = 12 - total;
    s.dims.push_back(d);
    total += d;
  }
  return s;
}

inline std::vector<std::size_t> indices_of_degree(const FloerComplex& fc, int m) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < fc.size(); ++g)
    if (fc.degree_of(g) == m) out.push_back(g);
  return out;
}

/// d_k from Morse degree src, read off the global matrix.
inline F2Matrix block(const FloerComplex& fc, int k, int src) {
  const auto cols = indices_of_degree(fc, src);
  const auto rows = indices_of_degree(fc, src + 1 - k * fc.nl());
  F2Matrix out(rows.size(), cols.size());
  if (k < 0 || k > fc.nu()) return out;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (fc.op(k).get(rows[i], cols[j])) out.set(i, j);
  return out;
}

inline std::size_t naive_rank(F2Matrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const bool a = m.get(p, j), b = m.get(r, j);
      m.set(p, j, b);
      m.set(r, j, a);
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c))
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (m.get(r, j)) m.flip(i, j);
    ++r;
  }
  return r;
}

/// dim H^m(C, d_0) for every m.
inline std::vector<std::size_t> morse_cohomology(const FloerComplex& fc) {
  std::vector<std::size_t> out;
  for (int m = 0; m <= fc.dim_l(); ++m) {
    const std::size_t n = indices_of_degree(fc, m).size();
    out.push_back(n - naive_rank(block(fc, 0, m)) - naive_rank(block(fc, 0, m - 1)));
  }
  return out;
}

/// Block matrix assembled from (row-degree, col-degree, matrix) pieces.
struct Stacked {
  std::vector<std::size_t> row_off{0}, col_off{0};
  F2Matrix build(const std::vector<std::tuple<std::size_t, std::size_t, F2Matrix>>& pieces) const {
    F2Matrix a(row_off.back(), col_off.back());
    for (const auto& [r, c, m] : pieces)
      if (m.rows() > 0 && m.cols() > 0) a.set_block(row_off[r], col_off[c], m);
    return a;
  }
};

inline std::size_t cdim(const FloerComplex& fc, int m) { return fc.morse().dim_in_degree(m); }

/// Z_r(m) from one kernel computation over (x, y_1, .., y_{r-1}).
inline Subspace direct_cycles(const FloerComplex& fc, int m, int r) {
  const int nl = fc.nl();
  if (r == 0) return Subspace::full(cdim(fc, m));
  Stacked st;
  for (int s = 0; s < r; ++s) st.row_off.push_back(st.row_off.back() + cdim(fc, m + 1 - s * nl));
  for (int t = 0; t < r; ++t) st.col_off.push_back(st.col_off.back() + cdim(fc, m - t * nl));
  std::vector<std::tuple<std::size_t, std::size_t, F2Matrix>> pieces;
  for (int s = 0; s < r; ++s)
    for (int t = 0; t <= s; ++t)
      pieces.emplace_back(s, t, block(fc, s - t, m - t * nl));
  const Subspace k = kernel(st.build(pieces));
  std::vector<F2Vector> xs;
  for (const auto& v : k.basis_vectors()) xs.push_back(v.slice(0, cdim(fc, m)));
  return Subspace::span(cdim(fc, m), xs);
}

/// B_r(m) from the kernel of the constraints on (b_0, .., b_{r-1}).
inline Subspace direct_boundaries(const FloerComplex& fc, int m, int r) {
  const int nl = fc.nl();
  const std::size_t n = cdim(fc, m);
  if (r == 0) return Subspace(n);
  Stacked st;
  for (int t = 1; t < r; ++t) st.row_off.push_back(st.row_off.back() + cdim(fc, m + t * nl));
  for (int j = 0; j < r; ++j) st.col_off.push_back(st.col_off.back() + cdim(fc, m - 1 + j * nl));
  std::vector<std::tuple<std::size_t, std::size_t, F2Matrix>> pieces;
  for (int t = 1; t < r; ++t)
    for (int k = 0; t + k < r; ++k)
      pieces.emplace_back(t - 1, t + k, block(fc, k, m - 1 + (t + k) * nl));
  const F2Matrix constraints = st.build(pieces);
  const Subspace k = constraints.rows() == 0 ? Subspace::full(st.col_off.back()) : kernel(constraints);
  std::vector<F2Vector> out;
  for (const auto& v : k.basis_vectors()) {
    F2Vector acc(n);
    for (int j = 0; j < r; ++j) {
      const std::size_t len = cdim(fc, m - 1 + j * nl);
      if (len == 0) continue;
      const F2Vector bj = v.slice(st.col_off[static_cast<std::size_t>(j)], len);
      const F2Matrix d = block(fc, j, m - 1 + j * nl);
      if (d.rows() > 0) acc += d * bj;
    }
    out.push_back(acc);
  }
  return Subspace::span(n, out);
}

/// delta_1 equals [d_1] on d_0-cohomology, in canonical quotient bases.
inline bool e1_delta_matches(const FloerComplex& fc, const SpectralPage& page1) {
  const int nl = fc.nl();
  std::vector<Quotient> h;
  for (int m = 0; m <= fc.dim_l(); ++m) {
    const F2Matrix out = block(fc, 0, m);
    const Subspace z = out.rows() == 0 ? Subspace::full(cdim(fc, m)) : kernel(out);
    const F2Matrix in = block(fc, 0, m - 1);
    const Subspace b = in.cols() == 0 ? Subspace(cdim(fc, m)) : image(in);
    h.push_back(quotient_map(b, z));
  }
  for (int m = 0; m <= fc.dim_l(); ++m) {
    const int t = m + 1 - nl;
    const Quotient& src = h[static_cast<std::size_t>(m)];
    const std::size_t rows = (t < 0 || t > fc.dim_l()) ? 0 : h[static_cast<std::size_t>(t)].dim();
    F2Matrix expect(rows, src.dim());
    if (rows > 0)
      for (std::size_t i = 0; i < src.dim(); ++i) {
        const F2Vector w = block(fc, 1, m) * src.representatives()[i];
        for (std::size_t c : h[static_cast<std::size_t>(t)].coordinates(w).support()) expect.set(c, i);
      }
    if (page1.at(m).delta != expect) return false;
    if (page1.at(m).quotient.representatives() != src.representatives()) return false;
  }
  return true;
}

/// The E1 page with its induced product is isomorphic to the expected ring
/// through the supplied cocycle representatives.
inline bool e1_matches_ring(const GeneratedProductComplex& g, const SpectralPage& page1, const PageProduct& prod) {
  const GradedRing& ring = *g.expected_ring;
  const auto& morse = g.complex.morse();
  std::vector<F2Vector> phi;
  for (std::size_t k = 0; k < ring.dim(); ++k) {
    const int d = ring.degree_of(k);
    phi.push_back(page1.class_of(d, morse.to_local(g.representatives[k], d)));
  }
  for (int d = 0; d <= g.complex.dim_l(); ++d) {
    std::vector<F2Vector> cols;
    for (std::size_t k = 0; k < ring.dim(); ++k)
      if (ring.degree_of(k) == d) cols.push_back(phi[k]);
    if (cols.size() != page1.dim(d)) return false;
    if (naive_rank(F2Matrix::from_columns(page1.dim(d), cols)) != cols.size()) return false;
  }
  for (std::size_t i = 0; i < ring.dim(); ++i)
    for (std::size_t j = 0; j < ring.dim(); ++j) {
      const int a = ring.degree_of(i), b = ring.degree_of(j);
      const Element e = ring.multiply(ring.basis_element(i), ring.basis_element(j));
      if (a + b > g.complex.dim_l()) {
        if (!e.is_zero()) return false;
        continue;
      }
      F2Vector expect(page1.dim(a + b));
      for (std::size_t t : e.support()) expect += phi[t];
      if (prod.multiply(page1, a, phi[i], b, phi[j]) != expect) return false;
    }
  return true;
}

}  // namespace oracle
