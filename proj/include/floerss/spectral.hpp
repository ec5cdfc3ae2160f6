#pragma once

// Spectral sequence of the T-power filtration on CF, computed in the
// T-periodic model: page r in Morse degree m is V_r(m) = Z_r(m) / B_r(m),
// subspaces of C^m.
//
//   Z_r(m): leading coefficients x = y_0 admitting y_1..y_{r-1}, y_s in
//           C^{m - s N_L}, with sum_{k=0}^{s} d_k y_{s-k} = 0 for s < r.
//   B_r(m): T^0 coefficients of d_F(b) for b in F^{1-r} with d_F(b) in F^0.
//   delta_r[x] = [sum_{k=1}^{r} d_k y_{r-k}] in V_r(m + 1 - r N_L).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "floerss/error.hpp"
#include "floerss/f2linalg.hpp"
#include "floerss/floercomplex.hpp"

namespace floerss {

struct SpectralOptions {
  bool paranoid = true;  // recompute every delta and product on a second lift
};

struct PageDegree {
  Subspace cycles;
  Subspace boundaries;
  Quotient quotient;
  /// lifts[i][s-1] = y_s for the i-th quotient representative, s = 1..r-1.
  std::vector<std::vector<F2Vector>> lifts;
  /// delta_r on this degree, V_r(m) -> V_r(m + 1 - r N_L).
  F2Matrix delta;
  /// Chain-level images sum_k d_k y_{r-k} of the representatives.
  std::vector<F2Vector> images;
};

struct SpectralPage {
  int r = 0;
  int nl = 2;
  std::vector<PageDegree> degrees;  // indexed by Morse degree 0..dimL

  int dim_l() const { return static_cast<int>(degrees.size()) - 1; }
  int target(int m) const { return m + 1 - r * nl; }
  bool in_range(int m) const { return m >= 0 && m <= dim_l(); }
  std::size_t dim(int m) const { return in_range(m) ? degrees[static_cast<std::size_t>(m)].quotient.dim() : 0; }
  const PageDegree& at(int m) const { return degrees.at(static_cast<std::size_t>(m)); }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees) out.push_back(d.quotient.dim());
    return out;
  }
  std::size_t delta_rank(int m) const { return rank(at(m).delta); }
  bool collapsed() const {
    return std::all_of(degrees.begin(), degrees.end(), [](const PageDegree& d) { return d.delta.is_zero(); });
  }

  /// Coordinates in V_r(m) of a local chain lying in Z_r(m).
  F2Vector class_of(int m, const F2Vector& chain) const { return at(m).quotient.coordinates(chain); }
};

namespace detail {

inline std::size_t chain_dim(const FloerComplex& fc, int m) { return fc.morse().dim_in_degree(m); }

/// d_k from C^m, zero when k or m is outside the stored range.
inline F2Matrix op_block(const FloerComplex& fc, int k, int m) {
  if (k < 0 || k > fc.nu() || m < 0 || m > fc.dim_l())
    return F2Matrix(chain_dim(fc, m + 1 - k * fc.nl()), chain_dim(fc, m));
  return fc.block(k, m);
}

/// The zig-zag system for lifts of x in C^m through s = 1..rows:
///   sum_{t=1}^{s} d_{s-t} y_t = d_s x   (y_t in C^{m - t N_L}).
class LiftSystem {
 public:
  LiftSystem(const FloerComplex& fc, int m, int rows) : fc_(fc), m_(m), rows_(rows) {
    const int nl = fc.nl();
    row_off_.push_back(0);
    col_off_.push_back(0);
    for (int s = 1; s <= rows; ++s) row_off_.push_back(row_off_.back() + chain_dim(fc, m + 1 - s * nl));
    for (int t = 1; t <= rows; ++t) col_off_.push_back(col_off_.back() + chain_dim(fc, m - t * nl));
    F2Matrix a(row_off_.back(), col_off_.back());
    for (int s = 1; s <= rows; ++s)
      for (int t = 1; t <= s; ++t) {
        const F2Matrix b = op_block(fc, s - t, m - t * nl);
        if (b.rows() > 0 && b.cols() > 0)
          a.set_block(row_off_[static_cast<std::size_t>(s - 1)], col_off_[static_cast<std::size_t>(t - 1)], b);
      }
    solver_.emplace(a);
    kernel_ = solver_->kernel();
  }

  std::optional<std::vector<F2Vector>> lift(const F2Vector& x, bool perturb = false) const {
    const int nl = fc_.nl();
    F2Vector rhs(row_off_.back());
    for (int s = 1; s <= rows_; ++s) {
      const F2Vector part = op_block(fc_, s, m_) * x;
      if (part.size() > 0) rhs.assign_slice(row_off_[static_cast<std::size_t>(s - 1)], part);
    }
    auto sol = solver_->solve(rhs);
    if (!sol) return std::nullopt;
    if (perturb)
      for (std::size_t i = 0; i < kernel_.dim(); ++i) *sol += kernel_.basis_vector(i);
    std::vector<F2Vector> ys;
    for (int t = 1; t <= rows_; ++t)
      ys.push_back(sol->slice(col_off_[static_cast<std::size_t>(t - 1)], chain_dim(fc_, m_ - t * nl)));
    return ys;
  }

 private:
  const FloerComplex& fc_;
  int m_;
  int rows_;
  std::vector<std::size_t> row_off_;
  std::vector<std::size_t> col_off_;
  std::optional<LinearSolver> solver_;
  Subspace kernel_;
};

/// sum_{k=1}^{r} d_k y_{r-k} with y_0 = x (for r = 0: d_0 x).
inline F2Vector zigzag_image(const FloerComplex& fc, int m, int r, const F2Vector& x,
                             const std::vector<F2Vector>& ys) {
  const int nl = fc.nl();
  F2Vector w(chain_dim(fc, m + 1 - r * nl));
  if (r == 0) return op_block(fc, 0, m) * x;
  for (int k = 1; k <= r; ++k) {
    const int j = r - k;
    const int src = m - j * nl;
    if (src < 0) continue;
    const F2Vector& y = j == 0 ? x : ys[static_cast<std::size_t>(j - 1)];
    w += op_block(fc, k, src) * y;
  }
  return w;
}

inline Error lift_failure(const std::string& what) { return Error(Errc::LiftFailure, what); }

inline F2Vector sum_basis(const Subspace& s) {
  F2Vector v(s.ambient_dim());
  for (std::size_t i = 0; i < s.dim(); ++i) v += s.basis_vector(i);
  return v;
}

/// Build page r from its cycle and boundary subspaces: quotients, lifts,
/// delta_r, and the checks that go with them.
inline SpectralPage finish_page(const FloerComplex& fc, int r, std::vector<Subspace> cycles,
                                std::vector<Subspace> boundaries, const SpectralOptions& opts) {
  SpectralPage page;
  page.r = r;
  page.nl = fc.nl();
  const int top = fc.dim_l();
  page.degrees.resize(static_cast<std::size_t>(top) + 1);
  for (int m = 0; m <= top; ++m) {
    auto& d = page.degrees[static_cast<std::size_t>(m)];
    d.cycles = std::move(cycles[static_cast<std::size_t>(m)]);
    d.boundaries = std::move(boundaries[static_cast<std::size_t>(m)]);
    try {
      d.quotient = quotient_map(d.boundaries, d.cycles);
    } catch (const Error&) {
      throw lift_failure("page " + std::to_string(r) + ", degree " + std::to_string(m) +
                         ": boundaries are not contained in cycles");
    }
  }
  for (int m = 0; m <= top; ++m) {
    auto& d = page.degrees[static_cast<std::size_t>(m)];
    const int t = page.target(m);
    const std::size_t tdim = page.dim(t);
    d.delta = F2Matrix(tdim, d.quotient.dim());
    std::optional<LiftSystem> sys;
    if (r >= 2) sys.emplace(fc, m, r - 1);
    const auto& reps = d.quotient.representatives();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::vector<F2Vector> ys;
      if (sys) {
        auto l = sys->lift(reps[i]);
        if (!l) throw lift_failure("page " + std::to_string(r) + ", degree " + std::to_string(m) + ": no zig-zag lift");
        ys = std::move(*l);
      }
      const F2Vector w = zigzag_image(fc, m, r, reps[i], ys);
      d.lifts.push_back(ys);
      d.images.push_back(w);
      if (!page.in_range(t)) {
        if (w.size() > 0 && !w.is_zero()) throw lift_failure("delta image outside the complex");
        continue;
      }
      F2Vector coords;
      try {
        coords = page.at(t).quotient.coordinates(w);
      } catch (const Error&) {
        throw lift_failure("page " + std::to_string(r) + ": delta image of a class in degree " + std::to_string(m) +
                           " is not a cycle");
      }
      for (std::size_t c : coords.support()) d.delta.set(c, i);

      if (opts.paranoid && r >= 1) {
        const F2Vector alt = reps[i] + sum_basis(d.boundaries);
        std::vector<F2Vector> alt_ys;
        if (sys) {
          auto l = sys->lift(alt, true);
          if (!l) throw lift_failure("second lift failed in degree " + std::to_string(m));
          alt_ys = std::move(*l);
        }
        const F2Vector w2 = zigzag_image(fc, m, r, alt, alt_ys);
        F2Vector coords2;
        try {
          coords2 = page.at(t).quotient.coordinates(w2);
        } catch (const Error&) {
          throw lift_failure("second-lift delta image is not a cycle");
        }
        if (coords2 != coords)
          throw lift_failure("delta_" + std::to_string(r) + " depends on the chosen lift in degree " +
                             std::to_string(m));
      }
    }
  }
  for (int m = 0; m <= top; ++m) {
    const int t = page.target(m);
    if (!page.in_range(t)) continue;
    const F2Matrix& first = page.at(m).delta;
    const F2Matrix& second = page.at(t).delta;
    if (first.rows() == 0 || second.rows() == 0) continue;
    if (!(second * first).is_zero())
      throw lift_failure("delta_" + std::to_string(r) + " squares to nonzero at degree " + std::to_string(m));
  }
  return page;
}

}  // namespace detail

inline SpectralPage page0(const FloerComplex& fc, const SpectralOptions& opts = {}) {
  std::vector<Subspace> z, b;
  for (int m = 0; m <= fc.dim_l(); ++m) {
    z.push_back(Subspace::full(detail::chain_dim(fc, m)));
    b.emplace_back(detail::chain_dim(fc, m));
  }
  return detail::finish_page(fc, 0, std::move(z), std::move(b), opts);
}

inline SpectralPage turn_page(const FloerComplex& fc, const SpectralPage& page, const SpectralOptions& opts = {}) {
  const int r = page.r;
  const int top = fc.dim_l();
  std::vector<Subspace> z, b;
  for (int m = 0; m <= top; ++m) {
    const PageDegree& d = page.at(m);
    const std::size_t n = detail::chain_dim(fc, m);
    const Subspace ker = d.delta.rows() == 0 ? Subspace::full(d.quotient.dim()) : kernel(d.delta);
    std::vector<F2Vector> zs = d.boundaries.basis_vectors();
    for (std::size_t i = 0; i < ker.dim(); ++i) zs.push_back(d.quotient.lift(ker.basis_vector(i)));
    z.push_back(Subspace::span(n, zs));

    std::vector<F2Vector> bs = d.boundaries.basis_vectors();
    const int src = m - 1 + r * fc.nl();
    std::size_t incoming = 0;
    if (page.in_range(src)) {
      const auto& imgs = page.at(src).images;
      bs.insert(bs.end(), imgs.begin(), imgs.end());
      incoming = page.delta_rank(src);
    }
    b.push_back(Subspace::span(n, bs));
    const std::size_t expected = ker.dim() - incoming;
    if (z.back().dim() - b.back().dim() != expected)
      throw detail::lift_failure("page " + std::to_string(r + 1) + ", degree " + std::to_string(m) +
                                 ": quotient dimension disagrees with ker - im");
  }
  return detail::finish_page(fc, r + 1, std::move(z), std::move(b), opts);
}

struct SpectralRun {
  std::vector<SpectralPage> pages;  // E_0 .. E_{nu+1}
  std::vector<std::size_t> einf;    // dim V_inf(m)

  const SpectralPage& final_page() const { return pages.back(); }

  /// sum over m = l mod N_L of dim V_inf(m), for l = 0..N_L-1.
  std::vector<std::size_t> einf_by_residue(int nl) const {
    std::vector<std::size_t> out(static_cast<std::size_t>(nl), 0);
    for (std::size_t m = 0; m < einf.size(); ++m) out[m % static_cast<std::size_t>(nl)] += einf[m];
    return out;
  }
};

inline SpectralRun run_to_collapse(const FloerComplex& fc, const SpectralOptions& opts = {}) {
  SpectralRun run;
  run.pages.push_back(page0(fc, opts));
  for (int r = 0; r <= fc.nu(); ++r) run.pages.push_back(turn_page(fc, run.pages.back(), opts));
  if (!run.pages.back().collapsed())
    throw detail::lift_failure("delta_" + std::to_string(fc.nu() + 1) + " is nonzero; collapse fails");
  run.einf = run.pages.back().dims();
  return run;
}

/// Homology of the honest complex F^{-W} / F^{W+1} (T-powers in [-W, W]) in
/// total degrees 0..N_L-1. Independent of the fold; W defaults to 2 nu + 2.
inline std::vector<std::size_t> window_homology(const FloerComplex& fc, std::optional<int> window = std::nullopt) {
  const int w = window.value_or(2 * fc.nu() + 2);
  const int nl = fc.nl();
  const std::size_t n = fc.size();
  auto cells = [&](int l) {
    std::vector<std::pair<std::size_t, int>> out;  // (generator, power)
    for (int p = -w; p <= w; ++p)
      for (std::size_t g = 0; g < n; ++g)
        if (fc.degree_of(g) + p * nl == l) out.emplace_back(g, p);
    return out;
  };
  auto differential = [&](int l) {
    const auto src = cells(l), dst = cells(l + 1);
    std::map<std::pair<std::size_t, int>, std::size_t> where;
    for (std::size_t i = 0; i < dst.size(); ++i) where[dst[i]] = i;
    F2Matrix d(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto [g, p] = src[j];
      for (int k = 0; k <= fc.nu(); ++k) {
        if (p + k > w) continue;
        for (std::size_t t : fc.op(k).column(g).support()) d.flip(where.at({t, p + k}), j);
      }
    }
    return d;
  };
  std::vector<std::size_t> out;
  for (int l = 0; l < nl; ++l) {
    const F2Matrix out_d = differential(l);
    const F2Matrix in_d = differential(l - 1);
    out.push_back(cells(l).size() - rank(out_d) - rank(in_d));
  }
  return out;
}

struct ConvergenceEntry {
  int residue = 0;
  std::size_t einf = 0;
  std::size_t folded = 0;
  std::size_t window = 0;
  bool ok() const { return einf == folded && folded == window; }
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok(); });
  }
};

inline ConvergenceReport check_convergence(const FloerComplex& fc, const SpectralRun& run) {
  ConvergenceReport rep;
  const auto einf = run.einf_by_residue(fc.nl());
  const auto folded = folded_homology(fc);
  const auto window = window_homology(fc);
  for (int l = 0; l < fc.nl(); ++l) {
    const auto i = static_cast<std::size_t>(l);
    rep.entries.push_back({l, einf[i], folded[i], window[i]});
  }
  return rep;
}

inline ConvergenceReport check_convergence(const FloerComplex& fc, const SpectralOptions& opts = {}) {
  return check_convergence(fc, run_to_collapse(fc, opts));
}

// ---------------------------------------------------------------------------
// Products on pages.

/// Bilinear product V_r(a) x V_r(b) -> V_r(a + b) on representative basis pairs.
struct PageProduct {
  int r = 0;
  std::map<std::tuple<int, std::size_t, int, std::size_t>, F2Vector> table;

  /// Product of two classes given by coordinates.
  F2Vector multiply(const SpectralPage& page, int a, const F2Vector& u, int b, const F2Vector& v) const {
    F2Vector out(page.dim(a + b));
    for (std::size_t i : u.support())
      for (std::size_t j : v.support()) {
        const auto it = table.find({a, i, b, j});
        if (it != table.end()) out += it->second;
      }
    return out;
  }
};

namespace detail {

inline FilteredElement lifted_element(const FloerComplex& fc, int m, const F2Vector& x,
                                      const std::vector<F2Vector>& ys) {
  const auto& morse = fc.morse();
  FilteredElement e(fc.size());
  if (!x.is_zero()) e.add(0, morse.from_local(x, m));
  for (std::size_t s = 0; s < ys.size(); ++s) {
    const int deg = m - static_cast<int>(s + 1) * fc.nl();
    if (deg < 0 || ys[s].is_zero()) continue;
    e.add(static_cast<int>(s + 1), morse.from_local(ys[s], deg));
  }
  return e;
}

inline Error leibniz_failure_error(const std::string& what) { return Error(Errc::LeibnizFailure, what); }

/// Class of the T^0 part of X * Y, after checking X * Y is a page-r cycle.
inline F2Vector product_class(const FloerComplex& fc, const SpectralPage& page, int a, const FilteredElement& x,
                              int b, const FilteredElement& y) {
  const FilteredElement p = star_product(fc, x, y);
  const FilteredElement dp = apply_differential(fc, p);
  if (page.r >= 1 && !dp.in_filtration(page.r))
    throw leibniz_failure_error("product of page-" + std::to_string(page.r) + " lifts is not a cycle to that order");
  if (!p.in_filtration(0)) throw leibniz_failure_error("product of lifts has negative T-powers");
  const int c = a + b;
  const F2Vector lead = fc.morse().to_local(p.coefficient(0), c);
  try {
    return page.class_of(c, lead);
  } catch (const Error&) {
    throw leibniz_failure_error("leading product term is not a page cycle in degree " + std::to_string(c));
  }
}

}  // namespace detail

/// Induced product on one page from the star product of representative
/// lifts. With paranoid mode every pair is recomputed on shifted
/// representatives and second lifts.
inline PageProduct induced_page_product(const FloerComplex& fc, const SpectralPage& page,
                                        const SpectralOptions& opts = {}) {
  if (!fc.has_products()) throw Error(Errc::ProductsAbsent, "complex carries no product tables");
  PageProduct prod;
  prod.r = page.r;
  const int top = fc.dim_l();
  std::vector<std::vector<FilteredElement>> lifted(static_cast<std::size_t>(top) + 1);
  std::vector<std::vector<FilteredElement>> second(static_cast<std::size_t>(top) + 1);
  for (int m = 0; m <= top; ++m) {
    const PageDegree& d = page.at(m);
    const auto& reps = d.quotient.representatives();
    std::optional<detail::LiftSystem> sys;
    if (opts.paranoid && page.r >= 2) sys.emplace(fc, m, page.r - 1);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      lifted[static_cast<std::size_t>(m)].push_back(detail::lifted_element(fc, m, reps[i], d.lifts[i]));
      if (!opts.paranoid) continue;
      const F2Vector alt = reps[i] + detail::sum_basis(d.boundaries);
      std::vector<F2Vector> ys;
      if (sys) {
        auto l = sys->lift(alt, true);
        if (!l) throw detail::lift_failure("second lift failed for a product operand");
        ys = std::move(*l);
      }
      second[static_cast<std::size_t>(m)].push_back(detail::lifted_element(fc, m, alt, ys));
    }
  }
  for (int a = 0; a <= top; ++a)
    for (int b = 0; a + b <= top; ++b)
      for (std::size_t i = 0; i < page.dim(a); ++i)
        for (std::size_t j = 0; j < page.dim(b); ++j) {
          const auto& xa = lifted[static_cast<std::size_t>(a)][i];
          const auto& yb = lifted[static_cast<std::size_t>(b)][j];
          F2Vector cls = detail::product_class(fc, page, a, xa, b, yb);
          if (opts.paranoid) {
            const F2Vector cls2 = detail::product_class(fc, page, a, second[static_cast<std::size_t>(a)][i], b,
                                                        second[static_cast<std::size_t>(b)][j]);
            if (cls2 != cls)
              throw detail::leibniz_failure_error("page-" + std::to_string(page.r) +
                                                  " product depends on representatives in degrees " +
                                                  std::to_string(a) + ", " + std::to_string(b));
          }
          if (!cls.is_zero()) prod.table[{a, i, b, j}] = std::move(cls);
        }
  return prod;
}

/// delta_r(u v) = delta_r(u) v + u delta_r(v) on all basis pairs.
inline bool page_leibniz_holds(const SpectralPage& page, const PageProduct& prod) {
  const int top = page.dim_l();
  for (int a = 0; a <= top; ++a)
    for (int b = 0; a + b <= top; ++b)
      for (std::size_t i = 0; i < page.dim(a); ++i)
        for (std::size_t j = 0; j < page.dim(b); ++j) {
          const F2Vector u = F2Vector::unit(page.dim(a), i), v = F2Vector::unit(page.dim(b), j);
          const int c = a + b;
          const int tc = page.target(c);
          if (!page.in_range(tc)) continue;
          const F2Vector lhs = page.at(c).delta * prod.multiply(page, a, u, b, v);
          F2Vector rhs(page.dim(tc));
          const int ta = page.target(a), tb = page.target(b);
          if (page.in_range(ta)) rhs += prod.multiply(page, ta, page.at(a).delta * u, b, v);
          if (page.in_range(tb)) rhs += prod.multiply(page, a, u, tb, page.at(b).delta * v);
          if (lhs != rhs) return false;
        }
  return true;
}

/// Products on every page, each checked for representative independence
/// (paranoid mode) and for the Leibniz rule against delta_r.
inline std::vector<PageProduct> induced_page_products(const FloerComplex& fc, const SpectralRun& run,
                                                      const SpectralOptions& opts = {}) {
  std::vector<PageProduct> out;
  for (const auto& page : run.pages) {
    out.push_back(induced_page_product(fc, page, opts));
    if (!page_leibniz_holds(page, out.back()))
      throw Error(Errc::LeibnizFailure, "delta_" + std::to_string(page.r) + " is not a derivation of the page product");
  }
  return out;
}

}  // namespace floerss
