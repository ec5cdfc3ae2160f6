#pragma once

// The Floer complex CF = C (x) A, A = F2[T, 1/T], deg T = N_L, stored
// T-periodically: a Morse-graded F2 complex plus operators d_0..d_nu where
// d_k raises Morse degree by 1 - k N_L, and optional product tables m_l
// lowering total Morse degree by l N_L.
//
// Operator matrices are global N x N over the generators (row = target,
// column = source). Because the T-power of an entry is fixed by the degrees
// of its endpoints, the sum of all operators determines each of them.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "floerss/error.hpp"
#include "floerss/f2linalg.hpp"
#include "floerss/gradedalg.hpp"

namespace floerss {

struct Generator {
  std::string name;
  int index = 0;
  bool operator==(const Generator&) const = default;
};

/// Permutation sorting generators by (index, name): result[old] = new position.
inline std::vector<std::size_t> canonical_positions(const std::vector<Generator>& gens) {
  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (gens[a].index != gens[b].index) return gens[a].index < gens[b].index;
    return gens[a].name < gens[b].name;
  });
  std::vector<std::size_t> pos(gens.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  return pos;
}

inline F2Matrix permute_square(const F2Matrix& m, const std::vector<std::size_t>& pos) {
  F2Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c : m.row(r).support()) out.set(pos[r], pos[c]);
  return out;
}

inline F2Vector permute_vector(const F2Vector& v, const std::vector<std::size_t>& pos) {
  F2Vector out(v.size());
  for (std::size_t i : v.support()) out.set(pos[i]);
  return out;
}

class MorseComplex {
 public:
  MorseComplex() = default;

  /// Generators must already be in canonical (index, name) order.
  MorseComplex(int dim_l, std::vector<Generator> generators, F2Matrix boundary)
      : dim_l_(dim_l), generators_(std::move(generators)), boundary_(std::move(boundary)) {
    if (dim_l_ < 0) throw Error(Errc::InvalidArgument, "dimL must be non-negative");
    const std::size_t n = generators_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& g = generators_[i];
      if (g.index < 0 || g.index > dim_l_)
        throw Error(Errc::InvalidArgument, "generator '" + g.name + "' has index outside [0, dimL]");
      if (i > 0) {
        const auto& p = generators_[i - 1];
        if (p.index > g.index || (p.index == g.index && p.name >= g.name))
          throw Error(Errc::InvalidArgument, "generators are not in canonical (index, name) order");
      }
    }
    if (boundary_.rows() != n || boundary_.cols() != n)
      throw Error(Errc::ShapeMismatch, "Morse boundary must be square over the generators");
    dims_.assign(static_cast<std::size_t>(dim_l_) + 1, 0);
    for (const auto& g : generators_) ++dims_[static_cast<std::size_t>(g.index)];
    offsets_.assign(dims_.size() + 1, 0);
    for (std::size_t m = 0; m < dims_.size(); ++m) offsets_[m + 1] = offsets_[m] + dims_[m];
  }

  int dim_l() const noexcept { return dim_l_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  const F2Matrix& boundary() const noexcept { return boundary_; }
  int degree_of(std::size_t i) const { return generators_.at(i).index; }

  std::size_t dim_in_degree(int m) const {
    return (m < 0 || m > dim_l_) ? 0 : dims_[static_cast<std::size_t>(m)];
  }
  std::size_t offset(int m) const { return offsets_.at(static_cast<std::size_t>(m)); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  /// Degree-m block of a global chain.
  F2Vector to_local(const F2Vector& chain, int m) const {
    if (dim_in_degree(m) == 0) return F2Vector(0);
    return chain.slice(offset(m), dim_in_degree(m));
  }
  F2Vector from_local(const F2Vector& local, int m) const {
    F2Vector out(size());
    if (local.size() > 0) out.assign_slice(offset(m), local);
    return out;
  }

 private:
  int dim_l_ = 0;
  std::vector<Generator> generators_;
  F2Matrix boundary_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
};

using ProductTable = std::map<std::pair<std::size_t, std::size_t>, F2Vector>;

struct AssembleOptions {
  bool verify_differential = true;
};

class FloerComplex;
struct DSquaredReport;
DSquaredReport check_d_squared(const FloerComplex& fc);

class FloerComplex {
 public:
  static int nu_for(int dim_l, int nl) { return (dim_l + 1) / nl; }
  static int product_bound(int dim_l, int nl) { return (2 * dim_l) / nl; }

  /// Validate shapes and (by default) d_F^2 = 0. `higher` holds d_1, d_2, ...;
  /// missing ones are zero. `products` holds m_0, m_1, ... when present.
  static FloerComplex assemble(MorseComplex morse, int nl, std::vector<F2Matrix> higher,
                               std::optional<std::vector<ProductTable>> products = std::nullopt,
                               AssembleOptions options = {});

  const MorseComplex& morse() const noexcept { return morse_; }
  int nl() const noexcept { return nl_; }
  int nu() const noexcept { return nu_; }
  int dim_l() const noexcept { return morse_.dim_l(); }
  std::size_t size() const noexcept { return morse_.size(); }
  int degree_of(std::size_t i) const { return morse_.degree_of(i); }

  const std::vector<F2Matrix>& operators() const noexcept { return ops_; }
  const F2Matrix& op(int k) const { return ops_.at(static_cast<std::size_t>(k)); }

  /// d_k restricted to C^m -> C^{m+1-k N_L}; zero rows when out of range.
  const F2Matrix& block(int k, int m) const {
    return blocks_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(m));
  }

  F2Matrix total_differential() const {
    F2Matrix d(size(), size());
    for (const auto& m : ops_) d += m;
    return d;
  }

  bool has_products() const noexcept { return products_.has_value(); }
  const std::vector<ProductTable>& products() const {
    if (!products_) throw Error(Errc::ProductsAbsent, "complex carries no product tables");
    return *products_;
  }
  F2Vector product(int l, std::size_t i, std::size_t j) const {
    const auto& tables = products();
    if (l < 0 || static_cast<std::size_t>(l) >= tables.size()) return F2Vector(size());
    const auto it = tables[static_cast<std::size_t>(l)].find({i, j});
    return it == tables[static_cast<std::size_t>(l)].end() ? F2Vector(size()) : it->second;
  }

  std::size_t generator_index(const std::string& name) const {
    const auto& g = morse_.generators();
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i].name == name) return i;
    throw Error(Errc::InvalidArgument, "no generator named '" + name + "'");
  }

 private:
  MorseComplex morse_;
  int nl_ = 2;
  int nu_ = 0;
  std::vector<F2Matrix> ops_;
  std::vector<std::vector<F2Matrix>> blocks_;
  std::optional<std::vector<ProductTable>> products_;
};

struct DSquaredEntry {
  int l = 0;
  bool holds = true;
  std::optional<std::size_t> witness;  // a generator x with sum_{i+j=l} d_i d_j x != 0
};

struct DSquaredReport {
  std::vector<DSquaredEntry> entries;

  bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.holds; });
  }
  const DSquaredEntry* first_failure() const {
    for (const auto& e : entries)
      if (!e.holds) return &e;
    return nullptr;
  }
};

/// Per-l verdicts for the convolution identities sum_{i+j=l} d_i d_j = 0.
inline DSquaredReport check_d_squared(const FloerComplex& fc) {
  DSquaredReport report;
  const int nu = fc.nu();
  for (int l = 0; l <= 2 * nu; ++l) {
    F2Matrix s(fc.size(), fc.size());
    for (int i = std::max(0, l - nu); i <= std::min(l, nu); ++i) s += fc.op(i) * fc.op(l - i);
    DSquaredEntry e{l, true, std::nullopt};
    const F2Matrix st = s.transpose();
    for (std::size_t c = 0; c < st.rows(); ++c)
      if (!st.row(c).is_zero()) {
        e.holds = false;
        e.witness = c;
        break;
      }
    report.entries.push_back(e);
  }
  return report;
}

inline FloerComplex FloerComplex::assemble(MorseComplex morse, int nl, std::vector<F2Matrix> higher,
                                           std::optional<std::vector<ProductTable>> products,
                                           AssembleOptions options) {
  if (nl < 2) throw Error(Errc::InvalidArgument, "minimal Maslov number must be >= 2");
  FloerComplex fc;
  fc.nl_ = nl;
  fc.nu_ = nu_for(morse.dim_l(), nl);
  const std::size_t n = morse.size();
  fc.ops_.push_back(morse.boundary());
  for (std::size_t k = 0; k < higher.size(); ++k) {
    if (higher[k].rows() != n || higher[k].cols() != n)
      throw Error(Errc::ShapeMismatch, "operator d_" + std::to_string(k + 1) + " is not square over the generators");
    if (static_cast<int>(k) + 1 > fc.nu_) {
      if (!higher[k].is_zero())
        throw Error(Errc::ShapeMismatch, "operator d_" + std::to_string(k + 1) + " exceeds nu = " +
                                             std::to_string(fc.nu_));
      continue;
    }
    fc.ops_.push_back(std::move(higher[k]));
  }
  while (static_cast<int>(fc.ops_.size()) <= fc.nu_) fc.ops_.emplace_back(n, n);

  for (int k = 0; k <= fc.nu_; ++k) {
    const F2Matrix& m = fc.ops_[static_cast<std::size_t>(k)];
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t s : m.row(t).support())
        if (morse.degree_of(t) != morse.degree_of(s) + 1 - k * nl)
          throw Error(Errc::ShapeMismatch, "operator d_" + std::to_string(k) + " maps '" + morse.generators()[s].name +
                                               "' (index " + std::to_string(morse.degree_of(s)) + ") to '" +
                                               morse.generators()[t].name + "' (index " +
                                               std::to_string(morse.degree_of(t)) + ")");
  }

  fc.blocks_.resize(static_cast<std::size_t>(fc.nu_) + 1);
  for (int k = 0; k <= fc.nu_; ++k)
    for (int m = 0; m <= morse.dim_l(); ++m) {
      const int t = m + 1 - k * nl;
      const std::size_t rows = morse.dim_in_degree(t);
      const std::size_t cols = morse.dim_in_degree(m);
      if (rows == 0 || cols == 0)
        fc.blocks_[static_cast<std::size_t>(k)].emplace_back(rows, cols);
      else
        fc.blocks_[static_cast<std::size_t>(k)].push_back(
            fc.ops_[static_cast<std::size_t>(k)].block(morse.offset(t), morse.offset(m), rows, cols));
    }

  if (products) {
    const int bound = product_bound(morse.dim_l(), nl);
    if (static_cast<int>(products->size()) > bound + 1)
      throw Error(Errc::ShapeMismatch, "product tables beyond m_" + std::to_string(bound) + " are not allowed");
    for (std::size_t l = 0; l < products->size(); ++l)
      for (auto it = (*products)[l].begin(); it != (*products)[l].end();) {
        const auto [i, j] = it->first;
        if (i >= n || j >= n || it->second.size() != n)
          throw Error(Errc::ShapeMismatch, "product table m_" + std::to_string(l) + " has out-of-range entries");
        for (std::size_t k : it->second.support())
          if (morse.degree_of(k) != morse.degree_of(i) + morse.degree_of(j) - static_cast<int>(l) * nl)
            throw Error(Errc::ShapeMismatch, "m_" + std::to_string(l) + "(" + morse.generators()[i].name + ", " +
                                                 morse.generators()[j].name + ") hits '" +
                                                 morse.generators()[k].name + "' of the wrong index");
        if (it->second.is_zero())
          it = (*products)[l].erase(it);
        else
          ++it;
      }
  }
  fc.products_ = std::move(products);
  fc.morse_ = std::move(morse);

  if (options.verify_differential) {
    const DSquaredReport rep = check_d_squared(fc);
    if (const auto* f = rep.first_failure())
      throw Error(Errc::NotADifferential, "convolution identity l=" + std::to_string(f->l) + " fails at generator '" +
                                              fc.morse_.generators()[*f->witness].name + "'");
  }
  return fc;
}

/// Build a complex from generators in any order; operators and products use
/// positions in `generators` and are permuted into canonical order.
inline FloerComplex assemble_from_unsorted(int dim_l, int nl, const std::vector<Generator>& generators,
                                           const std::vector<F2Matrix>& ops,
                                           std::optional<std::vector<ProductTable>> products = std::nullopt,
                                           AssembleOptions options = {}) {
  const auto pos = canonical_positions(generators);
  std::vector<Generator> sorted(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) sorted[pos[i]] = generators[i];
  const std::size_t n = generators.size();
  std::vector<F2Matrix> permuted;
  for (const auto& m : ops) {
    if (m.rows() != n || m.cols() != n) throw Error(Errc::ShapeMismatch, "operator is not square over the generators");
    permuted.push_back(permute_square(m, pos));
  }
  F2Matrix d0 = permuted.empty() ? F2Matrix(n, n) : permuted.front();
  std::vector<F2Matrix> higher;
  for (std::size_t k = 1; k < permuted.size(); ++k) higher.push_back(std::move(permuted[k]));
  std::optional<std::vector<ProductTable>> ptables;
  if (products) {
    ptables.emplace();
    for (const auto& table : *products) {
      ProductTable t;
      for (const auto& [key, v] : table) {
        if (key.first >= n || key.second >= n || v.size() != n)
          throw Error(Errc::ShapeMismatch, "product entry out of range");
        t[{pos[key.first], pos[key.second]}] = permute_vector(v, pos);
      }
      ptables->push_back(std::move(t));
    }
  }
  return FloerComplex::assemble(MorseComplex(dim_l, std::move(sorted), std::move(d0)), nl, std::move(higher),
                                std::move(ptables), options);
}

struct GradingSummand {
  int morse_degree = 0;
  int t_power = 0;
  std::size_t dim = 0;
  bool operator==(const GradingSummand&) const = default;
};

/// Nonzero summands C^{l - k N_L} (x) T^k of CF^l for |k| <= window, by Morse degree.
inline std::vector<GradingSummand> grading_decomposition(const FloerComplex& fc, int l, int window) {
  std::vector<GradingSummand> out;
  for (int k = -window; k <= window; ++k) {
    const int m = l - k * fc.nl();
    const std::size_t d = fc.morse().dim_in_degree(m);
    if (d > 0) out.push_back({m, k, d});
  }
  std::sort(out.begin(), out.end(),
            [](const GradingSummand& a, const GradingSummand& b) { return a.morse_degree < b.morse_degree; });
  return out;
}

/// dim H^l(CF) for l = 0..N_L-1, computed on the fold C^l_bar = sum_{m = l mod N_L} C^m
/// with D = sum_k d_k. HF is N_L-periodic, so this is all of it.
inline std::vector<std::size_t> folded_homology(const FloerComplex& fc) {
  if (const auto* f = check_d_squared(fc).first_failure())
    throw Error(Errc::NotADifferential, "convolution identity l=" + std::to_string(f->l) + " fails");
  const int nl = fc.nl();
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(nl));
  for (std::size_t i = 0; i < fc.size(); ++i) members[static_cast<std::size_t>(fc.degree_of(i) % nl)].push_back(i);
  const F2Matrix d = fc.total_differential();
  std::vector<std::size_t> ranks(static_cast<std::size_t>(nl));
  for (int r = 0; r < nl; ++r) {
    const auto& src = members[static_cast<std::size_t>(r)];
    const auto& dst = members[static_cast<std::size_t>((r + 1) % nl)];
    F2Matrix block(dst.size(), src.size());
    for (std::size_t a = 0; a < dst.size(); ++a)
      for (std::size_t b = 0; b < src.size(); ++b)
        if (d.get(dst[a], src[b])) block.set(a, b);
    ranks[static_cast<std::size_t>(r)] = rank(block);
  }
  std::vector<std::size_t> out(static_cast<std::size_t>(nl));
  for (int r = 0; r < nl; ++r) {
    const std::size_t incoming = ranks[static_cast<std::size_t>((r + nl - 1) % nl)];
    out[static_cast<std::size_t>(r)] =
        members[static_cast<std::size_t>(r)].size() - ranks[static_cast<std::size_t>(r)] - incoming;
  }
  return out;
}

/// Finite sum of (chain, T-power) terms; zero chains are never stored.
class FilteredElement {
 public:
  explicit FilteredElement(std::size_t generators = 0) : n_(generators) {}

  static FilteredElement monomial(std::size_t generators, std::size_t g, int power) {
    FilteredElement e(generators);
    e.add(power, F2Vector::unit(generators, g));
    return e;
  }

  std::size_t generators() const noexcept { return n_; }
  const std::map<int, F2Vector>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(int power, const F2Vector& chain) {
    if (chain.size() != n_) throw Error(Errc::ShapeMismatch, "chain has wrong length");
    auto [it, inserted] = terms_.try_emplace(power, chain);
    if (!inserted) it->second += chain;
    if (it->second.is_zero()) terms_.erase(it);
  }

  F2Vector coefficient(int power) const {
    const auto it = terms_.find(power);
    return it == terms_.end() ? F2Vector(n_) : it->second;
  }

  /// Largest p with this element in F^p (nullopt for zero).
  std::optional<int> filtration_level() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  bool in_filtration(int p) const { return terms_.empty() || terms_.begin()->first >= p; }

  /// Common total degree (Morse index + power * N_L) of all terms, if homogeneous.
  std::optional<int> total_degree(const FloerComplex& fc) const {
    std::optional<int> deg;
    for (const auto& [p, chain] : terms_)
      for (std::size_t g : chain.support()) {
        const int d = fc.degree_of(g) + p * fc.nl();
        if (deg && *deg != d) return std::nullopt;
        deg = d;
      }
    return deg;
  }

  FilteredElement& operator+=(const FilteredElement& o) {
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  friend FilteredElement operator+(FilteredElement a, const FilteredElement& b) { return a += b; }
  bool operator==(const FilteredElement&) const = default;

 private:
  std::size_t n_ = 0;
  std::map<int, F2Vector> terms_;
};

inline FilteredElement apply_differential(const FloerComplex& fc, const FilteredElement& a) {
  FilteredElement out(fc.size());
  for (const auto& [p, chain] : a.terms())
    for (int k = 0; k <= fc.nu(); ++k) out.add(p + k, fc.op(k) * chain);
  return out;
}

/// x * y = sum_l m_l(x, y) T^l, extended bilinearly; T-powers add.
inline FilteredElement star_product(const FloerComplex& fc, const FilteredElement& a, const FilteredElement& b) {
  const auto& tables = fc.products();
  FilteredElement out(fc.size());
  for (const auto& [pa, ca] : a.terms())
    for (const auto& [pb, cb] : b.terms()) {
      const auto sb = cb.support();
      for (std::size_t i : ca.support())
        for (std::size_t j : sb)
          for (std::size_t l = 0; l < tables.size(); ++l) {
            const auto it = tables[l].find({i, j});
            if (it != tables[l].end()) out.add(pa + pb + static_cast<int>(l), it->second);
          }
    }
  return out;
}

struct ProductLeibnizReport {
  bool ok = true;
  int l = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t pairs_checked = 0;
};

/// For every l and generator pair (x, y):
///   sum_{i+j=l} d_j m_i(x, y) = sum_{i+j=l} m_i(d_j x, y) + m_i(x, d_j y).
inline ProductLeibnizReport check_product_leibniz(const FloerComplex& fc) {
  const auto& tables = fc.products();
  const std::size_t n = fc.size();
  const int nu = fc.nu();
  const int bound = static_cast<int>(tables.size()) - 1;
  ProductLeibnizReport rep;
  auto m_apply = [&](int i, const F2Vector& u, std::size_t y, bool left) {
    F2Vector out(n);
    if (i < 0 || i > bound) return out;
    const auto& table = tables[static_cast<std::size_t>(i)];
    for (std::size_t x : u.support()) {
      const auto it = left ? table.find({x, y}) : table.find({y, x});
      if (it != table.end()) out += it->second;
    }
    return out;
  };
  std::vector<F2Matrix> opt;
  for (int k = 0; k <= nu; ++k) opt.push_back(fc.op(k).transpose());
  for (int l = 0; l <= nu + bound; ++l)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        F2Vector lhs(n), rhs(n);
        for (int i = 0; i <= std::min(l, bound); ++i) {
          const int j = l - i;
          if (j > nu) continue;
          const auto it = tables[static_cast<std::size_t>(i)].find({x, y});
          if (it != tables[static_cast<std::size_t>(i)].end()) lhs += fc.op(j) * it->second;
          rhs += m_apply(i, opt[static_cast<std::size_t>(j)].row(x), y, true);
          rhs += m_apply(i, opt[static_cast<std::size_t>(j)].row(y), x, false);
        }
        ++rep.pairs_checked;
        if (lhs != rhs) {
          rep.ok = false;
          rep.l = l;
          rep.left = x;
          rep.right = y;
          return rep;
        }
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Deterministic test-corpus generators.

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Random A-linear filtration-preserving automorphism: entries only from
/// degree a to degree b <= a with b = a mod N_L, invertible diagonal blocks.
inline F2Matrix random_filtered_automorphism(Rng& rng, const std::vector<int>& degrees, int nl) {
  const std::size_t n = degrees.size();
  F2Matrix g(n, n);
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < n; ++i) by_degree[degrees[i]].push_back(i);
  for (const auto& [d, idx] : by_degree) {
    for (;;) {
      F2Matrix b(idx.size(), idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) b.set(r, c, rng.coin());
      if (rank(b) != idx.size()) continue;
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) g.set(idx[r], idx[c], b.get(r, c));
      break;
    }
  }
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s)
      if (degrees[t] < degrees[s] && (degrees[s] - degrees[t]) % nl == 0) g.set(t, s, rng.coin());
  return g;
}

inline std::vector<F2Matrix> split_by_power(const F2Matrix& total, const std::vector<int>& degrees, int nl, int nu) {
  const std::size_t n = degrees.size();
  std::vector<F2Matrix> ops(static_cast<std::size_t>(nu) + 1, F2Matrix(n, n));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s : total.row(t).support()) {
      const int diff = degrees[s] + 1 - degrees[t];
      if (diff < 0 || diff % nl != 0 || diff / nl > nu)
        throw Error(Errc::ShapeMismatch, "conjugated differential left the admissible T-powers");
      ops[static_cast<std::size_t>(diff / nl)].set(t, s);
    }
  return ops;
}

}  // namespace detail

/// A corpus complex together with what its construction predicts.
struct GeneratedComplex {
  FloerComplex complex;
  /// predicted_pages[r][m] = dim V_r(m) for r = 0..nu+1.
  std::vector<std::vector<std::size_t>> predicted_pages;
  std::vector<std::size_t> predicted_folded;
};

/// Direct sum of elementary complexes x -> y T^k (0 <= k <= nu) plus free
/// cycles, conjugated by a random filtration-preserving automorphism.
inline GeneratedComplex generate_complex(std::uint64_t seed, const std::vector<std::size_t>& dims, int nl) {
  if (dims.empty()) throw Error(Errc::InvalidArgument, "dims must name at least degree 0");
  if (nl < 2) throw Error(Errc::InvalidArgument, "minimal Maslov number must be >= 2");
  const std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
  if (total > 64) throw Error(Errc::SizeLimit, "random complexes are limited to 64 generators");
  detail::Rng rng(seed);
  const int dim_l = static_cast<int>(dims.size()) - 1;
  const int nu = FloerComplex::nu_for(dim_l, nl);

  std::vector<Generator> gens;
  std::vector<int> degrees;
  for (std::size_t m = 0; m < dims.size(); ++m)
    for (std::size_t i = 0; i < dims[m]; ++i) {
      gens.push_back({"c" + std::to_string(m) + "_" + std::to_string(i), static_cast<int>(m)});
      degrees.push_back(static_cast<int>(m));
    }
  const std::size_t n = gens.size();

  struct Pair {
    std::size_t source, target;
    int power;
  };
  std::vector<Pair> pairs;
  std::vector<bool> used(n, false);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  for (std::size_t s : order) {
    if (used[s] || rng.below(3) == 0) continue;
    std::vector<std::pair<std::size_t, int>> candidates;
    for (std::size_t t = 0; t < n; ++t) {
      if (used[t] || t == s) continue;
      const int diff = degrees[s] + 1 - degrees[t];
      if (diff >= 0 && diff % nl == 0 && diff / nl <= nu) candidates.emplace_back(t, diff / nl);
    }
    if (candidates.empty()) continue;
    const auto [t, k] = candidates[rng.below(candidates.size())];
    used[s] = used[t] = true;
    pairs.push_back({s, t, k});
  }

  F2Matrix d(n, n);
  for (const auto& p : pairs) d.set(p.target, p.source);
  const F2Matrix g = detail::random_filtered_automorphism(rng, degrees, nl);
  const F2Matrix conj = g * d * *inverse(g);
  std::vector<F2Matrix> ops = detail::split_by_power(conj, degrees, nl, nu);
  F2Matrix d0 = ops.front();
  std::vector<F2Matrix> higher(ops.begin() + 1, ops.end());

  GeneratedComplex out{FloerComplex::assemble(MorseComplex(dim_l, gens, std::move(d0)), nl, std::move(higher)),
                       {},
                       std::vector<std::size_t>(static_cast<std::size_t>(nl), 0)};
  for (int r = 0; r <= nu + 1; ++r) {
    std::vector<std::size_t> page(dims.size(), 0);
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i]) ++page[static_cast<std::size_t>(degrees[i])];
    for (const auto& p : pairs)
      if (p.power >= r) {
        ++page[static_cast<std::size_t>(degrees[p.source])];
        ++page[static_cast<std::size_t>(degrees[p.target])];
      }
    out.predicted_pages.push_back(std::move(page));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!used[i]) ++out.predicted_folded[static_cast<std::size_t>(degrees[i] % nl)];
  return out;
}

inline FloerComplex random_valid_complex(std::uint64_t seed, const std::vector<std::size_t>& dims, int nl) {
  return generate_complex(seed, dims, nl).complex;
}

struct CorpusShape {
  std::vector<std::size_t> dims;
  int nl = 2;
};

/// Shape of corpus member `index`: dimL in 1..4, total dimension in 1..12,
/// N_L cycling through 2, 3, 4 unless `fixed_nl` is set.
inline CorpusShape corpus_shape(std::uint64_t seed, std::uint64_t index, std::optional<int> fixed_nl = std::nullopt) {
  detail::Rng rng(detail::mix_seed(seed, index));
  CorpusShape s;
  s.nl = fixed_nl.value_or(2 + static_cast<int>(index % 3));
  const std::size_t dim_l = 1 + rng.below(4);
  std::size_t total = 0;
  for (std::size_t m = 0; m <= dim_l; ++m) {
    std::size_t d = rng.below(4);
    if (m == 0 && d == 0) d = 1;
    d = std::min(d, 12 - total);
    s.dims.push_back(d);
    total += d;
  }
  return s;
}

/// The perfect Morse complex of a ring (d_0 = 0, one generator per basis
/// element), with d_1 taken from a derivation of shift 1 - N_L and m_0 the
/// ring multiplication. `position[i]` is the generator of basis element i.
struct RingComplex {
  FloerComplex complex;
  std::vector<std::size_t> position;
};

inline RingComplex complex_from_ring(const GradedRing& ring, int nl, const Derivation* d1 = nullptr,
                                     bool with_products = true) {
  if (ring.min_degree() < 0) throw Error(Errc::InvalidArgument, "ring has negative degrees");
  const std::size_t n = ring.dim();
  std::vector<Generator> gens;
  for (const auto& b : ring.basis()) gens.push_back({b.name, b.degree});
  const auto pos = canonical_positions(gens);
  std::vector<F2Matrix> ops{F2Matrix(n, n)};
  if (d1 != nullptr) {
    if (d1->shift() != 1 - nl) throw Error(Errc::ShapeMismatch, "d_1 must have shift 1 - N_L");
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t : d1->apply(ring.basis_element(i)).support()) m.set(t, i);
    ops.push_back(std::move(m));
  }
  std::optional<std::vector<ProductTable>> products;
  if (with_products) {
    ProductTable m0;
    for (const auto& e : ring.product_entries()) {
      F2Vector v(n);
      for (std::size_t t : e.terms) v.flip(t);
      m0[{e.left, e.right}] = v;
    }
    products = std::vector<ProductTable>{std::move(m0)};
  }
  return {assemble_from_unsorted(ring.max_degree(), nl, gens, ops, std::move(products)), pos};
}

/// A product-carrying corpus complex and the ring its E1 page must carry.
struct GeneratedProductComplex {
  FloerComplex complex;
  RingPtr expected_ring;
  /// For each expected basis element, a d_0-cocycle (global chain) in its class.
  std::vector<F2Vector> representatives;
  std::string description;
};

/// R or R (x) B with B = <1, e, w, ew> (deg e = 0, deg w = 1, d_0 e = w),
/// d_1 a square-zero derivation of R, m_0 the product, then conjugated by a
/// random filtration-preserving automorphism when `conjugate` is set (which
/// makes m_l, l >= 1, and further d_k nonzero in general). E1 must be R, resp. R (x) Lambda(z), z = [ew].
inline GeneratedProductComplex generate_product_complex(std::uint64_t seed, int nl, bool conjugate = true) {
  detail::Rng rng(seed);
  RingPtr base;
  std::string desc;
  switch (rng.below(5)) {
    case 0: base = build_exterior(1), desc = "Lambda1"; break;
    case 1: base = build_exterior(2), desc = "Lambda2"; break;
    case 2: base = build_exterior(3), desc = "Lambda3"; break;
    case 3: {
      const int k = 1 + static_cast<int>(rng.below(4));
      base = build_truncated_poly(k);
      desc = "F2[a]/(a^" + std::to_string(k + 1) + ")";
      break;
    }
    default: base = build_exterior(2), desc = "Lambda2"; break;
  }
  const bool with_factor = rng.coin();
  const int shift = 1 - nl;

  std::vector<Derivation> candidates;
  for (auto& d : enumerate_derivations(base, shift)) {
    bool square_zero = true;
    for (std::size_t i = 0; i < base->dim() && square_zero; ++i)
      square_zero = d.apply(d.apply(base->basis_element(i))).is_zero();
    if (square_zero) candidates.push_back(std::move(d));
  }
  const Derivation& delta = candidates[rng.below(candidates.size())];

  RingPtr factor;
  if (with_factor) {
    factor = std::make_shared<const GradedRing>(
        std::vector<BasisElement>{{"1", 0}, {"e", 0}, {"w", 1}, {"ew", 1}}, 0,
        std::vector<ProductEntry>{{0, 0, {0}}, {0, 1, {1}}, {1, 0, {1}}, {0, 2, {2}}, {2, 0, {2}},
                                  {0, 3, {3}}, {3, 0, {3}}, {1, 2, {3}}, {2, 1, {3}}});
    desc += " (x) B";
  }
  const RingPtr chains = with_factor ? tensor_product(*base, *factor) : base;
  const GradedRing& c = *chains;
  const std::size_t n = c.dim();
  std::vector<int> degrees;
  for (const auto& b : c.basis()) degrees.push_back(b.degree);
  const int dim_l = c.max_degree();
  const int nu = FloerComplex::nu_for(dim_l, nl);

  // index of (base i, factor j) in the tensor basis
  auto idx = [&](std::size_t i, std::size_t j) -> std::size_t {
    if (!with_factor) return i;
    std::string name;
    const std::string& ni = base->basis()[i].name;
    const std::string& nj = factor->basis()[j].name;
    name = (i == base->unit()) ? nj : (j == factor->unit() ? ni : ni + nj);
    return *c.find(name);
  };

  F2Matrix d(n, n);
  for (std::size_t i = 0; i < base->dim(); ++i) {
    const std::size_t fdim = with_factor ? factor->dim() : 1;
    for (std::size_t j = 0; j < fdim; ++j) {
      const std::size_t src = idx(i, j);
      for (std::size_t t : delta.apply(base->basis_element(i)).support()) d.flip(idx(t, j), src);
      if (with_factor && j == 1) d.flip(idx(i, 2), src);
    }
  }
  std::vector<F2Vector> mtotal(n * n, F2Vector(n));
  for (const auto& e : c.product_entries())
    for (std::size_t t : e.terms) mtotal[e.left * n + e.right].flip(t);

  const F2Matrix g = conjugate ? detail::random_filtered_automorphism(rng, degrees, nl) : F2Matrix::identity(n);
  const F2Matrix ginv = *inverse(g);
  const F2Matrix conj = g * d * ginv;
  std::vector<F2Matrix> ops = detail::split_by_power(conj, degrees, nl, nu);

  const int bound = FloerComplex::product_bound(dim_l, nl);
  std::vector<ProductTable> tables(static_cast<std::size_t>(bound) + 1);
  const F2Matrix ginv_t = ginv.transpose();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      F2Vector acc(n);
      const auto su = ginv_t.row(u).support();
      const auto sv = ginv_t.row(v).support();
      for (std::size_t i : su)
        for (std::size_t j : sv) acc += mtotal[i * n + j];
      const F2Vector img = g * acc;
      for (std::size_t z : img.support()) {
        const int diff = degrees[u] + degrees[v] - degrees[z];
        if (diff < 0 || diff % nl != 0 || diff / nl > bound)
          throw Error(Errc::ShapeMismatch, "conjugated product left the admissible T-powers");
        auto& slot = tables[static_cast<std::size_t>(diff / nl)][{u, v}];
        if (slot.size() == 0) slot = F2Vector(n);
        slot.flip(z);
      }
    }

  std::vector<Generator> gens;
  for (const auto& b : c.basis()) gens.push_back({b.name, b.degree});
  GeneratedProductComplex out{assemble_from_unsorted(dim_l, nl, gens, ops, tables), nullptr, {}, desc};
  const auto pos = canonical_positions(gens);

  // expected E1 ring and cocycle representatives
  std::vector<F2Vector> originals;
  if (with_factor) {
    const auto z_ring = std::make_shared<const GradedRing>(
        std::vector<BasisElement>{{"1", 0}, {"z", 1}}, 0,
        std::vector<ProductEntry>{{0, 0, {0}}, {0, 1, {1}}, {1, 0, {1}}});
    out.expected_ring = tensor_product(*base, *z_ring);
    for (const auto& b : out.expected_ring->basis()) {
      const bool has_z = b.name.back() == 'z';
      const std::string stem = has_z ? b.name.substr(0, b.name.size() - 1) : b.name;
      const std::size_t i = stem.empty() ? base->unit() : *base->find(stem);
      F2Vector chain(n);
      chain.set(idx(i, has_z ? 3 : 0));
      originals.push_back(chain);
    }
  } else {
    out.expected_ring = base;
    for (std::size_t i = 0; i < base->dim(); ++i) originals.push_back(F2Vector::unit(n, i));
  }
  if (originals.size() != out.expected_ring->dim())
    throw Error(Errc::InvalidArgument, "internal: expected-ring representatives do not match its basis");
  for (const F2Vector& orig : originals) {
    const F2Vector image = g * orig;
    const int deg = degrees[*orig.first_set()];
    F2Vector lead(n);
    for (std::size_t z : image.support())
      if (degrees[z] == deg) lead.set(z);
    out.representatives.push_back(permute_vector(lead, pos));
  }
  return out;
}

}  // namespace floerss
