#pragma once

// Finite-dimensional graded commutative algebras over F2 given by explicit
// structure tables, together with graded derivations on them.
//
// Elements are F2Vectors over the named basis. Degrees outside the occupied
// range are zero spaces: a map into such a degree is the zero map.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floerss/error.hpp"
#include "floerss/f2linalg.hpp"

namespace floerss {

using Element = F2Vector;

struct BasisElement {
  std::string name;
  int degree = 0;
  bool operator==(const BasisElement&) const = default;
};

/// One nonzero structure constant row: left * right = sum of terms.
struct ProductEntry {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::size_t> terms;
};

class GradedRing {
 public:
  GradedRing(std::vector<BasisElement> basis, std::size_t unit, std::vector<ProductEntry> mult)
      : basis_(std::move(basis)), unit_(unit), rows_(basis_.size()) {
    const std::size_t n = basis_.size();
    if (n == 0) throw Error(Errc::InvalidArgument, "ring has an empty basis");
    if (unit_ >= n) throw Error(Errc::InvalidArgument, "unit index out of range");
    if (basis_[unit_].degree != 0) throw Error(Errc::InvalidArgument, "unit must have degree 0");
    {
      std::set<std::string> names;
      for (const auto& b : basis_)
        if (!names.insert(b.name).second)
          throw Error(Errc::InvalidArgument, "duplicate basis name '" + b.name + "'");
    }
    for (std::size_t i = 0; i < n; ++i) by_degree_[basis_[i].degree].push_back(i);
    local_.resize(n);
    for (const auto& [deg, idx] : by_degree_)
      for (std::size_t k = 0; k < idx.size(); ++k) local_[idx[k]] = k;

    std::vector<std::vector<std::pair<std::size_t, std::vector<std::size_t>>>> staged(n);
    for (auto& e : mult) {
      if (e.left >= n || e.right >= n)
        throw Error(Errc::InvalidArgument, "product entry index out of range");
      std::vector<std::size_t> terms;
      std::sort(e.terms.begin(), e.terms.end());
      for (std::size_t k = 0; k < e.terms.size();) {
        std::size_t j = k;
        while (j < e.terms.size() && e.terms[j] == e.terms[k]) ++j;
        if ((j - k) % 2 == 1) terms.push_back(e.terms[k]);
        k = j;
      }
      for (std::size_t t : terms) {
        if (t >= n) throw Error(Errc::InvalidArgument, "product term index out of range");
        if (basis_[t].degree != basis_[e.left].degree + basis_[e.right].degree)
          throw Error(Errc::InvalidArgument, "product " + basis_[e.left].name + "*" +
                                                 basis_[e.right].name + " is not degree-additive");
      }
      if (!terms.empty()) staged[e.left].emplace_back(e.right, std::move(terms));
    }
    for (std::size_t i = 0; i < n; ++i) {
      auto& row = staged[i];
      std::sort(row.begin(), row.end());
      for (std::size_t k = 1; k < row.size(); ++k)
        if (row[k].first == row[k - 1].first)
          throw Error(Errc::InvalidArgument, "duplicate product entry for " + basis_[i].name + "*" +
                                                 basis_[row[k].first].name);
      for (auto& [j, terms] : row) {
        rows_[i].push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(terms_.size()),
                            static_cast<std::uint32_t>(terms_.size() + terms.size())});
        for (std::size_t t : terms) terms_.push_back(static_cast<std::uint32_t>(t));
      }
    }
    for (std::size_t b = 0; b < n; ++b) {
      const auto l = product_terms(unit_, b);
      const auto r = product_terms(b, unit_);
      if (l.size() != 1 || l[0] != b || r.size() != 1 || r[0] != b)
        throw Error(Errc::InvalidArgument, "unit does not act as identity on " + basis_[b].name);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& e : rows_[i]) {
        const auto other = product_terms(e.right, i);
        if (!std::equal(other.begin(), other.end(), terms_.begin() + e.begin, terms_.begin() + e.end))
          throw Error(Errc::InvalidArgument, "product is not commutative on " + basis_[i].name + ", " +
                                                 basis_[e.right].name);
      }
  }

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  std::size_t unit() const noexcept { return unit_; }
  int degree_of(std::size_t i) const { return basis_.at(i).degree; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].name == name) return i;
    return std::nullopt;
  }

  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [d, idx] : by_degree_) out.push_back(d);
    return out;
  }
  int max_degree() const { return by_degree_.rbegin()->first; }
  int min_degree() const { return by_degree_.begin()->first; }

  std::size_t dim_in_degree(int d) const {
    const auto it = by_degree_.find(d);
    return it == by_degree_.end() ? 0 : it->second.size();
  }
  std::span<const std::size_t> indices_in_degree(int d) const {
    const auto it = by_degree_.find(d);
    if (it == by_degree_.end()) return {};
    return it->second;
  }
  std::size_t local_index(std::size_t i) const { return local_.at(i); }

  /// Degree-1 basis elements, in basis order.
  std::vector<std::size_t> generators() const {
    const auto g = indices_in_degree(1);
    return {g.begin(), g.end()};
  }

  std::span<const std::uint32_t> product_terms(std::size_t i, std::size_t j) const {
    const auto& row = rows_[i];
    const auto it = std::lower_bound(row.begin(), row.end(), j,
                                     [](const RowEntry& e, std::size_t key) { return e.right < key; });
    if (it == row.end() || it->right != j) return {};
    return {terms_.data() + it->begin, it->end - it->begin};
  }

  /// All nonzero structure constants in (left, right) order.
  std::vector<ProductEntry> product_entries() const {
    std::vector<ProductEntry> out;
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& e : rows_[i])
        out.push_back({i, e.right, {terms_.begin() + e.begin, terms_.begin() + e.end}});
    return out;
  }

  Element zero() const { return Element(dim()); }
  Element basis_element(std::size_t i) const { return Element::unit(dim(), i); }
  Element one() const { return basis_element(unit_); }

  Element multiply(const Element& a, const Element& b) const {
    Element out(dim());
    const auto bs = b.support();
    for (std::size_t i : a.support())
      for (std::size_t j : bs)
        for (std::uint32_t t : product_terms(i, j)) out.flip(t);
    return out;
  }

  std::optional<int> homogeneous_degree(const Element& a) const {
    std::optional<int> deg;
    for (std::size_t i : a.support()) {
      if (deg && *deg != basis_[i].degree) return std::nullopt;
      deg = basis_[i].degree;
    }
    return deg;
  }

  /// Coordinates of the degree-d component of a inside the degree-d block.
  F2Vector to_local(const Element& a, int d) const {
    const auto idx = indices_in_degree(d);
    F2Vector out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (a.get(idx[k])) out.set(k);
    return out;
  }
  Element from_local(const F2Vector& v, int d) const {
    const auto idx = indices_in_degree(d);
    Element out(dim());
    for (std::size_t k : v.support()) out.set(idx[k]);
    return out;
  }

  std::string describe(const Element& a) const {
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t i : a.support()) {
      if (!s.empty()) s += " + ";
      s += basis_[i].name;
    }
    return s;
  }

  /// Associativity on every basis triple; commutativity and unit are checked
  /// at construction. Cubic in dim, so callers cap its use.
  bool check_associativity() const {
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Element ij = multiply(basis_element(i), basis_element(j));
        for (std::size_t k = 0; k < n; ++k) {
          const Element jk = multiply(basis_element(j), basis_element(k));
          if (multiply(ij, basis_element(k)) != multiply(basis_element(i), jk)) return false;
        }
      }
    return true;
  }

  struct GenerationStep {
    int degree = 0;
    std::size_t closure_dim = 0;
    std::size_t ring_dim = 0;
    bool operator==(const GenerationStep&) const = default;
  };

  /// Dimensions, per occupied degree, of the subalgebra generated by the
  /// unit and the degree-1 part, next to the ring's own dimensions.
  std::vector<GenerationStep> generation_profile() const {
    std::vector<GenerationStep> out;
    const auto gens = generators();
    std::vector<Element> current;  // spanning set of the closure in the current degree
    current.push_back(one());
    const int top = max_degree();
    for (int d = 0; d <= top; ++d) {
      if (d == 1) {
        current.clear();
        for (std::size_t g : gens) current.push_back(basis_element(g));
      } else if (d >= 2) {
        std::vector<Element> next;
        for (std::size_t g : gens)
          for (const Element& c : current) {
            Element p = multiply(basis_element(g), c);
            if (!p.is_zero()) next.push_back(std::move(p));
          }
        current = std::move(next);
      }
      std::vector<F2Vector> local;
      for (const Element& c : current) local.push_back(to_local(c, d));
      const Subspace closure = Subspace::span(dim_in_degree(d), local);
      current.clear();
      for (std::size_t i = 0; i < closure.dim(); ++i) current.push_back(from_local(closure.basis_vector(i), d));
      if (dim_in_degree(d) != 0 || closure.dim() != 0) out.push_back({d, closure.dim(), dim_in_degree(d)});
    }
    return out;
  }

  bool is_degree_one_generated() const {
    if (min_degree() < 0) return false;
    for (const auto& s : generation_profile())
      if (s.closure_dim != s.ring_dim) return false;
    return true;
  }

 private:
  struct RowEntry {
    std::uint32_t right;
    std::uint32_t begin;
    std::uint32_t end;
  };

  std::vector<BasisElement> basis_;
  std::size_t unit_;
  std::vector<std::vector<RowEntry>> rows_;
  std::vector<std::uint32_t> terms_;
  std::map<int, std::vector<std::size_t>> by_degree_;
  std::vector<std::size_t> local_;
};

using RingPtr = std::shared_ptr<const GradedRing>;

inline constexpr int kMaxExteriorGenerators = 12;

/// Exterior algebra on x1..xn over F2 (cohomology of the n-torus). Basis is
/// the square-free monomials ordered by length, then lexicographically.
inline RingPtr build_exterior(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "exterior algebra needs n >= 1");
  if (n > kMaxExteriorGenerators)
    throw Error(Errc::SizeLimit, "exterior algebra limited to n <= 12 (2^n basis elements)");
  const std::uint32_t full = (1u << n);
  std::vector<std::uint32_t> masks;
  masks.reserve(full);
  for (std::uint32_t m = 0; m < full; ++m) masks.push_back(m);
  auto lex_key = [](std::uint32_t m) {
    std::vector<int> bits;
    for (int i = 0; m >> i; ++i)
      if ((m >> i) & 1u) bits.push_back(i);
    return bits;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return lex_key(a) < lex_key(b);
  });
  std::vector<std::size_t> index_of(full);
  std::vector<BasisElement> basis;
  basis.reserve(full);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    index_of[masks[k]] = k;
    std::string name;
    for (int i = 0; i < n; ++i)
      if ((masks[k] >> i) & 1u) name += "x" + std::to_string(i + 1);
    basis.push_back({name.empty() ? "1" : name, std::popcount(masks[k])});
  }
  std::vector<ProductEntry> mult;
  for (std::uint32_t a = 0; a < full; ++a)
    for (std::uint32_t b = 0; b < full; ++b)
      if ((a & b) == 0) mult.push_back({index_of[a], index_of[b], {index_of[a | b]}});
  return std::make_shared<const GradedRing>(std::move(basis), 0, std::move(mult));
}

/// F2[a]/(a^{n+1}) with deg a = 1 (cohomology of RP^n).
inline RingPtr build_truncated_poly(int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "truncated polynomial ring needs n >= 1");
  if (n > 4096) throw Error(Errc::SizeLimit, "truncated polynomial ring limited to n <= 4096");
  std::vector<BasisElement> basis;
  for (int k = 0; k <= n; ++k)
    basis.push_back({k == 0 ? "1" : (k == 1 ? "a" : "a^" + std::to_string(k)), k});
  std::vector<ProductEntry> mult;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      mult.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), {static_cast<std::size_t>(i + j)}});
  return std::make_shared<const GradedRing>(std::move(basis), 0, std::move(mult));
}

/// H*(S^k; F2): unit and one class s of degree k with s^2 = 0.
inline RingPtr build_sphere(int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "sphere dimension must be >= 1");
  return std::make_shared<const GradedRing>(std::vector<BasisElement>{{"1", 0}, {"s", k}}, 0,
                                            std::vector<ProductEntry>{{0, 0, {0}}, {0, 1, {1}}, {1, 0, {1}}});
}

/// Tensor product of two rings (no signs over F2). Basis ordered by degree,
/// then by (left index, right index); names concatenate, units dropped.
inline RingPtr tensor_product(const GradedRing& a, const GradedRing& b) {
  struct Pair {
    std::size_t i, j;
    int degree;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) pairs.push_back({i, j, a.degree_of(i) + b.degree_of(j)});
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.degree < y.degree; });
  std::vector<std::size_t> index(a.dim() * b.dim());
  std::vector<BasisElement> basis;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j, d] = pairs[k];
    index[i * b.dim() + j] = k;
    const std::string& ni = a.basis()[i].name;
    const std::string& nj = b.basis()[j].name;
    std::string name;
    if (i == a.unit())
      name = nj;
    else if (j == b.unit())
      name = ni;
    else
      name = ni + nj;
    basis.push_back({name, d});
  }
  std::vector<ProductEntry> mult;
  const auto ea = a.product_entries();
  const auto eb = b.product_entries();
  for (const auto& x : ea)
    for (const auto& y : eb) {
      ProductEntry e{index[x.left * b.dim() + y.left], index[x.right * b.dim() + y.right], {}};
      for (std::size_t s : x.terms)
        for (std::size_t t : y.terms) e.terms.push_back(index[s * b.dim() + t]);
      mult.push_back(std::move(e));
    }
  return std::make_shared<const GradedRing>(std::move(basis), index[a.unit() * b.dim() + b.unit()],
                                            std::move(mult));
}

inline Element cup(const GradedRing& ring, const Element& a, const Element& b) { return ring.multiply(a, b); }

/// A degree-`shift` linear endomorphism of a graded ring, stored as one
/// matrix per occupied source degree. It need not satisfy Leibniz; see
/// check_leibniz.
class Derivation {
 public:
  Derivation(RingPtr ring, int shift, std::map<int, F2Matrix> maps)
      : ring_(std::move(ring)), shift_(shift) {
    for (int d : ring_->degrees()) {
      const std::size_t rows = ring_->dim_in_degree(d + shift_);
      const std::size_t cols = ring_->dim_in_degree(d);
      auto it = maps.find(d);
      if (it == maps.end()) {
        maps_.emplace(d, F2Matrix(rows, cols));
        continue;
      }
      if (it->second.rows() != rows || it->second.cols() != cols)
        throw Error(Errc::ShapeMismatch, "derivation block for degree " + std::to_string(d) + " has wrong shape");
      maps_.emplace(d, std::move(it->second));
    }
    for (const auto& [d, m] : maps)
      if (ring_->dim_in_degree(d) == 0 && !m.is_zero())
        throw Error(Errc::ShapeMismatch, "derivation block given for unoccupied degree " + std::to_string(d));
  }

  static Derivation zero(RingPtr ring, int shift) { return Derivation(std::move(ring), shift, {}); }

  const GradedRing& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  int shift() const noexcept { return shift_; }
  const std::map<int, F2Matrix>& maps() const noexcept { return maps_; }
  const F2Matrix& map(int degree) const { return maps_.at(degree); }

  Element apply(const Element& a) const {
    Element out = ring_->zero();
    for (const auto& [d, m] : maps_) {
      if (m.rows() == 0) continue;
      const F2Vector src = ring_->to_local(a, d);
      if (src.is_zero()) continue;
      out += ring_->from_local(m * src, d + shift_);
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(maps_.begin(), maps_.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }

  std::vector<Element> generator_values() const {
    std::vector<Element> out;
    for (std::size_t g : ring_->generators()) out.push_back(apply(ring_->basis_element(g)));
    return out;
  }

  bool operator==(const Derivation& other) const {
    return ring_ == other.ring_ && shift_ == other.shift_ && maps_ == other.maps_;
  }

 private:
  RingPtr ring_;
  int shift_;
  std::map<int, F2Matrix> maps_;
};

/// First basis pair (a, b) on which d(ab) != d(a)b + a d(b), if any.
inline std::optional<std::pair<std::size_t, std::size_t>> leibniz_failure(const Derivation& d) {
  const GradedRing& r = d.ring();
  std::vector<Element> images;
  images.reserve(r.dim());
  for (std::size_t i = 0; i < r.dim(); ++i) images.push_back(d.apply(r.basis_element(i)));
  for (std::size_t i = 0; i < r.dim(); ++i)
    for (std::size_t j = 0; j < r.dim(); ++j) {
      Element ab = r.zero();
      for (std::uint32_t t : r.product_terms(i, j)) ab.flip(t);
      const Element lhs = d.apply(ab);
      const Element rhs = r.multiply(images[i], r.basis_element(j)) + r.multiply(r.basis_element(i), images[j]);
      if (lhs != rhs) return std::make_pair(i, j);
    }
  return std::nullopt;
}

inline bool check_leibniz(const Derivation& d) { return !leibniz_failure(d).has_value(); }

namespace detail {

inline void require_degree_one_generated(const GradedRing& ring) {
  if (!ring.is_degree_one_generated())
    throw Error(Errc::NotDegreeOneGenerated, "ring is not generated by its unit and degree-1 part");
}

}  // namespace detail

/// The unique Leibniz extension of prescribed values on the degree-1
/// generators (values[k] is the image of the k-th generator).
inline Derivation derivation_from_generator_values(const RingPtr& ring, int shift, std::span<const Element> values) {
  detail::require_degree_one_generated(*ring);
  const GradedRing& r = *ring;
  const auto gens = r.generators();
  if (values.size() != gens.size())
    throw Error(Errc::InvalidArgument, "expected one value per degree-1 generator");
  const int target = 1 + shift;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k].size() != r.dim()) throw Error(Errc::InvalidArgument, "generator value has wrong length");
    if (values[k].is_zero()) continue;
    const auto deg = r.homogeneous_degree(values[k]);
    if (!deg || *deg != target)
      throw Error(Errc::InvalidArgument, "value for " + r.basis()[gens[k]].name + " is not of degree " +
                                             std::to_string(target));
  }

  std::map<int, F2Matrix> maps;
  maps.emplace(0, F2Matrix(r.dim_in_degree(shift), r.dim_in_degree(0)));
  {
    std::vector<F2Vector> cols;
    for (const Element& v : values) cols.push_back(r.to_local(v, target));
    maps.emplace(1, F2Matrix::from_columns(r.dim_in_degree(target), cols));
  }
  auto apply_partial = [&](const Element& a, int d) {
    const F2Matrix& m = maps.at(d);
    return r.from_local(m * r.to_local(a, d), d + shift);
  };

  const int top = r.max_degree();
  for (int k = 2; k <= top + 1; ++k) {
    std::vector<F2Vector> pcols;
    std::vector<F2Vector> wcols;
    const auto prev = r.indices_in_degree(k - 1);
    for (std::size_t g : gens) {
      const Element eg = r.basis_element(g);
      const Element dg = apply_partial(eg, 1);
      for (std::size_t b : prev) {
        const Element eb = r.basis_element(b);
        const Element p = r.multiply(eg, eb);
        const Element w = r.multiply(dg, eb) + r.multiply(eg, apply_partial(eb, k - 1));
        pcols.push_back(r.to_local(p, k));
        wcols.push_back(r.to_local(w, k + shift));
      }
    }
    const std::size_t dim_k = r.dim_in_degree(k);
    const std::size_t dim_t = r.dim_in_degree(k + shift);
    const F2Matrix p = F2Matrix::from_columns(dim_k, pcols);
    const F2Matrix w = F2Matrix::from_columns(dim_t, wcols);
    F2Matrix dk(dim_t, dim_k);
    if (dim_k > 0) {
      const RowEchelon ech = row_echelon(p);
      if (ech.rank() != dim_k) throw Error(Errc::NotDegreeOneGenerated, "degree " + std::to_string(k) + " not spanned");
      std::vector<F2Vector> qcols, wq;
      for (std::size_t c : ech.pivots) {
        qcols.push_back(pcols[c]);
        wq.push_back(wcols[c]);
      }
      const auto qinv = inverse(F2Matrix::from_columns(dim_k, qcols));
      dk = F2Matrix::from_columns(dim_t, wq) * *qinv;
    }
    if (dk * p != w)
      throw Error(Errc::InconsistentExtension,
                  "Leibniz extension contradicts a relation landing in degree " + std::to_string(k));
    if (dim_k > 0) maps.emplace(k, std::move(dk));
  }
  return Derivation(ring, shift, std::move(maps));
}

inline constexpr std::size_t kMaxEnumerationBits = 24;

/// Every Leibniz derivation of the given shift, in increasing order of the
/// packed generator assignment (generator-major, target-basis-minor).
inline std::vector<Derivation> enumerate_derivations(const RingPtr& ring, int shift) {
  detail::require_degree_one_generated(*ring);
  const GradedRing& r = *ring;
  const auto gens = r.generators();
  const int target = 1 + shift;
  const std::size_t tdim = r.dim_in_degree(target);
  const std::size_t bits = gens.size() * tdim;
  if (bits > kMaxEnumerationBits)
    throw Error(Errc::SizeLimit, "enumeration needs 2^" + std::to_string(bits) + " assignments (limit 2^24)");
  std::vector<Derivation> out;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Element> values;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      F2Vector local(tdim);
      for (std::size_t t = 0; t < tdim; ++t)
        if ((mask >> (g * tdim + t)) & 1u) local.set(t);
      values.push_back(r.from_local(local, target));
    }
    try {
      out.push_back(derivation_from_generator_values(ring, shift, values));
    } catch (const Error& e) {
      if (e.code() != Errc::InconsistentExtension) throw;
    }
  }
  return out;
}

struct GeneratorImage {
  std::string generator;
  int image_degree = 0;
  std::size_t image_dim = 0;  // 0 when negative or unoccupied
  bool operator==(const GeneratorImage&) const = default;
};

/// Record that every Leibniz derivation of `shift` on `ring` vanishes:
/// each generator lands in a zero space, the kernel is a subring holding the
/// unit, and the generation profile shows that subring is everything.
struct VanishingCertificate {
  int shift = 0;
  std::vector<GeneratorImage> generators;
  std::vector<GradedRing::GenerationStep> generation;
  bool unit_in_kernel = true;
  bool kernel_is_whole_ring = false;
  bool operator==(const VanishingCertificate&) const = default;
};

inline VanishingCertificate vanishing_lemma(const GradedRing& ring, int shift) {
  if (shift > -2)
    throw Error(Errc::NotApplicable, "vanishing lemma needs shift <= -2 (got " + std::to_string(shift) + ")");
  if (ring.min_degree() < 0 || !ring.is_degree_one_generated())
    throw Error(Errc::NotDegreeOneGenerated, "ring is not generated by its unit and degree-1 part");
  VanishingCertificate cert;
  cert.shift = shift;
  bool all_zero = true;
  for (std::size_t g : ring.generators()) {
    const int deg = 1 + shift;
    const std::size_t dim = deg < 0 ? 0 : ring.dim_in_degree(deg);
    cert.generators.push_back({ring.basis()[g].name, deg, dim});
    all_zero = all_zero && dim == 0;
  }
  cert.generation = ring.generation_profile();
  const bool generated = std::all_of(cert.generation.begin(), cert.generation.end(),
                                     [](const auto& s) { return s.closure_dim == s.ring_dim; });
  cert.kernel_is_whole_ring = all_zero && generated && cert.unit_in_kernel;
  return cert;
}

/// Re-derive the certificate from the ring and compare field by field.
inline bool replay_certificate(const GradedRing& ring, const VanishingCertificate& cert) {
  try {
    return cert.kernel_is_whole_ring && vanishing_lemma(ring, cert.shift) == cert;
  } catch (const Error&) {
    return false;
  }
}

/// Constructive proof that d([p]) != 0 for a nonzero shift -1 derivation on
/// an exterior algebra: after the basis change x1 = pivot generator,
/// xi <- xi + d(xi) x1, one has [p] = x1 y and x1 d([p]) = [p].
struct TopClassWitness {
  std::string pivot_generator;
  std::vector<Element> adapted_basis;
  Element y;
  Element top;
  Element d_top;
  Element x1_times_d_top;
  bool identity_holds = false;
};

inline TopClassWitness top_class_nonvanishing(const Derivation& d) {
  if (d.shift() != -1) throw Error(Errc::NotShiftMinusOne, "top-class argument needs shift -1");
  if (d.is_zero()) throw Error(Errc::ZeroDerivation, "derivation is zero");
  const GradedRing& r = d.ring();
  const auto gens = r.generators();
  const int n = static_cast<int>(gens.size());
  if (n < 1 || r.max_degree() != n || r.dim_in_degree(n) != 1 || !r.is_degree_one_generated())
    throw Error(Errc::InvalidArgument, "ring is not an exterior algebra on its degree-1 part");
  std::vector<bool> hits(gens.size());
  std::optional<std::size_t> pivot;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    hits[k] = d.apply(r.basis_element(gens[k])).get(r.unit());
    if (hits[k] && !pivot) pivot = k;
  }
  if (!pivot) throw Error(Errc::InvalidArgument, "derivation is nonzero but vanishes on generators");

  TopClassWitness w;
  w.pivot_generator = r.basis()[gens[*pivot]].name;
  const Element x1 = r.basis_element(gens[*pivot]);
  w.adapted_basis.push_back(x1);
  w.y = r.one();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k == *pivot) continue;
    Element xk = r.basis_element(gens[k]);
    if (hits[k]) xk += x1;
    w.adapted_basis.push_back(xk);
    w.y = r.multiply(w.y, xk);
  }
  w.top = r.multiply(x1, w.y);
  const Element expected_top = r.basis_element(r.indices_in_degree(n)[0]);
  w.d_top = d.apply(w.top);
  w.x1_times_d_top = r.multiply(x1, w.d_top);
  w.identity_holds = w.top == expected_top && w.x1_times_d_top == w.top && !w.d_top.is_zero();
  return w;
}

}  // namespace floerss
