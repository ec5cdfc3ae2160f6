#pragma once

// Dense linear algebra over the two-element field.
//
// Vectors and matrix rows are packed 64 bits per machine word; padding bits
// past the logical length are always zero, so word-wise equality is value
// equality. Matrices act on column vectors: for an r x c matrix M, M * v
// takes v in F2^c to F2^r.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "floerss/error.hpp"

namespace floerss {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

  static F2Vector unit(std::size_t size, std::size_t i) {
    F2Vector v(size);
    v.set(i);
    return v;
  }

  static F2Vector from_bits(std::initializer_list<int> bits) {
    F2Vector v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
  }

  std::size_t size() const noexcept { return size_; }

  bool get(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & Word{1};
  }
  void set(std::size_t i, bool value = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::optional<std::size_t> first_set() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return std::nullopt;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w != 0) {
        out.push_back(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  bool dot(const F2Vector& other) const noexcept {
    Word acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return (std::popcount(acc) & 1) != 0;
  }

  F2Vector& operator+=(const F2Vector& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }
  friend F2Vector operator+(F2Vector a, const F2Vector& b) noexcept { return a += b; }

  bool operator==(const F2Vector& other) const = default;
  auto operator<=>(const F2Vector& other) const = default;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  F2Vector slice(std::size_t offset, std::size_t length) const {
    F2Vector out(length);
    for (std::size_t i = 0; i < length; ++i)
      if (get(offset + i)) out.set(i);
    return out;
  }

  void assign_slice(std::size_t offset, const F2Vector& part) {
    for (std::size_t i = 0; i < part.size(); ++i) set(offset + i, part.get(i));
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), bits_(rows * stride_, 0) {}

  static F2Matrix identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  static F2Matrix from_rows(std::size_t cols, std::span<const F2Vector> rows) {
    F2Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  static F2Matrix from_columns(std::size_t rows, std::span<const F2Vector> columns) {
    F2Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (std::size_t i : columns[j].support()) m.set(i, j);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t stride() const noexcept { return stride_; }
  std::span<const Word> payload() const noexcept { return bits_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (bits_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & Word{1};
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    Word& w = bits_[r * stride_ + c / kWordBits];
    const Word mask = Word{1} << (c % kWordBits);
    w = value ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    bits_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits);
  }

  std::span<const Word> row_words(std::size_t r) const noexcept {
    return {bits_.data() + r * stride_, stride_};
  }
  std::span<Word> row_words(std::size_t r) noexcept { return {bits_.data() + r * stride_, stride_}; }

  F2Vector row(std::size_t r) const {
    F2Vector v(cols_);
    std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_, v.words().begin());
    return v;
  }
  void set_row(std::size_t r, const F2Vector& v) {
    std::copy_n(v.words().begin(), stride_, bits_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
  }
  F2Vector column(std::size_t c) const {
    F2Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (get(r, c)) v.set(r);
    return v;
  }

  void add_row(std::size_t dst, std::size_t src) noexcept {
    Word* d = bits_.data() + dst * stride_;
    const Word* s = bits_.data() + src * stride_;
    for (std::size_t k = 0; k < stride_; ++k) d[k] ^= s[k];
  }
  void swap_rows(std::size_t a, std::size_t b) noexcept {
    if (a == b) return;
    std::swap_ranges(bits_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     bits_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
  }

  bool is_zero() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](Word w) { return w == 0; });
  }

  F2Matrix transpose() const {
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto words = row_words(r);
      for (std::size_t k = 0; k < stride_; ++k) {
        Word w = words[k];
        while (w != 0) {
          t.set(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)), r);
          w &= w - 1;
        }
      }
    }
    return t;
  }

  F2Vector operator*(const F2Vector& v) const {
    if (v.size() != cols_) throw Error(Errc::ShapeMismatch, "matrix-vector size mismatch");
    F2Vector out(rows_);
    const auto vw = v.words();
    for (std::size_t r = 0; r < rows_; ++r) {
      const Word* row = bits_.data() + r * stride_;
      Word acc = 0;
      for (std::size_t k = 0; k < stride_; ++k) acc ^= row[k] & vw[k];
      if (std::popcount(acc) & 1) out.set(r);
    }
    return out;
  }

  F2Matrix operator*(const F2Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw Error(Errc::ShapeMismatch, "matrix product size mismatch");
    F2Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Word* dst = out.bits_.data() + r * out.stride_;
      const auto words = row_words(r);
      for (std::size_t k = 0; k < stride_; ++k) {
        Word w = words[k];
        while (w != 0) {
          const std::size_t i = k * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
          const Word* src = rhs.bits_.data() + i * rhs.stride_;
          for (std::size_t q = 0; q < out.stride_; ++q) dst[q] ^= src[q];
          w &= w - 1;
        }
      }
    }
    return out;
  }

  F2Matrix& operator+=(const F2Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw Error(Errc::ShapeMismatch, "matrix sum size mismatch");
    for (std::size_t k = 0; k < bits_.size(); ++k) bits_[k] ^= rhs.bits_[k];
    return *this;
  }
  friend F2Matrix operator+(F2Matrix a, const F2Matrix& b) { return a += b; }

  F2Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    F2Matrix out(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c)
        if (get(r0 + r, c0 + c)) out.set(r, c);
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const F2Matrix& b) {
    for (std::size_t r = 0; r < b.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) set(r0 + r, c0 + c, b.get(r, c));
  }

  bool operator==(const F2Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

/// Reduced row-echelon form of a matrix, optionally with the invertible
/// transform E satisfying E * input == reduced.
struct RowEchelon {
  F2Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of row i, i < rank
  F2Matrix transform;               // empty unless requested

  std::size_t rank() const noexcept { return pivots.size(); }
};

inline RowEchelon row_echelon(F2Matrix m, bool track_transform = false) {
  RowEchelon out;
  F2Matrix e = track_transform ? F2Matrix::identity(m.rows()) : F2Matrix();
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
    std::size_t p = next;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, next);
    if (track_transform) e.swap_rows(p, next);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != next && m.get(r, c)) {
        m.add_row(r, next);
        if (track_transform) e.add_row(r, next);
      }
    }
    out.pivots.push_back(c);
    ++next;
  }
  out.reduced = std::move(m);
  out.transform = std::move(e);
  return out;
}

inline std::size_t rank(const F2Matrix& m) { return row_echelon(m).rank(); }

/// A linear subspace of F2^n, stored as its reduced row-echelon basis so that
/// equal subspaces have identical payloads.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(std::size_t ambient, std::span<const F2Vector> vectors) {
    Subspace s(ambient);
    if (vectors.empty()) return s;
    RowEchelon ech = row_echelon(F2Matrix::from_rows(ambient, vectors));
    s.basis_ = ech.reduced.block(0, 0, ech.rank(), ambient);
    s.pivots_ = std::move(ech.pivots);
    return s;
  }

  static Subspace full(std::size_t ambient) {
    Subspace s(ambient);
    s.basis_ = F2Matrix::identity(ambient);
    s.pivots_.resize(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
    return s;
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  const F2Matrix& basis() const noexcept { return basis_; }
  F2Vector basis_vector(std::size_t i) const { return basis_.row(i); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  std::vector<F2Vector> basis_vectors() const {
    std::vector<F2Vector> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  /// Canonical representative of v modulo this subspace (zero on every pivot).
  F2Vector reduce(F2Vector v) const {
    auto vw = v.words();
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      if (!v.get(pivots_[i])) continue;
      const auto row = basis_.row_words(i);
      for (std::size_t k = 0; k < vw.size(); ++k) vw[k] ^= row[k];
    }
    return v;
  }

  bool contains(const F2Vector& v) const { return v.size() == ambient_ && reduce(v).is_zero(); }

  bool is_subspace_of(const Subspace& other) const {
    if (ambient_ != other.ambient_) return false;
    for (std::size_t i = 0; i < dim(); ++i)
      if (!other.contains(basis_.row(i))) return false;
    return true;
  }

  Subspace sum(const Subspace& other) const {
    std::vector<F2Vector> vs = basis_vectors();
    for (std::size_t i = 0; i < other.dim(); ++i) vs.push_back(other.basis_.row(i));
    return span(ambient_, vs);
  }

  bool operator==(const Subspace& other) const = default;

 private:
  std::size_t ambient_ = 0;
  F2Matrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Subspace kernel(const F2Matrix& m) {
  RowEchelon ech = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  std::vector<F2Vector> vs;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    F2Vector v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < ech.rank(); ++i)
      if (ech.reduced.get(i, f)) v.set(ech.pivots[i]);
    vs.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), vs);
}

inline Subspace image(const F2Matrix& m) {
  const F2Matrix t = m.transpose();
  std::vector<F2Vector> cols;
  cols.reserve(t.rows());
  for (std::size_t j = 0; j < t.rows(); ++j) cols.push_back(t.row(j));
  return Subspace::span(m.rows(), cols);
}

/// Gauss-Jordan factorisation reused across many right-hand sides.
class LinearSolver {
 public:
  explicit LinearSolver(const F2Matrix& m) : rows_(m.rows()), cols_(m.cols()), ech_(row_echelon(m, true)) {}

  std::size_t rank() const noexcept { return ech_.rank(); }

  /// Some x with M x = b (free variables zero), or nullopt.
  std::optional<F2Vector> solve(const F2Vector& b) const {
    if (b.size() != rows_) throw Error(Errc::ShapeMismatch, "right-hand side has wrong length");
    const F2Vector c = ech_.transform * b;
    for (std::size_t i = ech_.rank(); i < rows_; ++i)
      if (c.get(i)) return std::nullopt;
    F2Vector x(cols_);
    for (std::size_t i = 0; i < ech_.rank(); ++i)
      if (c.get(i)) x.set(ech_.pivots[i]);
    return x;
  }

  Subspace kernel() const {
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : ech_.pivots) is_pivot[p] = true;
    std::vector<F2Vector> vs;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      F2Vector v(cols_);
      v.set(f);
      for (std::size_t i = 0; i < ech_.rank(); ++i)
        if (ech_.reduced.get(i, f)) v.set(ech_.pivots[i]);
      vs.push_back(std::move(v));
    }
    return Subspace::span(cols_, vs);
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  RowEchelon ech_;
};

inline std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b) {
  return LinearSolver(m).solve(b);
}

inline std::optional<F2Matrix> inverse(const F2Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  RowEchelon ech = row_echelon(m, true);
  if (ech.rank() != m.rows()) return std::nullopt;
  return std::move(ech.transform);
}

/// The quotient sup/sub with canonical coset representatives.
class Quotient {
 public:
  Quotient() = default;

  std::size_t dim() const noexcept { return representatives_.size(); }
  const Subspace& sub() const noexcept { return sub_; }
  const Subspace& sup() const noexcept { return sup_; }

  /// Linear map on the ambient space sending v to its canonical representative
  /// modulo sub; on sup it vanishes exactly on sub.
  const F2Matrix& projector() const noexcept { return projector_; }

  /// Echelon-canonical representatives of a basis of sup/sub.
  const std::vector<F2Vector>& representatives() const noexcept { return representatives_; }

  F2Vector coordinates(const F2Vector& v) const {
    const F2Vector r = sub_.reduce(v);
    F2Vector c(dim());
    F2Vector check(v.size());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (r.get(rep_pivots_[i])) {
        c.set(i);
        check += representatives_[i];
      }
    }
    if (check != r) throw Error(Errc::NotASubspace, "vector does not lie in the quotient's ambient subspace");
    return c;
  }

  F2Vector lift(const F2Vector& coords) const {
    F2Vector v(sup_.ambient_dim());
    for (std::size_t i : coords.support()) v += representatives_[i];
    return v;
  }

 private:
  friend Quotient quotient_map(const Subspace& sub, const Subspace& sup);

  Subspace sub_;
  Subspace sup_;
  F2Matrix projector_;
  std::vector<F2Vector> representatives_;
  std::vector<std::size_t> rep_pivots_;
};

inline Quotient quotient_map(const Subspace& sub, const Subspace& sup) {
  if (!sub.is_subspace_of(sup))
    throw Error(Errc::NotASubspace, "quotient requested for a non-nested pair of subspaces");
  Quotient q;
  q.sub_ = sub;
  q.sup_ = sup;
  const std::size_t n = sup.ambient_dim();
  std::vector<F2Vector> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cols.push_back(sub.reduce(F2Vector::unit(n, j)));
  q.projector_ = F2Matrix::from_columns(n, cols);
  std::vector<F2Vector> reduced;
  for (std::size_t i = 0; i < sup.dim(); ++i) {
    F2Vector r = sub.reduce(sup.basis_vector(i));
    if (!r.is_zero()) reduced.push_back(std::move(r));
  }
  const Subspace complement = Subspace::span(n, reduced);
  q.representatives_ = complement.basis_vectors();
  q.rep_pivots_ = complement.pivots();
  return q;
}

}  // namespace floerss
