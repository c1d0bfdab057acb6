#ifndef DEEPFRI_SUBSPACE_HPP
#define DEEPFRI_SUBSPACE_HPP

#include <cstdint>
#include <vector>

#include "deepfri/errors.hpp"
#include "deepfri/gf2n.hpp"

namespace deepfri {

// An F2-affine evaluation domain: span of an ordered basis plus a shift.
// Enumeration order is part of the contract:
//   element(i) = shift + sum_j bit_j(i) * basis[j],
// so consecutive indices {2t, 2t+1} form a coset of span{basis[0]} and the
// prover's fold is a linear scan over adjacent pairs.
class Subspace {
 public:
  Subspace(const Field& field, std::vector<FieldElement> basis, FieldElement shift)
      : field_(field), basis_(std::move(basis)), shift_(shift) {
    DFRI_REQUIRE(shift.field() == field, ErrorCode::kFieldMismatch, "shift field mismatch");
    for (const auto& b : basis_) {
      DFRI_REQUIRE(b.field() == field, ErrorCode::kFieldMismatch, "basis field mismatch");
    }
    DFRI_REQUIRE(basis_.size() <= static_cast<size_t>(field.n()), ErrorCode::kBadArgument,
                 "basis larger than field dimension");
    build_solver();
  }

  // The full field as a domain, polynomial basis {1, X, X^2, ...}.
  static Subspace full_field(const Field& field) {
    std::vector<FieldElement> basis;
    for (int i = 0; i < field.n(); ++i) basis.push_back(field.element(uint64_t{1} << i));
    return Subspace(field, std::move(basis), field.zero());
  }

  // dim-dimensional subspace spanned by the first `dim` polynomial basis
  // vectors, plus a shift.
  static Subspace canonical(const Field& field, int dim, FieldElement shift) {
    DFRI_REQUIRE(dim >= 0 && dim <= field.n(), ErrorCode::kBadArgument, "bad dimension");
    std::vector<FieldElement> basis;
    for (int i = 0; i < dim; ++i) basis.push_back(field.element(uint64_t{1} << i));
    return Subspace(field, std::move(basis), shift);
  }

  const Field& field() const { return field_; }
  const std::vector<FieldElement>& basis() const { return basis_; }
  const FieldElement& shift() const { return shift_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  uint64_t size() const { return uint64_t{1} << basis_.size(); }

  FieldElement element(uint64_t index) const {
    DFRI_REQUIRE(index < size(), ErrorCode::kBadArgument, "enumeration index out of range");
    uint32_t acc = shift_.bits();
    for (size_t j = 0; j < basis_.size(); ++j) {
      if ((index >> j) & 1) acc ^= basis_[j].bits();
    }
    return field_.element(acc);
  }

  std::vector<FieldElement> elements() const {
    std::vector<FieldElement> out;
    out.reserve(size());
    for (uint64_t i = 0; i < size(); ++i) out.push_back(element(i));
    return out;
  }

  bool contains(const FieldElement& y) const {
    uint64_t idx;
    return solve_index(y, &idx);
  }

  uint64_t index_of(const FieldElement& y) const {
    uint64_t idx;
    DFRI_REQUIRE(solve_index(y, &idx), ErrorCode::kNotInImage, "element not in subspace");
    return idx;
  }

  bool operator==(const Subspace& o) const {
    if (field_ != o.field_ || !(shift_ == o.shift_) || basis_.size() != o.basis_.size())
      return false;
    for (size_t i = 0; i < basis_.size(); ++i)
      if (!(basis_[i] == o.basis_[i])) return false;
    return true;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  // Product of the nonzero elements of the linear part. All barycentric
  // weights of an affine domain equal the inverse of this value, because
  // {x_i - x_j : j != i} runs over the nonzero part of the span.
  FieldElement nonzero_span_product() const {
    DFRI_REQUIRE(dim() >= 1, ErrorCode::kEmptyDomain, "zero-dimensional span");
    uint32_t acc = 1;
    for (uint64_t i = 1; i < size(); ++i) {
      uint32_t v = 0;
      for (size_t j = 0; j < basis_.size(); ++j) {
        if ((i >> j) & 1) v ^= basis_[j].bits();
      }
      acc = field_.mul_raw(acc, v);
    }
    return field_.element(acc);
  }

 private:
  // Row reduction of the basis; reduced_[k] is a linear combination of the
  // original basis recorded in combo_[k], with a unique pivot bit each.
  void build_solver() {
    reduced_.clear();
    combo_.clear();
    pivots_.clear();
    for (size_t j = 0; j < basis_.size(); ++j) {
      uint32_t vec = basis_[j].bits();
      uint64_t combo = uint64_t{1} << j;
      for (size_t k = 0; k < reduced_.size(); ++k) {
        if ((vec >> pivots_[k]) & 1) {
          vec ^= reduced_[k];
          combo ^= combo_[k];
        }
      }
      DFRI_REQUIRE(vec != 0, ErrorCode::kBadArgument,
                   "basis vectors are linearly dependent");
      int pivot = detail::poly_degree(vec);
      // Keep earlier rows reduced against the new pivot.
      for (size_t k = 0; k < reduced_.size(); ++k) {
        if ((reduced_[k] >> pivot) & 1) {
          reduced_[k] ^= vec;
          combo_[k] ^= combo;
        }
      }
      reduced_.push_back(vec);
      combo_.push_back(combo);
      pivots_.push_back(pivot);
    }
  }

  bool solve_index(const FieldElement& y, uint64_t* index) const {
    DFRI_REQUIRE(y.field() == field_, ErrorCode::kFieldMismatch, "element field mismatch");
    uint32_t v = y.bits() ^ shift_.bits();
    uint64_t idx = 0;
    for (size_t k = 0; k < reduced_.size(); ++k) {
      if ((v >> pivots_[k]) & 1) {
        v ^= reduced_[k];
        idx ^= combo_[k];
      }
    }
    if (v != 0) return false;
    *index = idx;
    return true;
  }

  Field field_;
  std::vector<FieldElement> basis_;
  FieldElement shift_;
  std::vector<uint32_t> reduced_;
  std::vector<uint64_t> combo_;
  std::vector<int> pivots_;
};

// The degree-2 subspace polynomial q(X) = X*(X - a) = X^2 + a*X of a
// one-dimensional kernel {0, a}. F2-linear, two-to-one on any domain whose
// linear part contains the kernel.
class FoldMap {
 public:
  explicit FoldMap(FieldElement kernel_root) : kernel_root_(kernel_root) {
    DFRI_REQUIRE(!kernel_root.is_zero(), ErrorCode::kBadArgument, "kernel root must be nonzero");
  }

  const FieldElement& kernel_root() const { return kernel_root_; }

  FieldElement apply(const FieldElement& y) const { return y * y + kernel_root_ * y; }

  uint32_t apply_raw(uint32_t y) const {
    const Field& f = kernel_root_.field();
    return f.mul_raw(y, y) ^ f.mul_raw(kernel_root_.bits(), y);
  }

 private:
  FieldElement kernel_root_;
};

inline FoldMap subspace_polynomial(const Subspace& l0) {
  DFRI_REQUIRE(l0.dim() == 1, ErrorCode::kDimensionNotOne, "kernel subspace must have dim 1");
  DFRI_REQUIRE(l0.shift().is_zero(), ErrorCode::kDimensionNotOne,
               "kernel subspace must be linear (zero shift)");
  return FoldMap(l0.basis()[0]);
}

// Image of L under q. Basis of the image is the image of the remaining basis
// vectors, so domain chains are deterministic with no re-orthogonalization.
inline Subspace fold_domain(const Subspace& l, const FoldMap& q) {
  DFRI_REQUIRE(l.dim() >= 1, ErrorCode::kKernelNotInDomain, "cannot fold a point");
  DFRI_REQUIRE(l.basis()[0] == q.kernel_root(), ErrorCode::kKernelNotInDomain,
               "fold kernel must be span{basis[0]} of the domain");
  std::vector<FieldElement> image_basis;
  for (int j = 1; j < l.dim(); ++j) image_basis.push_back(q.apply(l.basis()[static_cast<size_t>(j)]));
  return Subspace(l.field(), std::move(image_basis), q.apply(l.shift()));
}

// The two roots {s0, s1} of q(X) - s inside L, in enumeration order;
// s1 = s0 + kernel_root.
inline std::pair<FieldElement, FieldElement> coset_pair(const Subspace& l, const FoldMap& q,
                                                        const FieldElement& s) {
  Subspace folded = fold_domain(l, q);
  uint64_t t;
  try {
    t = folded.index_of(s);
  } catch (const Error&) {
    throw Error(ErrorCode::kNotInImage, "point is not in the folded domain");
  }
  return {l.element(2 * t), l.element(2 * t + 1)};
}

}  // namespace deepfri

#endif  // DEEPFRI_SUBSPACE_HPP
