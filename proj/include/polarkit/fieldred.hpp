#pragma once

// Field reduction: a form k' on GF(q^b)^n viewed as a form on GF(q)^(nb).
//
// Coordinates are flattened through the basis {1, g, ..., g^(b-1)} of
// GF(q^b) over GF(q), g the generator of GF(q^b): the large coordinate
// x_j = sum_k c_(j,k) g^k becomes small coordinates (j*b + k) -> c_(j,k).
//
// Rows of the reduction table:
//    1  W   -> W         Tr k'
//    2  Q+  -> Q+        Tr k'
//    3  Q-  -> Q-        Tr k'
//    4  Q   -> Q         Tr k'              (dq odd)
//    5  H   -> H         Tr k'              (d odd)
//    6  H   -> H         Tr k'              (d/b even, b odd)
//    7  H   -> W         Tr(alpha k')       (d/b odd, b even)
//    8  H   -> W         Tr(alpha k')       (d/b even, b even)
//    9  H   -> Q-        Q(v) = Tr_{q^(b/2)/q} k'(v,v)   (d/b odd, b even)
//   10  H   -> Q+        Q(v) = Tr_{q^(b/2)/q} k'(v,v)   (d/b even, b even)

#include <cstdint>
#include <memory>

#include "polarkit/group.hpp"

namespace polarkit {

class FieldReduction {
public:
    int row() const noexcept { return row_; }
    std::uint32_t b() const noexcept { return b_; }
    /// Scalar used by rows 7 and 8; one otherwise.
    FieldElement alpha() const noexcept { return alpha_; }
    const SubfieldEmbedding& embedding() const noexcept { return *emb_; }
    const SpacePtr& small_space() const noexcept { return small_; }
    const SpacePtr& large_space() const noexcept { return large_; }

    /// GF(q^b)^n -> GF(q)^(nb)
    Vec flatten(std::span<const FieldElement> large_vec) const;
    /// GF(q)^(nb) -> GF(q^b)^n
    Vec unflatten(std::span<const FieldElement> small_vec) const;
    /// The GF(q)-matrix of a GF(q^b)-linear map (sigma power 0 only).
    Semisimilarity flatten(const Semisimilarity& g) const;

    /// Expected point counts of both spaces from the reduction table.
    std::uint64_t expected_large_points() const;
    std::uint64_t expected_small_points() const;

    // use reduce()
    FieldReduction(int row, std::uint32_t b, FieldElement alpha, const SubfieldEmbedding* emb);

private:
    friend std::shared_ptr<const FieldReduction> reduce(int, const Form&, FieldPtr, const BuildOptions&);

    int row_;
    std::uint32_t b_;
    FieldElement alpha_;
    const SubfieldEmbedding* emb_;
    SpacePtr small_, large_;
    std::vector<std::uint32_t> coeffs_;  // large code -> b small codes
    std::vector<FieldElement> basis_;    // g^k in the large field
};

using ReductionPtr = std::shared_ptr<const FieldReduction>;

/// Reduces the large form (over GF(q^b)) to the small field according to the
/// table row.  Throws InvalidArgument when the row's condition fails.
ReductionPtr reduce(int row, const Form& large_form, FieldPtr small_field, const BuildOptions& opts = {});

/// Small form of a reduction without building any polar space.
Form reduced_form(int row, const Form& large_form, FieldPtr small_field);

/// Points of the small space lying on singular points of the large space.
PointSet blow_up(const FieldReduction& fr);
/// Every GF(q)-point on the GF(q^b)-points of o.
PointSet push_down(const FieldReduction& fr, const PointSet& o);
/// The GF(q^b)-points carrying the points of o; o must be a union of full
/// GF(q^b)* scalar classes lying on singular points of the large space.
PointSet lift_up(const FieldReduction& fr, const PointSet& o);

}  // namespace polarkit
