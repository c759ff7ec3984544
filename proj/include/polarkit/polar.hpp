#pragma once

// Finite classical polar spaces with enumerated points.
//
// A point is stored by its canonical representative (first nonzero
// coordinate 1).  Points are sorted by the big-endian base-q code
// v_0 q^(d-1) + ... + v_(d-1), and every point set downstream is a list of
// indices into that order.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "polarkit/forms.hpp"

namespace polarkit {

struct PolarParameters {
    FormKind kind;
    std::size_t d;
    std::uint32_t q;
    std::size_t rank;
    std::uint64_t theta;       // ovoid number of rank r
    std::uint64_t theta_prev;  // same kind at rank r - 1
    std::uint64_t gaussian;    // (q^r - 1)/(q - 1)
    std::uint64_t num_points;  // gaussian * theta
    int epsilon2;
};

/// Closed-form parameters for the polar space of (kind, d, q).
PolarParameters polar_parameters(FormKind kind, std::size_t d, std::uint32_t q);

struct SpaceDescriptor {
    FormKind kind;
    std::size_t d;
    std::uint32_t q;
    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

struct BuildOptions {
    enum class Method { Auto, Scan, Algebraic };
    std::uint64_t point_cap = 2'000'000;
    bool allow_hyperbolic_3 = false;  // admit Q+(3,q)
    Method method = Method::Auto;
};

class PolarSpace;
using SpacePtr = std::shared_ptr<const PolarSpace>;

/// Scales v so that its first nonzero entry is 1; the zero vector is left alone.
void canonicalize(const FiniteField& F, std::span<FieldElement> v);
/// Big-endian base-q code of a vector.
std::uint64_t vector_code(std::uint32_t q, std::span<const FieldElement> v);

class PolarSpace {
public:
    /// Throws CapacityExceeded ("space too large") above the point cap and
    /// InvalidArgument for unsupported spaces.
    static SpacePtr build(Form form, const BuildOptions& opts = {});

    const Form& form() const noexcept { return form_; }
    const FieldPtr& field() const noexcept { return form_.field(); }
    FormKind kind() const noexcept { return form_.kind(); }
    std::size_t dim() const noexcept { return form_.dim(); }
    std::uint32_t q() const noexcept { return field()->q(); }
    const PolarParameters& parameters() const noexcept { return params_; }
    std::size_t rank() const noexcept { return params_.rank; }
    std::uint64_t theta() const noexcept { return params_.theta; }
    SpaceDescriptor descriptor() const noexcept { return {kind(), dim(), q()}; }

    std::size_t size() const noexcept { return codes_.size(); }
    std::span<const std::uint8_t> coords(std::uint32_t i) const noexcept {
        return {coords_.data() + std::size_t{i} * dim(), dim()};
    }
    Vec point(std::uint32_t i) const;
    std::uint64_t code(std::uint32_t i) const noexcept { return codes_[i]; }

    /// Index of the point spanned by v (any nonzero multiple), if it lies on the space.
    std::optional<std::uint32_t> index_of(std::span<const FieldElement> v) const;
    std::optional<std::uint32_t> index_of_code(std::uint64_t code) const noexcept;

    /// True iff the points are perpendicular; a point is collinear with itself.
    bool collinear(std::uint32_t i, std::uint32_t j) const;
    /// |P^perp intersected with the point set| for any point P.
    std::uint64_t h1_trivial() const noexcept;

    /// The maximal totally singular subspace found while computing the rank.
    const Subspace& maximal_subspace() const noexcept { return maximal_; }
    const std::vector<std::uint32_t>& maximal_subspace_points() const noexcept { return maximal_points_; }

    explicit PolarSpace(Form form);  // use build()

private:
    void enumerate_scan();
    void enumerate_algebraic();
    void finish_index();
    void compute_rank();

    Form form_;
    PolarParameters params_;
    std::vector<std::uint8_t> coords_;
    std::vector<std::uint64_t> codes_;
    std::vector<std::uint32_t> dense_;  // code -> index, when q^d is small
    Subspace maximal_;
    std::vector<std::uint32_t> maximal_points_;
};

class PointSet {
public:
    /// members must be strictly increasing valid indices.
    PointSet(SpacePtr space, std::vector<std::uint32_t> members);
    static PointSet from_unsorted(SpacePtr space, std::vector<std::uint32_t> members);
    static PointSet all(SpacePtr space);

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<std::uint32_t>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(std::uint32_t i) const noexcept;
    PointSet complement() const;
    PointSet intersect(const PointSet& other) const;

    friend bool operator==(const PointSet& a, const PointSet& b) {
        return a.space_ == b.space_ && a.members_ == b.members_;
    }

private:
    SpacePtr space_;
    std::vector<std::uint32_t> members_;
};

/// All points of the space lying in W^perp.
PointSet perp_residual(const SpacePtr& space, const Subspace& w);
/// Points of the space's standard maximal totally singular subspace.
PointSet maximal_ts_points(const SpacePtr& space);

/// For every point P of the space, |P^perp intersected with M|.
/// threads = 0 uses the hardware concurrency.
std::vector<std::uint32_t> perp_counts(const PointSet& m, unsigned threads = 0);

}  // namespace polarkit
