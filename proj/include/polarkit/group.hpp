#pragma once

// Semisimilarities and the orbit engine.
//
// A semisimilarity g = (A, k) acts on row vectors by v.g = (v^s) A, where s is
// the Frobenius map x -> x^(p^k) applied entrywise.  Composition (first g then
// h) is (A, s)(B, t) = (A^t B, s t).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarkit/polar.hpp"

namespace polarkit {

class Semisimilarity {
public:
    Semisimilarity(FieldPtr field, Matrix matrix, std::uint32_t sigma_power = 0);

    const FieldPtr& field() const noexcept { return field_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    std::uint32_t sigma_power() const noexcept { return sigma_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

    Vec apply(std::span<const FieldElement> v) const;
    /// this, then other.
    Semisimilarity then(const Semisimilarity& other) const;
    Semisimilarity inverse() const;

    friend bool operator==(const Semisimilarity& a, const Semisimilarity& b) {
        return a.sigma_ == b.sigma_ && a.matrix_ == b.matrix_;
    }

private:
    FieldPtr field_;
    Matrix matrix_;
    std::uint32_t sigma_;
};

/// The multiplier lambda with k(ug, vg) = lambda k(u,v)^s (Q(vg) = lambda Q(v)^s
/// for quadratic forms), checked on all pairs of basis vectors; nullopt if g
/// does not preserve the form up to a scalar.
std::optional<FieldElement> multiplier(const Form& form, const Semisimilarity& g, std::string* why = nullptr);

struct GeneratorSet {
    std::vector<Semisimilarity> elements;
    std::string label;

    /// Elements followed by the inverses that are not already present.
    GeneratorSet with_inverses() const;
};

/// Throws FormInvarianceError naming the first generator that fails.
void validate_generators(const Form& form, const GeneratorSet& gens);

struct OrbitOptions {
    unsigned threads = 0;  // 0: hardware concurrency
};

struct OrbitPartition {
    SpacePtr space;
    /// orbit_id[i] is the smallest point index in the orbit of point i.
    std::vector<std::uint32_t> orbit_id;
    /// Orbit representatives (smallest index), ascending.
    std::vector<std::uint32_t> representatives;
    std::vector<std::uint64_t> orbit_sizes;  // aligned with representatives

    std::size_t num_orbits() const noexcept { return representatives.size(); }
    PointSet orbit(std::size_t k) const;
    /// Sizes sorted ascending.
    std::vector<std::uint64_t> sorted_sizes() const;
};

/// Permutation of the points induced by g.
std::vector<std::uint32_t> point_permutation(const PolarSpace& space, const Semisimilarity& g, unsigned threads = 0);

OrbitPartition orbits(const SpacePtr& space, const GeneratorSet& gens, const OrbitOptions& opts = {});

inline constexpr std::uint64_t kVectorOrbitCap = 2'000'000;

/// Orbit sizes (ascending) on the nonzero vectors of the form's space.
std::vector<std::uint64_t> vector_orbits(const Form& form, const GeneratorSet& gens,
                                         std::uint64_t cap = kVectorOrbitCap);

enum class GroupFamily { Sp, SU, OmegaPlus, OmegaMinus, Omega, GO1WrSym, GU1WrSym };

std::string_view family_name(GroupFamily f) noexcept;
std::optional<GroupFamily> parse_family(std::string_view s) noexcept;

struct ClassicalGroup {
    Form form;
    GeneratorSet generators;
};

/// Generators for a classical group together with the form it preserves.
/// Sp, SU and the Omega families use the standard forms; GO1WrSym uses
/// sum x_i^2 (odd q) and GU1WrSym the identity Hermitian form.
ClassicalGroup classical_generators(GroupFamily family, std::size_t d, FieldPtr field);

}  // namespace polarkit
