#pragma once

// Explicit group constructions with two orbits on a polar space.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "polarkit/fieldred.hpp"

namespace polarkit {

/// A quotient U / (U cap U^perp) of an ambient space carrying a possibly
/// degenerate quadratic form.  V is represented by a fixed complement of the
/// radical inside U; projection is along the radical.
class QuotientSection {
public:
    /// ambient_coeffs: upper-triangular coefficients of Q on the ambient space.
    /// u_basis: rows spanning U.  Throws Error if Q does not vanish on the radical.
    QuotientSection(FieldPtr field, Matrix ambient_coeffs, const Matrix& u_basis);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return lifts_.rows(); }
    /// Lifts of the basis of V, as ambient vectors.
    const Matrix& lifts() const noexcept { return lifts_; }
    const Matrix& radical() const noexcept { return radical_; }

    FieldElement ambient_q(std::span<const FieldElement> v) const;
    FieldElement ambient_b(std::span<const FieldElement> u, std::span<const FieldElement> v) const;

    /// Coordinates of the image in V of u; throws InvalidArgument when u is not in U.
    Vec project(std::span<const FieldElement> u) const;
    /// Upper-triangular coefficients of the induced form on V.
    Matrix induced_coefficients() const;
    /// The matrix on V of an ambient linear map preserving U.
    Matrix induced_action(const Matrix& ambient_map) const;

private:
    FieldPtr field_;
    Matrix coeffs_;
    Matrix lifts_, radical_;
    std::optional<RowSpaceSolver> solver_;
};

/// A group acting on a polar space with its point orbits.
struct TwoOrbitConstruction {
    SpacePtr space;
    GeneratorSet generators;
    OrbitPartition orbits;
};

/// SL_3(q) on trace-zero 3x3 matrices modulo scalars.
struct AdjointModel {
    FieldPtr field;
    /// Ambient coordinates: A_ij at index 3i + j.
    QuotientSection section;
    Form form;
    std::vector<Matrix> sl3_generators;  // 3x3
    GeneratorSet generators;             // induced on V
};

/// Q(A) = sum_{i<j} (A_ij A_ji - A_ii A_jj) on 3x3 matrices (length-9 vectors).
FieldElement adjoint_q(const FiniteField& F, std::span<const FieldElement> a);

/// Throws InvalidArgument unless p = 3, CapacityExceeded for q > 9.
AdjointModel adjoint_model(std::uint32_t q);
TwoOrbitConstruction adjoint_sl3(std::uint32_t q, const OrbitOptions& opts = {});

/// Sp_6(q) on the section h^perp / <h> of the exterior square.
struct ExtSquareModel {
    FieldPtr field;
    Form natural;  // the symplectic form on GF(q)^6
    /// Index of e_i ^ e_j (i < j) in the 15 wedge coordinates.
    static std::size_t wedge_index(std::size_t i, std::size_t j);
    Matrix beta1;  // Gram matrix on the exterior square
    Vec h;         // the invariant bivector
    QuotientSection section;
    Form form;
    GeneratorSet sp6_generators;
    GeneratorSet generators;  // induced on V
};

/// u ^ v in wedge coordinates.
Vec wedge(const FiniteField& F, std::span<const FieldElement> u, std::span<const FieldElement> v);
/// Matrix of g on the exterior square.
Matrix wedge_square(const FiniteField& F, const Matrix& g);

/// Throws InvalidArgument unless p = 3, CapacityExceeded for q > 3.
ExtSquareModel extsq_model(std::uint32_t q);
TwoOrbitConstruction extsq_sp6(std::uint32_t q, const OrbitOptions& opts = {});

/// Points grouped by the number of nonzero coordinates with respect to the
/// orthogonal decomposition <e_1> + ... + <e_t> of a diagonal form.
struct DlengthPartition {
    SpacePtr space;
    std::vector<std::size_t> lengths;  // ascending
    std::vector<PointSet> classes;     // aligned with lengths

    /// Throws InvalidArgument for a length that does not occur.
    const PointSet& of_length(std::size_t length) const;
};

std::size_t d_length(std::span<const std::uint8_t> coords);

/// Hermitian: identity form over a square q.  Orthogonal kinds: sum x_i^2 over odd
/// q, which must have the requested kind.
DlengthPartition dlength_partition(FormKind kind, std::uint32_t q, std::size_t t, const BuildOptions& opts = {});

/// Subgroup of the monomial group of sum x_i^2 generated by all sign changes
/// and one or two coordinate permutations.
struct MonomialSplit {
    std::vector<std::vector<std::size_t>> permutations;
    GeneratorSet generators;
    OrbitPartition orbits;
};

/// Sign changes and single permutations first, then pairs, in lexicographic
/// order; returns the first group whose orbit partition is accepted.  The space
/// must carry a diagonal form with equal coefficients and dim <= 6.
std::optional<MonomialSplit> find_monomial_split(const SpacePtr& space,
                                                 const std::function<bool(const OrbitPartition&)>& accept);

/// SL_2(9) has two classes of SL_2(5).  Under the row-1 reduction to W(3,3)
/// the two vector orbits of one class become 5-tight sets, those of the other
/// become 2-ovoids.
enum class Sl25Class { TightSets, Ovoids };

/// Two matrices in SL_2(9), orders 4 and 5, whose group has two orbits of 40
/// on the nonzero vectors and lies in the requested class; the first such pair
/// in lexicographic order.
GeneratorSet sl2_5_in_sl2_9(Sl25Class cls = Sl25Class::TightSets);

}  // namespace polarkit
