#pragma once

// Dense matrices and subspaces over a FiniteField.  Vectors are rows; a matrix
// acts on the right (v -> v * A).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polarkit/gf.hpp"

namespace polarkit {

using Vec = std::vector<FieldElement>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    FieldElement& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    FieldElement operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<FieldElement> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const FieldElement> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }

    void append_row(std::span<const FieldElement> r);
    Matrix transpose() const;

    const std::vector<FieldElement>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> data_;
};

Matrix mul(const FiniteField& F, const Matrix& a, const Matrix& b);
Vec vec_mat(const FiniteField& F, std::span<const FieldElement> v, const Matrix& a);
FieldElement dot(const FiniteField& F, std::span<const FieldElement> u, std::span<const FieldElement> v);
Vec add(const FiniteField& F, std::span<const FieldElement> u, std::span<const FieldElement> v);
Vec scale(const FiniteField& F, FieldElement c, std::span<const FieldElement> v);
Vec frobenius(const FiniteField& F, std::span<const FieldElement> v, std::uint32_t k);
Matrix frobenius(const FiniteField& F, const Matrix& a, std::uint32_t k);

/// In-place reduced row echelon form; zero rows are dropped.  Returns pivot columns.
std::vector<std::size_t> rref(const FiniteField& F, Matrix& a);
std::size_t rank(const FiniteField& F, Matrix a);
FieldElement det(const FiniteField& F, Matrix a);
std::optional<Matrix> inverse(const FiniteField& F, const Matrix& a);
/// Basis (rows, in rref) of {x : a * x^T = 0}.
Matrix right_kernel(const FiniteField& F, const Matrix& a);

/// Coordinates of vectors with respect to the rows of a fixed full-rank matrix.
class RowSpaceSolver {
public:
    RowSpaceSolver(FieldPtr field, const Matrix& rows);
    /// x with x * rows = v, or nullopt if v is outside the row space.
    std::optional<Vec> coords(std::span<const FieldElement> v) const;

private:
    FieldPtr field_;
    Matrix reduced_;                  // rref of rows
    Matrix transform_;                // reduced_ = transform_ * rows
    std::vector<std::size_t> pivots_;
};

/// A linear subspace of GF(q)^d stored by its canonical rref basis.
class Subspace {
public:
    Subspace(FieldPtr field, std::size_t ambient_dim);  // the zero subspace
    static Subspace span(FieldPtr field, std::size_t ambient_dim, const std::vector<Vec>& vectors);
    static Subspace from_matrix(FieldPtr field, Matrix rows);
    static Subspace whole(FieldPtr field, std::size_t ambient_dim);

    const FieldPtr& field() const noexcept { return field_; }
    std::size_t ambient_dim() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Matrix& basis() const noexcept { return basis_; }

    bool contains(std::span<const FieldElement> v) const;
    bool contains(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

private:
    FieldPtr field_;
    std::size_t ambient_;
    Matrix basis_;
};

}  // namespace polarkit
