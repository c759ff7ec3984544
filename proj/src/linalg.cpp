#include "polarkit/linalg.hpp"

#include <utility>

namespace polarkit {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement{1};
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

void Matrix::append_row(std::span<const FieldElement> r) {
    if (r.size() != cols_) throw InvalidArgument("row length does not match matrix width");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix mul(const FiniteField& F, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix dimensions do not match");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const FieldElement x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
        }
    return c;
}

Vec vec_mat(const FiniteField& F, std::span<const FieldElement> v, const Matrix& a) {
    if (v.size() != a.rows()) throw InvalidArgument("vector length does not match matrix");
    Vec out(a.cols());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] = F.add(out[j], F.mul(v[k], a(k, j)));
    }
    return out;
}

FieldElement dot(const FiniteField& F, std::span<const FieldElement> u, std::span<const FieldElement> v) {
    if (u.size() != v.size()) throw InvalidArgument("vector lengths differ");
    FieldElement s = F.zero();
    for (std::size_t i = 0; i < u.size(); ++i) s = F.add(s, F.mul(u[i], v[i]));
    return s;
}

Vec add(const FiniteField& F, std::span<const FieldElement> u, std::span<const FieldElement> v) {
    if (u.size() != v.size()) throw InvalidArgument("vector lengths differ");
    Vec out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = F.add(u[i], v[i]);
    return out;
}

Vec scale(const FiniteField& F, FieldElement c, std::span<const FieldElement> v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.mul(c, v[i]);
    return out;
}

Vec frobenius(const FiniteField& F, std::span<const FieldElement> v, std::uint32_t k) {
    Vec out(v.begin(), v.end());
    if (k % F.f() == 0) return out;
    for (auto& x : out) x = F.frobenius(x, k);
    return out;
}

Matrix frobenius(const FiniteField& F, const Matrix& a, std::uint32_t k) {
    Matrix out = a;
    if (k % F.f() == 0) return out;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = F.frobenius(a(i, j), k);
    return out;
}

namespace {

// Row-reduces a and applies the same row operations to companion (if any).
std::vector<std::size_t> eliminate(const FiniteField& F, Matrix& a, Matrix* companion) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    auto swap_rows = [](Matrix& m, std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
    };
    auto axpy = [&F](Matrix& m, std::size_t dst, FieldElement c, std::size_t src) {
        for (std::size_t k = 0; k < m.cols(); ++k) m(dst, k) = F.sub(m(dst, k), F.mul(c, m(src, k)));
    };
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t piv = r;
        while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        swap_rows(a, r, piv);
        if (companion) swap_rows(*companion, r, piv);
        const FieldElement inv = F.inv(a(r, col));
        for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) = F.mul(inv, a(r, k));
        if (companion)
            for (std::size_t k = 0; k < companion->cols(); ++k) (*companion)(r, k) = F.mul(inv, (*companion)(r, k));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, col).is_zero()) continue;
            const FieldElement c = a(i, col);
            axpy(a, i, c, r);
            if (companion) axpy(*companion, i, c, r);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

Matrix first_rows(const Matrix& a, std::size_t n) {
    Matrix out(n, a.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    return out;
}

}  // namespace

std::vector<std::size_t> rref(const FiniteField& F, Matrix& a) {
    auto pivots = eliminate(F, a, nullptr);
    a = first_rows(a, pivots.size());
    return pivots;
}

std::size_t rank(const FiniteField& F, Matrix a) { return rref(F, a).size(); }

FieldElement det(const FiniteField& F, Matrix a) {
    if (a.rows() != a.cols()) throw InvalidArgument("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    FieldElement d = F.one();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) return F.zero();
        if (piv != col) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a(col, k), a(piv, k));
            d = F.neg(d);
        }
        d = F.mul(d, a(col, col));
        const FieldElement inv = F.inv(a(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col).is_zero()) continue;
            const FieldElement c = F.mul(a(i, col), inv);
            for (std::size_t k = col; k < n; ++k) a(i, k) = F.sub(a(i, k), F.mul(c, a(col, k)));
        }
    }
    return d;
}

std::optional<Matrix> inverse(const FiniteField& F, const Matrix& a) {
    if (a.rows() != a.cols()) throw InvalidArgument("inverse of a non-square matrix");
    Matrix work = a;
    Matrix inv = Matrix::identity(a.rows());
    auto pivots = eliminate(F, work, &inv);
    if (pivots.size() != a.rows()) return std::nullopt;
    return inv;
}

Matrix right_kernel(const FiniteField& F, const Matrix& a) {
    Matrix r = a;
    auto pivots = rref(F, r);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix ker(0, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vec v(n);
        v[free] = F.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(r(i, free));
        ker.append_row(v);
    }
    rref(F, ker);
    return ker;
}

RowSpaceSolver::RowSpaceSolver(FieldPtr field, const Matrix& rows) : field_(std::move(field)) {
    reduced_ = rows;
    transform_ = Matrix::identity(rows.rows());
    pivots_ = eliminate(*field_, reduced_, &transform_);
    if (pivots_.size() != rows.rows()) throw InvalidArgument("RowSpaceSolver needs independent rows");
}

std::optional<Vec> RowSpaceSolver::coords(std::span<const FieldElement> v) const {
    const auto& F = *field_;
    if (v.size() != reduced_.cols()) throw InvalidArgument("vector length does not match");
    // v = sum_i v[pivot_i] * reduced_row_i when v lies in the row space.
    Vec y(pivots_.size());
    Vec rest(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        y[i] = rest[pivots_[i]];
        if (y[i].is_zero()) continue;
        for (std::size_t k = 0; k < rest.size(); ++k) rest[k] = F.sub(rest[k], F.mul(y[i], reduced_(i, k)));
    }
    for (auto x : rest)
        if (!x.is_zero()) return std::nullopt;
    return vec_mat(F, y, transform_);
}

Subspace::Subspace(FieldPtr field, std::size_t ambient_dim)
    : field_(std::move(field)), ambient_(ambient_dim), basis_(0, ambient_dim) {}

Subspace Subspace::span(FieldPtr field, std::size_t ambient_dim, const std::vector<Vec>& vectors) {
    return from_matrix(field, Matrix::from_rows(vectors, ambient_dim));
}

Subspace Subspace::from_matrix(FieldPtr field, Matrix rows) {
    Subspace s(field, rows.cols());
    rref(*field, rows);
    s.basis_ = std::move(rows);
    return s;
}

Subspace Subspace::whole(FieldPtr field, std::size_t ambient_dim) {
    return from_matrix(field, Matrix::identity(ambient_dim));
}

bool Subspace::contains(std::span<const FieldElement> v) const {
    if (v.size() != ambient_) throw InvalidArgument("vector length does not match subspace");
    Matrix m = basis_;
    m.append_row(v);
    return rank(*field_, std::move(m)) == dim();
}

bool Subspace::contains(const Subspace& other) const { return sum(other).dim() == dim(); }

Subspace Subspace::sum(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw InvalidArgument("subspaces live in different spaces");
    Matrix m = basis_;
    for (std::size_t i = 0; i < other.dim(); ++i) m.append_row(other.basis_.row(i));
    return from_matrix(field_, std::move(m));
}

Subspace Subspace::intersect(const Subspace& other) const {
    // x in both  <=>  x annihilated by the kernels of both (standard dot product).
    Matrix ka = right_kernel(*field_, basis_.rows() ? basis_ : Matrix(0, ambient_));
    Matrix kb = right_kernel(*field_, other.basis_.rows() ? other.basis_ : Matrix(0, ambient_));
    Matrix both = ka;
    for (std::size_t i = 0; i < kb.rows(); ++i) both.append_row(kb.row(i));
    return from_matrix(field_, right_kernel(*field_, both));
}

}  // namespace polarkit
