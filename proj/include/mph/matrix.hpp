#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mph/errors.hpp"
#include "mph/field.hpp"

namespace mph {

using Vec = std::vector<Scalar>;

// Dense matrix over the session field. Everything downstream is exact
// Gauss-Jordan elimination with deterministic pivoting (first nonzero in
// fixed basis order), so repeated runs produce identical bases.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const FieldSpec& f)
        : rows_(rows), cols_(cols), field_(f), a_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(std::size_t n, const FieldSpec& f) {
        Matrix m(n, n, f);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec col(std::size_t j) const {
        Vec v(rows_, Scalar::zero(field_));
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    void set_col(std::size_t j, const Vec& v) {
        check(v.size() == rows_, "set_col size mismatch");
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        check(cols_ == o.rows_, "matrix product shape mismatch");
        Matrix p(rows_, o.cols_, field_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Scalar& bkj = o.at(k, j);
                    if (!bkj.is_zero()) p.at(i, j) += aik * bkj;
                }
            }
        return p;
    }

    Vec apply(const Vec& v) const {
        check(v.size() == cols_, "matrix apply shape mismatch");
        Vec out(rows_, Scalar::zero(field_));
        for (std::size_t j = 0; j < cols_; ++j) {
            if (v[j].is_zero()) continue;
            for (std::size_t i = 0; i < rows_; ++i) {
                const Scalar& aij = at(i, j);
                if (!aij.is_zero()) out[i] += aij * v[j];
            }
        }
        return out;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    static Matrix hstack(const Matrix& a, const Matrix& b) {
        check(a.rows_ == b.rows_, "hstack row mismatch");
        Matrix m(a.rows_, a.cols_ + b.cols_, a.field_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
        }
        return m;
    }

    static Matrix vstack(const Matrix& a, const Matrix& b) {
        check(a.cols_ == b.cols_, "vstack col mismatch");
        Matrix m(a.rows_ + b.rows_, a.cols_, a.field_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
        return m;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols, const FieldSpec& f) {
        Matrix m(rows, cols.size(), f);
        for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
        return m;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += " ";
                s += at(i, j).str();
            }
            s += "]\n";
        }
        return s;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    FieldSpec field_;
    std::vector<Scalar> a_;
};

struct RowEchelon {
    Matrix rref;              // reduced row echelon form
    std::vector<int> pivots;  // pivot column per nonzero row
};

inline RowEchelon row_reduce(Matrix m) {
    std::vector<int> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
        Scalar inv = m.at(row, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Scalar factor = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= factor * m.at(row, j);
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

// canonical kernel basis: one column per free column of the RREF
inline Matrix kernel_basis(const Matrix& m) {
    RowEchelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Vec> cols;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(m.cols(), Scalar::zero(m.field()));
        v[f] = Scalar::one(m.field());
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            v[static_cast<std::size_t>(e.pivots[k])] = -e.rref.at(k, f);
        cols.push_back(std::move(v));
    }
    return Matrix::from_columns(m.cols(), cols, m.field());
}

// A subspace of K^n presented by a canonical (reduced column echelon) basis.
// Coordinates of a member vector are read off at the pivot rows.
class SpanBasis {
public:
    SpanBasis() = default;

    // span of the columns of m
    explicit SpanBasis(const Matrix& m) : n_(m.rows()), field_(m.field()) {
        RowEchelon e = row_reduce(m.transpose());
        std::vector<Vec> cols;
        for (std::size_t k = 0; k < e.pivots.size(); ++k) {
            Vec v(n_, Scalar::zero(field_));
            for (std::size_t j = 0; j < n_; ++j) v[j] = e.rref.at(k, j);
            cols.push_back(std::move(v));
            pivot_rows_.push_back(e.pivots[k]);
        }
        basis_ = Matrix::from_columns(n_, cols, field_);
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<int>& pivot_rows() const { return pivot_rows_; }

    // coordinates of v in the canonical basis; throws if v is not in the span
    Vec coords(const Vec& v) const {
        check(v.size() == n_, "coords: ambient dimension mismatch");
        Vec c(dim(), Scalar::zero(field_));
        for (std::size_t k = 0; k < dim(); ++k) c[k] = v[static_cast<std::size_t>(pivot_rows_[k])];
        Vec rec = basis_.apply(c);
        for (std::size_t i = 0; i < n_; ++i)
            check(rec[i] == v[i], "vector not in subspace span");
        return c;
    }

    bool contains(const Vec& v) const {
        if (v.size() != n_) return false;
        Vec c(dim(), Scalar::zero(field_));
        for (std::size_t k = 0; k < dim(); ++k) c[k] = v[static_cast<std::size_t>(pivot_rows_[k])];
        Vec rec = basis_.apply(c);
        for (std::size_t i = 0; i < n_; ++i)
            if (!(rec[i] == v[i])) return false;
        return true;
    }

private:
    std::size_t n_ = 0;
    FieldSpec field_;
    Matrix basis_;
    std::vector<int> pivot_rows_;
};

// The quotient K^n / span(columns of rel). Quotient coordinates live on the
// non-pivot coordinates of the relation echelon; representatives are unit
// vectors there.
class Quotient {
public:
    Quotient() = default;
    Quotient(std::size_t n, const Matrix& rel, const FieldSpec& f) : n_(n), field_(f) {
        check(rel.cols() == 0 || rel.rows() == n, "quotient relation shape mismatch");
        Matrix rt = rel.cols() == 0 ? Matrix(0, n, f) : rel.transpose();
        RowEchelon e = row_reduce(rt);
        ech_ = std::move(e.rref);
        pivots_ = std::move(e.pivots);
        std::vector<bool> is_pivot(n_, false);
        for (int p : pivots_) is_pivot[static_cast<std::size_t>(p)] = true;
        for (std::size_t i = 0; i < n_; ++i)
            if (!is_pivot[i]) free_.push_back(static_cast<int>(i));
    }

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return free_.size(); }
    std::size_t relation_rank() const { return pivots_.size(); }

    // image of v in quotient coordinates
    Vec reduce(const Vec& v) const {
        check(v.size() == n_, "quotient reduce dimension mismatch");
        Vec w = v;
        for (std::size_t k = 0; k < pivots_.size(); ++k) {
            Scalar c = w[static_cast<std::size_t>(pivots_[k])];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                const Scalar& ekj = ech_.at(k, j);
                if (!ekj.is_zero()) w[j] -= c * ekj;
            }
        }
        Vec out(dim(), Scalar::zero(field_));
        for (std::size_t k = 0; k < free_.size(); ++k) out[k] = w[static_cast<std::size_t>(free_[k])];
        return out;
    }

    // canonical lift of quotient basis vector j
    Vec rep(std::size_t j) const {
        Vec v(n_, Scalar::zero(field_));
        v[static_cast<std::size_t>(free_[j])] = Scalar::one(field_);
        return v;
    }

private:
    std::size_t n_ = 0;
    FieldSpec field_;
    Matrix ech_;
    std::vector<int> pivots_;
    std::vector<int> free_;
};

// Incrementally grown span with membership testing, for greedy basis picking.
class IncrementalSpan {
public:
    IncrementalSpan(std::size_t n, const FieldSpec& f) : n_(n), field_(f) {}

    std::size_t dim() const { return rows_.size(); }

    bool contains(Vec v) const { return reduce_inplace(v); }

    // returns true and extends if v was independent of the current span
    bool add(Vec v) {
        if (reduce_inplace(v)) return false;
        std::size_t p = 0;
        while (v[p].is_zero()) ++p;
        Scalar inv = v[p].inverse();
        for (auto& x : v) x *= inv;
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

private:
    // reduce v by stored rows; true iff it vanishes
    bool reduce_inplace(Vec& v) const {
        check(v.size() == n_, "span dimension mismatch");
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            Scalar c = v[pivots_[k]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                const Scalar& rkj = rows_[k][j];
                if (!rkj.is_zero()) v[j] -= c * rkj;
            }
        }
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    std::size_t n_;
    FieldSpec field_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace mph
