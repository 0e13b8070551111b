#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dgha/field.hpp"

namespace dgha {

struct RrefResult;

/* Dense exact matrix over QQ or F_p.
 *
 * Storage is row-major.  The public accessors speak mpq_class for both
 * fields (F_p entries are canonical residues); the elimination kernels
 * dispatch once on the field and run in native arithmetic.  Pivoting is
 * deterministic: the first nonzero entry in column order wins, so every
 * downstream basis choice is reproducible. */
class ExactMatrix {
public:
    ExactMatrix() : field_(FieldSpec::rationals()), rows_(0), cols_(0) {}

    ExactMatrix(FieldSpec field, int rows, int cols)
        : field_(field), rows_(rows), cols_(cols)
    {
        require(rows >= 0 && cols >= 0, "E_DIM", "negative matrix dimensions");
        if (field_.is_q())
            q_.assign(static_cast<size_t>(rows) * cols, mpq_class(0));
        else
            f_.assign(static_cast<size_t>(rows) * cols, 0);
    }

    static ExactMatrix zeros(FieldSpec field, int rows, int cols)
    {
        return ExactMatrix(field, rows, cols);
    }

    static ExactMatrix identity(FieldSpec field, int n)
    {
        ExactMatrix m(field, n, n);
        for (int i = 0; i < n; ++i)
            m.set(i, i, 1);
        return m;
    }

    FieldSpec field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    mpq_class get(int i, int j) const
    {
        check_index(i, j);
        if (field_.is_q())
            return q_[idx(i, j)];
        return mpq_class(static_cast<long>(f_[idx(i, j)]));
    }

    void set(int i, int j, const mpq_class& v)
    {
        check_index(i, j);
        if (field_.is_q()) {
            q_[idx(i, j)] = v;
            q_[idx(i, j)].canonicalize();
        } else {
            f_[idx(i, j)] = fp_from_mpq(v, field_.p);
        }
    }

    void set(int i, int j, long v) { set(i, j, mpq_class(v)); }

    bool entry_is_zero(int i, int j) const
    {
        check_index(i, j);
        return field_.is_q() ? q_[idx(i, j)] == 0 : f_[idx(i, j)] == 0;
    }

    bool is_zero() const
    {
        if (field_.is_q()) {
            for (const auto& x : q_)
                if (x != 0)
                    return false;
        } else {
            for (auto x : f_)
                if (x != 0)
                    return false;
        }
        return true;
    }

    bool operator==(const ExactMatrix& o) const
    {
        return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && q_ == o.q_ && f_ == o.f_;
    }
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    ExactMatrix operator+(const ExactMatrix& o) const
    {
        check_same_shape(o);
        ExactMatrix r(field_, rows_, cols_);
        if (field_.is_q()) {
            for (size_t k = 0; k < q_.size(); ++k)
                r.q_[k] = q_[k] + o.q_[k];
        } else {
            for (size_t k = 0; k < f_.size(); ++k)
                r.f_[k] = fp_add(f_[k], o.f_[k], field_.p);
        }
        return r;
    }

    ExactMatrix operator-(const ExactMatrix& o) const
    {
        check_same_shape(o);
        ExactMatrix r(field_, rows_, cols_);
        if (field_.is_q()) {
            for (size_t k = 0; k < q_.size(); ++k)
                r.q_[k] = q_[k] - o.q_[k];
        } else {
            for (size_t k = 0; k < f_.size(); ++k)
                r.f_[k] = fp_sub(f_[k], o.f_[k], field_.p);
        }
        return r;
    }

    ExactMatrix operator-() const
    {
        ExactMatrix r(field_, rows_, cols_);
        if (field_.is_q()) {
            for (size_t k = 0; k < q_.size(); ++k)
                r.q_[k] = -q_[k];
        } else {
            for (size_t k = 0; k < f_.size(); ++k)
                r.f_[k] = fp_neg(f_[k], field_.p);
        }
        return r;
    }

    ExactMatrix operator*(const ExactMatrix& o) const
    {
        require(field_ == o.field_, "E_FIELD", "field mismatch in product");
        require(cols_ == o.rows_, "E_DIM", "inner dimension mismatch in product");
        ExactMatrix r(field_, rows_, o.cols_);
        if (field_.is_q()) {
            mpq_class acc;
            for (int i = 0; i < rows_; ++i)
                for (int k = 0; k < cols_; ++k) {
                    const mpq_class& a = q_[idx(i, k)];
                    if (a == 0)
                        continue;
                    for (int j = 0; j < o.cols_; ++j) {
                        const mpq_class& b = o.q_[o.idx(k, j)];
                        if (b == 0)
                            continue;
                        r.q_[r.idx(i, j)] += a * b;
                    }
                }
        } else {
            std::int64_t p = field_.p;
            for (int i = 0; i < rows_; ++i)
                for (int k = 0; k < cols_; ++k) {
                    std::int64_t a = f_[idx(i, k)];
                    if (a == 0)
                        continue;
                    for (int j = 0; j < o.cols_; ++j) {
                        std::int64_t b = o.f_[o.idx(k, j)];
                        if (b == 0)
                            continue;
                        r.f_[r.idx(i, j)] = fp_add(r.f_[r.idx(i, j)], fp_mul(a, b, p), p);
                    }
                }
        }
        return r;
    }

    ExactMatrix scaled(const mpq_class& c) const
    {
        ExactMatrix r(field_, rows_, cols_);
        if (field_.is_q()) {
            for (size_t k = 0; k < q_.size(); ++k)
                r.q_[k] = q_[k] * c;
        } else {
            std::int64_t cf = fp_from_mpq(c, field_.p);
            for (size_t k = 0; k < f_.size(); ++k)
                r.f_[k] = fp_mul(f_[k], cf, field_.p);
        }
        return r;
    }

    ExactMatrix transpose() const
    {
        ExactMatrix r(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                if (field_.is_q())
                    r.q_[r.idx(j, i)] = q_[idx(i, j)];
                else
                    r.f_[r.idx(j, i)] = f_[idx(i, j)];
            }
        return r;
    }

    ExactMatrix hstack(const ExactMatrix& o) const
    {
        require(field_ == o.field_ && rows_ == o.rows_, "E_DIM", "hstack shape mismatch");
        ExactMatrix r(field_, rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j)
                r.assign_raw(i, j, *this, i, j);
            for (int j = 0; j < o.cols_; ++j)
                r.assign_raw(i, cols_ + j, o, i, j);
        }
        return r;
    }

    ExactMatrix vstack(const ExactMatrix& o) const
    {
        require(field_ == o.field_ && cols_ == o.cols_, "E_DIM", "vstack shape mismatch");
        ExactMatrix r(field_, rows_ + o.rows_, cols_);
        for (int j = 0; j < cols_; ++j) {
            for (int i = 0; i < rows_; ++i)
                r.assign_raw(i, j, *this, i, j);
            for (int i = 0; i < o.rows_; ++i)
                r.assign_raw(rows_ + i, j, o, i, j);
        }
        return r;
    }

    ExactMatrix columns(const std::vector<int>& which) const
    {
        ExactMatrix r(field_, rows_, static_cast<int>(which.size()));
        for (size_t j = 0; j < which.size(); ++j) {
            require(which[j] >= 0 && which[j] < cols_, "E_DIM", "column index out of range");
            for (int i = 0; i < rows_; ++i)
                r.assign_raw(i, static_cast<int>(j), *this, i, which[j]);
        }
        return r;
    }

    ExactMatrix column(int j) const { return columns({j}); }

    /* Reduced row-echelon form with pivot column indices.  rank = |pivots|. */
    RrefResult rref() const;

    int rank() const;

    /* Columns form a basis of the null space; cols = cols() - rank().
     * Free variables are taken in increasing column order, each basis vector
     * has a 1 in its free slot. */
    ExactMatrix kernel_basis() const;

    /* The pivot columns of this matrix: a deterministic basis of the image. */
    ExactMatrix image_basis() const;

    /* Solve m x = b for a single solution; free variables are set to zero.
     * Returns nullopt iff b is not in the image. */
    std::optional<ExactMatrix> solve(const ExactMatrix& b) const;

    friend class RrefSolver;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }

    void check_index(int i, int j) const
    {
        require(i >= 0 && i < rows_ && j >= 0 && j < cols_, "E_DIM", "matrix index out of range");
    }

    void check_same_shape(const ExactMatrix& o) const
    {
        require(field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_, "E_DIM",
                "shape mismatch");
    }

    void assign_raw(int i, int j, const ExactMatrix& src, int si, int sj)
    {
        if (field_.is_q())
            q_[idx(i, j)] = src.q_[src.idx(si, sj)];
        else
            f_[idx(i, j)] = src.f_[src.idx(si, sj)];
    }

    static void rref_in_place_q(ExactMatrix& m, std::vector<int>& pivots)
    {
        int lead = 0;
        for (int col = 0; col < m.cols_ && lead < m.rows_; ++col) {
            int piv = -1;
            for (int i = lead; i < m.rows_; ++i)
                if (m.q_[m.idx(i, col)] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                continue;
            if (piv != lead)
                for (int j = 0; j < m.cols_; ++j)
                    std::swap(m.q_[m.idx(piv, j)], m.q_[m.idx(lead, j)]);
            mpq_class inv = 1 / m.q_[m.idx(lead, col)];
            for (int j = col; j < m.cols_; ++j)
                m.q_[m.idx(lead, j)] *= inv;
            for (int i = 0; i < m.rows_; ++i) {
                if (i == lead)
                    continue;
                mpq_class c = m.q_[m.idx(i, col)];
                if (c == 0)
                    continue;
                for (int j = col; j < m.cols_; ++j)
                    m.q_[m.idx(i, j)] -= c * m.q_[m.idx(lead, j)];
            }
            pivots.push_back(col);
            ++lead;
        }
    }

    static void rref_in_place_f(ExactMatrix& m, std::vector<int>& pivots)
    {
        std::int64_t p = m.field_.p;
        int lead = 0;
        for (int col = 0; col < m.cols_ && lead < m.rows_; ++col) {
            int piv = -1;
            for (int i = lead; i < m.rows_; ++i)
                if (m.f_[m.idx(i, col)] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                continue;
            if (piv != lead)
                for (int j = 0; j < m.cols_; ++j)
                    std::swap(m.f_[m.idx(piv, j)], m.f_[m.idx(lead, j)]);
            std::int64_t inv = fp_inv(m.f_[m.idx(lead, col)], p);
            for (int j = col; j < m.cols_; ++j)
                m.f_[m.idx(lead, j)] = fp_mul(m.f_[m.idx(lead, j)], inv, p);
            for (int i = 0; i < m.rows_; ++i) {
                if (i == lead)
                    continue;
                std::int64_t c = m.f_[m.idx(i, col)];
                if (c == 0)
                    continue;
                for (int j = col; j < m.cols_; ++j)
                    m.f_[m.idx(i, j)] = fp_sub(m.f_[m.idx(i, j)], fp_mul(c, m.f_[m.idx(lead, j)], p), p);
            }
            pivots.push_back(col);
            ++lead;
        }
    }

    FieldSpec field_;
    int rows_, cols_;
    std::vector<mpq_class> q_;
    std::vector<std::int64_t> f_;
};

struct RrefResult {
    ExactMatrix mat;
    std::vector<int> pivots;
};

inline RrefResult ExactMatrix::rref() const
{
    RrefResult out{*this, {}};
    if (field_.is_q())
        rref_in_place_q(out.mat, out.pivots);
    else
        rref_in_place_f(out.mat, out.pivots);
    return out;
}

inline int ExactMatrix::rank() const { return static_cast<int>(rref().pivots.size()); }

inline ExactMatrix ExactMatrix::kernel_basis() const
{
    RrefResult r = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int pc : r.pivots)
        is_pivot[pc] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < cols_; ++j)
        if (!is_pivot[j])
            free_cols.push_back(j);
    ExactMatrix ker(field_, cols_, static_cast<int>(free_cols.size()));
    for (size_t v = 0; v < free_cols.size(); ++v) {
        int fc = free_cols[v];
        ker.set(fc, static_cast<int>(v), 1);
        for (size_t pi = 0; pi < r.pivots.size(); ++pi) {
            // row pi of rref: x_{pivot[pi]} + sum coeff * x_free = 0
            mpq_class c = r.mat.get(static_cast<int>(pi), fc);
            if (c != 0)
                ker.set(r.pivots[pi], static_cast<int>(v), -c);
        }
    }
    return ker;
}

inline ExactMatrix ExactMatrix::image_basis() const { return columns(rref().pivots); }

/* Factorized solver for repeated systems against one matrix.
 * Holds rref([A | I]) so each solve is a matrix-vector product plus
 * back-substitution read-off. */
class RrefSolver {
public:
    explicit RrefSolver(const ExactMatrix& a)
        : a_cols_(a.cols()), a_rows_(a.rows()), field_(a.field())
    {
        ExactMatrix aug = a.hstack(ExactMatrix::identity(a.field(), a.rows()));
        auto r = aug.rref();
        rref_ = std::move(r.mat);
        for (int pc : r.pivots) {
            if (pc < a_cols_)
                pivots_.push_back(pc);
        }
        // transform T with T*A = rref(A): right block of rref([A|I])
        std::vector<int> right;
        for (int j = 0; j < a_rows_; ++j)
            right.push_back(a_cols_ + j);
        t_ = rref_.columns(right);
    }

    int rank() const { return static_cast<int>(pivots_.size()); }
    const std::vector<int>& pivots() const { return pivots_; }

    /* One solution x of A x = b per column of b (free variables zero),
     * or nullopt if some column is outside the image. */
    std::optional<ExactMatrix> solve(const ExactMatrix& b) const
    {
        require(b.rows() == a_rows_, "E_DIM", "solve: rhs row mismatch");
        ExactMatrix y = t_ * b;  // y = T b; row i of T*A is e_{pivot_i} pattern
        ExactMatrix x(field_, a_cols_, b.cols());
        for (int c = 0; c < b.cols(); ++c) {
            for (int i = 0; i < a_rows_; ++i) {
                if (i < rank()) {
                    x.set(pivots_[static_cast<size_t>(i)], c, y.get(i, c));
                } else if (!y.entry_is_zero(i, c)) {
                    return std::nullopt;  // inconsistent row
                }
            }
        }
        // rows of rref(A) below rank are zero; rows within rank may involve
        // free columns, but free variables are zero so the read-off stands
        return x;
    }

private:
    int a_cols_, a_rows_;
    FieldSpec field_;
    ExactMatrix rref_;
    ExactMatrix t_;
    std::vector<int> pivots_;
};

inline std::optional<ExactMatrix> ExactMatrix::solve(const ExactMatrix& b) const
{
    require(b.rows() == rows_, "E_DIM", "solve: dimension mismatch");
    return RrefSolver(*this).solve(b);
}

/* Deterministic extension of a column space: returns the indices of columns
 * of `cand` that enlarge span(base) one by one, scanned left to right. */
inline std::vector<int> independent_columns_mod(const ExactMatrix& base, const ExactMatrix& cand)
{
    require(base.rows() == cand.rows(), "E_DIM", "row mismatch");
    std::vector<int> chosen;
    ExactMatrix cur = base;
    int cur_rank = base.rank();
    for (int j = 0; j < cand.cols(); ++j) {
        ExactMatrix trym = cur.hstack(cand.column(j));
        int r = trym.rank();
        if (r > cur_rank) {
            chosen.push_back(j);
            cur = std::move(trym);
            cur_rank = r;
        }
    }
    return chosen;
}

}  // namespace dgha
