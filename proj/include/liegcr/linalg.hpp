#ifndef LIEGCR_LINALG_HPP
#define LIEGCR_LINALG_HPP

// Dense exact linear algebra over a FieldDescriptor: echelon forms, solving,
// the subspace lattice (canonical RREF bases), and flags.

#include <optional>
#include <utility>
#include <vector>

#include "field.hpp"

namespace liegcr {

class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldPtr& f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows * cols), FieldElement::zero(f)) {
        if (rows < 1 || cols < 1) throw FieldError("matrix dimensions must be >= 1");
    }

    static Matrix identity(const FieldPtr& f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(f);
        return m;
    }
    static Matrix from_rows(const FieldPtr& f, std::vector<std::vector<FieldElement>> rows) {
        Matrix m(f, static_cast<int>(rows.size()), static_cast<int>(rows.at(0).size()));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)].at(static_cast<std::size_t>(j));
        return m;
    }

    const FieldPtr& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    FieldElement& at(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
    const FieldElement& at(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

    bool is_zero() const {
        for (const auto& e : data_) if (!e.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }

    Matrix operator+(const Matrix& o) const {
        check_dims(o);
        Matrix m = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        check_dims(o);
        Matrix m = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
        return m;
    }
    Matrix operator-() const {
        Matrix m = *this;
        for (auto& e : m.data_) e = -e;
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw FieldError("matrix product dimension mismatch");
        Matrix m(field_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const FieldElement& a = at(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    m.at(i, j) = m.at(i, j) + a * o.at(k, j);
            }
        return m;
    }
    Matrix scale(const FieldElement& c) const {
        Matrix m = *this;
        for (auto& e : m.data_) e = e * c;
        return m;
    }
    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    FieldElement trace() const {
        if (!is_square()) throw FieldError("trace of non-square matrix");
        FieldElement t = FieldElement::zero(field_);
        for (int i = 0; i < rows_; ++i) t = t + at(i, i);
        return t;
    }
    Matrix transpose() const {
        Matrix m(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    // flatten row-major into a 1×(rows·cols) vector
    std::vector<FieldElement> flatten() const { return data_; }

    void check_dims(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw FieldError("matrix dimension mismatch");
    }

private:
    FieldPtr field_;
    int rows_ = 0, cols_ = 0;
    std::vector<FieldElement> data_;
};

inline Matrix bracket(const Matrix& a, const Matrix& b) { return a * b - b * a; }

struct RrefResult {
    Matrix mat;
    int rank = 0;
    std::vector<int> pivots;
};

inline RrefResult rref(Matrix m) {
    RrefResult out;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        FieldElement inv = m.at(r, c).inverse();
        for (int j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            FieldElement f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.mat = std::move(m);
    return out;
}

struct LinearSolution {
    std::vector<FieldElement> particular;
    std::vector<std::vector<FieldElement>> kernel;  // basis of the homogeneous space
};

// solve A x = b; nullopt when inconsistent
inline std::optional<LinearSolution> solve_linear(const Matrix& A,
                                                  const std::vector<FieldElement>& b) {
    if (static_cast<int>(b.size()) != A.rows()) throw FieldError("solve_linear: dimension mismatch");
    const FieldPtr& f = A.field();
    Matrix aug(f, A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = b[static_cast<std::size_t>(i)];
    }
    RrefResult rr = rref(aug);
    for (int p : rr.pivots)
        if (p == A.cols()) return std::nullopt;
    LinearSolution sol;
    sol.particular.assign(static_cast<std::size_t>(A.cols()), FieldElement::zero(f));
    std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols()), false);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        is_pivot[static_cast<std::size_t>(rr.pivots[i])] = true;
        sol.particular[static_cast<std::size_t>(rr.pivots[i])] =
            rr.mat.at(static_cast<int>(i), A.cols());
    }
    for (int c = 0; c < A.cols(); ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        std::vector<FieldElement> v(static_cast<std::size_t>(A.cols()), FieldElement::zero(f));
        v[static_cast<std::size_t>(c)] = FieldElement::one(f);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            v[static_cast<std::size_t>(rr.pivots[i])] = -rr.mat.at(static_cast<int>(i), c);
        sol.kernel.push_back(std::move(v));
    }
    return sol;
}

// RREF-canonical subspace of k^n (rows are basis vectors)
class Subspace {
public:
    Subspace() = default;
    Subspace(const FieldPtr& f, int ambient_dim)
        : field_(f), ambient_(ambient_dim) {}

    static Subspace span(const FieldPtr& f, int ambient_dim,
                         const std::vector<std::vector<FieldElement>>& vectors) {
        Subspace s(f, ambient_dim);
        if (vectors.empty()) return s;
        Matrix m(f, static_cast<int>(vectors.size()), ambient_dim);
        for (int i = 0; i < m.rows(); ++i) {
            if (static_cast<int>(vectors[static_cast<std::size_t>(i)].size()) != ambient_dim)
                throw FieldError("span: vector length mismatch");
            for (int j = 0; j < ambient_dim; ++j)
                m.at(i, j) = vectors[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        RrefResult rr = rref(std::move(m));
        for (int i = 0; i < rr.rank; ++i) {
            std::vector<FieldElement> row;
            row.reserve(static_cast<std::size_t>(ambient_dim));
            for (int j = 0; j < ambient_dim; ++j) row.push_back(rr.mat.at(i, j));
            s.basis_.push_back(std::move(row));
        }
        return s;
    }
    static Subspace full(const FieldPtr& f, int n) {
        std::vector<std::vector<FieldElement>> rows;
        for (int i = 0; i < n; ++i) {
            std::vector<FieldElement> r(static_cast<std::size_t>(n), FieldElement::zero(f));
            r[static_cast<std::size_t>(i)] = FieldElement::one(f);
            rows.push_back(std::move(r));
        }
        return span(f, n, rows);
    }

    const FieldPtr& field() const { return field_; }
    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<std::vector<FieldElement>>& basis() const { return basis_; }

    bool contains_vector(const std::vector<FieldElement>& v) const {
        // reduce v against the RREF basis
        std::vector<FieldElement> w = v;
        for (const auto& row : basis_) {
            int p = 0;
            while (row[static_cast<std::size_t>(p)].is_zero()) ++p;
            if (!w[static_cast<std::size_t>(p)].is_zero()) {
                FieldElement c = w[static_cast<std::size_t>(p)];
                for (int j = 0; j < ambient_; ++j)
                    w[static_cast<std::size_t>(j)] =
                        w[static_cast<std::size_t>(j)] - c * row[static_cast<std::size_t>(j)];
            }
        }
        for (const auto& x : w)
            if (!x.is_zero()) return false;
        return true;
    }
    bool contains(const Subspace& other) const {
        for (const auto& row : other.basis_)
            if (!contains_vector(row)) return false;
        return true;
    }
    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    int ambient_ = 0;
    std::vector<std::vector<FieldElement>> basis_;
};

inline Subspace subspace_sum(const Subspace& u, const Subspace& w) {
    if (u.ambient_dim() != w.ambient_dim()) throw FieldError("subspace sum: ambient mismatch");
    std::vector<std::vector<FieldElement>> rows = u.basis();
    rows.insert(rows.end(), w.basis().begin(), w.basis().end());
    return Subspace::span(u.field(), u.ambient_dim(), rows);
}

inline Subspace subspace_intersect(const Subspace& u, const Subspace& w) {
    if (u.ambient_dim() != w.ambient_dim()) throw FieldError("subspace intersect: ambient mismatch");
    const FieldPtr& f = u.field();
    int n = u.ambient_dim();
    if (u.dim() == 0 || w.dim() == 0) return Subspace(f, n);
    // Zassenhaus: row-reduce [U U; W 0]; rows with zero left half carry the
    // intersection in the right half.
    int ru = u.dim(), rw = w.dim();
    Matrix m(f, ru + rw, 2 * n);
    for (int i = 0; i < ru; ++i)
        for (int j = 0; j < n; ++j) {
            m.at(i, j) = u.basis()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            m.at(i, n + j) = m.at(i, j);
        }
    for (int i = 0; i < rw; ++i)
        for (int j = 0; j < n; ++j)
            m.at(ru + i, j) = w.basis()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    RrefResult rr = rref(std::move(m));
    std::vector<std::vector<FieldElement>> inter;
    for (int i = 0; i < rr.rank; ++i) {
        bool left_zero = true;
        for (int j = 0; j < n && left_zero; ++j)
            if (!rr.mat.at(i, j).is_zero()) left_zero = false;
        if (!left_zero) continue;
        std::vector<FieldElement> v;
        v.reserve(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) v.push_back(rr.mat.at(i, n + j));
        inter.push_back(std::move(v));
    }
    return Subspace::span(f, n, inter);
}

// all vectors of k^n over a finite field, in a fixed order
inline std::vector<std::vector<FieldElement>> enumerate_vectors(const FieldPtr& f, int n) {
    auto elems = enumerate_field(f);
    std::vector<std::vector<FieldElement>> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<FieldElement> v;
        v.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v.push_back(elems[idx[static_cast<std::size_t>(i)]]);
        out.push_back(std::move(v));
        int k = 0;
        while (k < n && ++idx[static_cast<std::size_t>(k)] == elems.size()) {
            idx[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == n) break;
    }
    return out;
}

// all d-dimensional subspaces of k^n (finite fields), canonical, no duplicates
inline std::vector<Subspace> enumerate_subspaces(const FieldPtr& f, int n, int d);

// all subspaces W of k^n (inside `ambient`, defaulting to k^n) with
// U ⊕ W = ambient; finite fields only
inline std::vector<Subspace> complement_enumerate(const Subspace& u,
                                                  const Subspace* ambient = nullptr) {
    const FieldPtr& f = u.field();
    if (!f->is_finite()) throw FieldError("complement_enumerate over infinite field");
    int n = u.ambient_dim();
    Subspace amb = ambient ? *ambient : Subspace::full(f, n);
    int d = amb.dim() - u.dim();
    std::vector<Subspace> out;
    for (const auto& w : enumerate_subspaces(f, n, d)) {
        if (!amb.contains(w)) continue;
        if (subspace_intersect(u, w).dim() == 0 && subspace_sum(u, w) == amb)
            out.push_back(w);
    }
    return out;
}

inline std::vector<Subspace> enumerate_subspaces(const FieldPtr& f, int n, int d) {
    if (d < 0 || d > n) return {};
    std::vector<Subspace> out;
    if (d == 0) {
        out.emplace_back(f, n);
        return out;
    }
    // enumerate RREF matrices directly: choose pivot columns, fill free
    // entries with all field values
    auto elems = enumerate_field(f);
    std::vector<int> piv(static_cast<std::size_t>(d));
    // iterate over all increasing pivot sequences
    for (int i = 0; i < d; ++i) piv[static_cast<std::size_t>(i)] = i;
    while (true) {
        // free positions: entry (i, j) with j > piv[i], j not a pivot column
        std::vector<std::pair<int, int>> free_pos;
        for (int i = 0; i < d; ++i)
            for (int j = piv[static_cast<std::size_t>(i)] + 1; j < n; ++j) {
                bool is_piv = false;
                for (int t = 0; t < d; ++t)
                    if (piv[static_cast<std::size_t>(t)] == j) is_piv = true;
                if (!is_piv) free_pos.emplace_back(i, j);
            }
        std::vector<std::size_t> idx(free_pos.size(), 0);
        while (true) {
            std::vector<std::vector<FieldElement>> rows(
                static_cast<std::size_t>(d),
                std::vector<FieldElement>(static_cast<std::size_t>(n), FieldElement::zero(f)));
            for (int i = 0; i < d; ++i)
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])] =
                    FieldElement::one(f);
            for (std::size_t t = 0; t < free_pos.size(); ++t)
                rows[static_cast<std::size_t>(free_pos[t].first)]
                    [static_cast<std::size_t>(free_pos[t].second)] = elems[idx[t]];
            out.push_back(Subspace::span(f, n, rows));
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == elems.size()) {
                idx[k] = 0;
                ++k;
            }
            if (k == idx.size()) break;
        }
        // next pivot combination
        int i = d - 1;
        while (i >= 0 && piv[static_cast<std::size_t>(i)] == n - d + i) --i;
        if (i < 0) break;
        ++piv[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            piv[static_cast<std::size_t>(j)] = piv[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

// strictly increasing chain 0 ⊊ V_1 ⊊ … ⊊ V_r ⊊ k^n (proper steps only)
class Flag {
public:
    Flag() = default;
    Flag(const FieldPtr& f, int n, std::vector<Subspace> steps)
        : field_(f), ambient_(n), steps_(std::move(steps)) {
        int prev = 0;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            const Subspace& s = steps_[i];
            if (s.ambient_dim() != n) throw FieldError("flag: ambient mismatch");
            if (s.dim() <= prev || s.dim() >= n)
                throw FieldError("flag: steps must be strictly increasing and proper");
            if (i > 0 && !s.contains(steps_[i - 1]))
                throw FieldError("flag: steps not nested");
            prev = s.dim();
        }
    }

    const FieldPtr& field() const { return field_; }
    int ambient_dim() const { return ambient_; }
    const std::vector<Subspace>& steps() const { return steps_; }
    bool is_trivial() const { return steps_.empty(); }
    bool is_complete() const { return static_cast<int>(steps_.size()) == ambient_ - 1; }
    std::vector<int> dims() const {
        std::vector<int> d;
        for (const auto& s : steps_) d.push_back(s.dim());
        return d;
    }
    bool operator==(const Flag& o) const {
        return ambient_ == o.ambient_ && steps_ == o.steps_;
    }
    bool operator!=(const Flag& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    int ambient_ = 0;
    std::vector<Subspace> steps_;
};

// a basis of k^n adapted to the flag: first dim(V_1) vectors span V_1, etc.
inline Matrix flag_adapted_basis(const Flag& fl) {
    const FieldPtr& f = fl.field();
    int n = fl.ambient_dim();
    std::vector<std::vector<FieldElement>> rows;
    Subspace prev(f, n);
    std::vector<Subspace> chain = fl.steps();
    chain.push_back(Subspace::full(f, n));
    for (const auto& step : chain) {
        // extend rows to a basis of `step`
        for (const auto& cand : step.basis()) {
            Subspace cur = Subspace::span(f, n, rows);
            if (cur.dim() == step.dim()) break;
            if (!cur.contains_vector(cand)) rows.push_back(cand);
        }
    }
    // columns of the frame are the basis vectors
    Matrix m(f, n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            m.at(i, j) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return m;
}

inline std::optional<Matrix> matrix_inverse(const Matrix& a) {
    if (!a.is_square()) throw FieldError("inverse of non-square matrix");
    int n = a.rows();
    const FieldPtr& f = a.field();
    Matrix aug(f, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = FieldElement::one(f);
    }
    RrefResult rr = rref(std::move(aug));
    if (rr.rank < n) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (rr.pivots[static_cast<std::size_t>(i)] != i) return std::nullopt;
    Matrix inv(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = rr.mat.at(i, n + j);
    return inv;
}

inline FieldElement determinant(Matrix m) {
    if (!m.is_square()) throw FieldError("determinant of non-square matrix");
    const FieldPtr& f = m.field();
    FieldElement det = FieldElement::one(f);
    int n = m.rows();
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!m.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) return FieldElement::zero(f);
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
            det = -det;
        }
        det = det * m.at(c, c);
        FieldElement inv = m.at(c, c).inverse();
        for (int i = c + 1; i < n; ++i) {
            if (m.at(i, c).is_zero()) continue;
            FieldElement fac = m.at(i, c) * inv;
            for (int j = c; j < n; ++j) m.at(i, j) = m.at(i, j) - fac * m.at(c, j);
        }
    }
    return det;
}

// span of a list of matrices inside the rows*cols coordinate space
inline Subspace matrix_span(const FieldPtr& f, int rows, int cols,
                            const std::vector<Matrix>& mats) {
    std::vector<std::vector<FieldElement>> vecs;
    for (const auto& m : mats) {
        if (m.rows() != rows || m.cols() != cols) throw FieldError("matrix_span: shape mismatch");
        vecs.push_back(m.flatten());
    }
    return Subspace::span(f, rows * cols, vecs);
}

inline Matrix unflatten(const FieldPtr& f, int rows, int cols,
                        const std::vector<FieldElement>& v) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = v[static_cast<std::size_t>(i * cols + j)];
    return m;
}

// matrices corresponding to the canonical basis of a span
inline std::vector<Matrix> span_basis_matrices(const Subspace& s, int rows, int cols) {
    std::vector<Matrix> out;
    for (const auto& v : s.basis()) out.push_back(unflatten(s.field(), rows, cols, v));
    return out;
}

// apply matrices in `action` to subspace u: span of { A v : A ∈ action, v ∈ u }
inline Subspace apply_to_subspace(const std::vector<Matrix>& action, const Subspace& u) {
    const FieldPtr& f = u.field();
    int n = u.ambient_dim();
    std::vector<std::vector<FieldElement>> vecs;
    for (const auto& a : action)
        for (const auto& v : u.basis()) {
            std::vector<FieldElement> w(static_cast<std::size_t>(n), FieldElement::zero(f));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    w[static_cast<std::size_t>(i)] =
                        w[static_cast<std::size_t>(i)] +
                        a.at(i, j) * v[static_cast<std::size_t>(j)];
            vecs.push_back(std::move(w));
        }
    return Subspace::span(f, n, vecs);
}

inline bool subspace_invariant(const std::vector<Matrix>& action, const Subspace& u) {
    return u.contains(apply_to_subspace(action, u));
}

}  // namespace liegcr

#endif  // LIEGCR_LINALG_HPP
