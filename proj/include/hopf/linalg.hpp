#pragma once

// Dense exact linear algebra over cyclotomic scalars, plus the echelonized
// Subspace type used for every sub-object computation.  Pivoting prefers
// rational entries with small numerators to keep coefficient growth down.

#include <optional>
#include <vector>

#include "hopf/cyclotomic.hpp"

namespace hopf {

using Vec = std::vector<Cyc>;

inline bool is_zero_vec(const Vec& v) {
    for (const Cyc& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec zero_vec(size_t n) { return Vec(n, Cyc(0)); }

inline Vec unit_vec(size_t n, size_t i) {
    Vec v = zero_vec(n);
    v[i] = Cyc(1);
    return v;
}

inline Vec& axpy(Vec& y, const Cyc& a, const Vec& x) {
    for (size_t i = 0; i < y.size(); ++i)
        if (!x[i].is_zero()) y[i] += a * x[i];
    return y;
}

inline Cyc dot(const Vec& a, const Vec& b) {
    Cyc s(0);
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    Vec out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    Vec out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
    return out;
}

inline Vec operator*(const Cyc& c, const Vec& v) {
    Vec out = v;
    for (Cyc& x : out) x = c * x;
    return out;
}

struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<Cyc> a;

    Mat() = default;
    Mat(size_t r, size_t c) : rows(r), cols(c), a(r * c, Cyc(0)) {}

    Cyc& at(size_t r, size_t c) { return a[r * cols + c]; }
    const Cyc& at(size_t r, size_t c) const { return a[r * cols + c]; }

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Cyc(1);
        return m;
    }
    static Mat from_rows(const std::vector<Vec>& rows_in) {
        if (rows_in.empty()) return Mat();
        Mat m(rows_in.size(), rows_in[0].size());
        for (size_t r = 0; r < rows_in.size(); ++r)
            for (size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows_in[r][c];
        return m;
    }

    Vec row(size_t r) const { return Vec(a.begin() + r * cols, a.begin() + (r + 1) * cols); }
    Vec col(size_t c) const {
        Vec v(rows);
        for (size_t r = 0; r < rows; ++r) v[r] = at(r, c);
        return v;
    }
    std::vector<Vec> row_list() const {
        std::vector<Vec> out;
        out.reserve(rows);
        for (size_t r = 0; r < rows; ++r) out.push_back(row(r));
        return out;
    }

    Mat transposed() const {
        Mat m(cols, rows);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) m.at(c, r) = at(r, c);
        return m;
    }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat out(x.rows, y.cols);
        for (size_t i = 0; i < x.rows; ++i)
            for (size_t k = 0; k < x.cols; ++k) {
                const Cyc& v = x.at(i, k);
                if (v.is_zero()) continue;
                for (size_t j = 0; j < y.cols; ++j)
                    if (!y.at(k, j).is_zero()) out.at(i, j) += v * y.at(k, j);
            }
        return out;
    }

    Vec apply(const Vec& v) const {
        Vec out = zero_vec(rows);
        for (size_t c = 0; c < cols; ++c) {
            if (v[c].is_zero()) continue;
            for (size_t r = 0; r < rows; ++r)
                if (!at(r, c).is_zero()) out[r] += at(r, c) * v[c];
        }
        return out;
    }

    // covector * matrix
    Vec apply_left(const Vec& f) const {
        Vec out = zero_vec(cols);
        for (size_t r = 0; r < rows; ++r) {
            if (f[r].is_zero()) continue;
            for (size_t c = 0; c < cols; ++c)
                if (!at(r, c).is_zero()) out[c] += f[r] * at(r, c);
        }
        return out;
    }
};

namespace detail {

// pivot preference: rational first, then small numerator/denominator sizes
inline size_t entry_weight(const Cyc& c) {
    size_t w = c.is_rational() ? 0 : 1u << 20;
    for (const Rat& r : c.coeffs())
        w += mpz_size(r.get_num().get_mpz_t()) + mpz_size(r.get_den().get_mpz_t());
    return w;
}

}  // namespace detail

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<size_t> rref(Mat& m) {
    std::vector<size_t> pivots;
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        size_t best = m.rows;
        size_t best_w = 0;
        for (size_t r = rank; r < m.rows; ++r) {
            if (m.at(r, col).is_zero()) continue;
            size_t w = detail::entry_weight(m.at(r, col));
            if (best == m.rows || w < best_w) {
                best = r;
                best_w = w;
            }
        }
        if (best == m.rows) continue;
        if (best != rank)
            for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(best, c));
        Cyc inv = m.at(rank, col).inverse();
        for (size_t c = col; c < m.cols; ++c)
            if (!m.at(rank, c).is_zero()) m.at(rank, c) = inv * m.at(rank, c);
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            Cyc f = m.at(r, col);
            for (size_t c = col; c < m.cols; ++c)
                if (!m.at(rank, c).is_zero()) m.at(r, c) -= f * m.at(rank, c);
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

inline size_t rank_of(Mat m) { return rref(m).size(); }

// Canonical nullspace basis: one vector per free column, unit in that column.
inline std::vector<Vec> nullspace(Mat m) {
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v = zero_vec(m.cols);
        v[free] = Cyc(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of A x = b (free variables set to zero), or nullopt.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    Mat aug(a.rows, a.cols + 1);
    for (size_t r = 0; r < a.rows; ++r) {
        for (size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
    Vec x = zero_vec(a.cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
    return x;
}

inline std::optional<Mat> inverse(const Mat& a) {
    if (a.rows != a.cols) return std::nullopt;
    Mat aug(a.rows, 2 * a.cols);
    for (size_t r = 0; r < a.rows; ++r) {
        for (size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols + r) = Cyc(1);
    }
    std::vector<size_t> pivots = rref(aug);
    if (pivots.size() != a.rows || pivots.back() != a.rows - 1) return std::nullopt;
    Mat inv(a.rows, a.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t c = 0; c < a.cols; ++c) inv.at(r, c) = aug.at(r, a.cols + c);
    return inv;
}

inline Cyc det(Mat m) {
    if (m.rows != m.cols) throw precondition_error("det: square matrix required");
    Cyc d(1);
    for (size_t col = 0; col < m.cols; ++col) {
        size_t sel = col;
        while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
        if (sel == m.rows) return Cyc(0);
        if (sel != col) {
            for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(col, c), m.at(sel, c));
            d = -d;
        }
        d *= m.at(col, col);
        Cyc inv = m.at(col, col).inverse();
        for (size_t r = col + 1; r < m.rows; ++r) {
            if (m.at(r, col).is_zero()) continue;
            Cyc f = inv * m.at(r, col);
            for (size_t c = col; c < m.cols; ++c)
                if (!m.at(col, c).is_zero()) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return d;
}

// An echelonized subspace of k^ambient.  The RREF basis makes membership,
// equality and lattice operations canonical.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : ambient_(ambient) {}

    static Subspace span(size_t ambient, const std::vector<Vec>& vectors) {
        Subspace s(ambient);
        if (vectors.empty()) return s;
        Mat m = Mat::from_rows(vectors);
        size_t r = rref(m).size();
        s.basis_.assign(m.row_list().begin(), m.row_list().begin() + r);
        return s;
    }
    static Subspace full(size_t ambient) {
        std::vector<Vec> rows;
        for (size_t i = 0; i < ambient; ++i) rows.push_back(unit_vec(ambient, i));
        return span(ambient, rows);
    }

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }

    // residual of v after reduction by the basis
    Vec reduce(Vec v) const {
        for (const Vec& row : basis_) {
            size_t p = pivot_of(row);
            if (!v[p].is_zero()) {
                Cyc f = v[p];
                for (size_t c = 0; c < ambient_; ++c)
                    if (!row[c].is_zero()) v[c] -= f * row[c];
            }
        }
        return v;
    }

    bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }
    bool contains(const Subspace& other) const {
        for (const Vec& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    // coordinates of v in the echelon basis, if v belongs to the subspace
    std::optional<Vec> coords_of(const Vec& v) const {
        Vec coeff(basis_.size(), Cyc(0));
        Vec res = v;
        for (size_t i = 0; i < basis_.size(); ++i) {
            size_t p = pivot_of(basis_[i]);
            if (!res[p].is_zero()) {
                coeff[i] = res[p];
                Cyc f = res[p];
                for (size_t c = 0; c < ambient_; ++c)
                    if (!basis_[i][c].is_zero()) res[c] -= f * basis_[i][c];
            }
        }
        if (!is_zero_vec(res)) return std::nullopt;
        return coeff;
    }

    friend bool operator==(const Subspace& x, const Subspace& y) {
        return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
    }
    friend bool operator!=(const Subspace& x, const Subspace& y) { return !(x == y); }

    friend Subspace operator+(const Subspace& x, const Subspace& y) {
        std::vector<Vec> rows = x.basis_;
        rows.insert(rows.end(), y.basis_.begin(), y.basis_.end());
        return span(x.ambient_, rows);
    }

    // Zassenhaus: rows [u | u] for u in X, [v | 0] for v in Y; after RREF the
    // rows with vanishing left half carry an intersection basis on the right.
    friend Subspace intersect(const Subspace& x, const Subspace& y) {
        size_t n = x.ambient_;
        std::vector<Vec> rows;
        for (const Vec& u : x.basis_) {
            Vec r = zero_vec(2 * n);
            for (size_t c = 0; c < n; ++c) r[c] = r[n + c] = u[c];
            rows.push_back(std::move(r));
        }
        for (const Vec& v : y.basis_) {
            Vec r = zero_vec(2 * n);
            for (size_t c = 0; c < n; ++c) r[c] = v[c];
            rows.push_back(std::move(r));
        }
        if (rows.empty()) return Subspace(n);
        Mat m = Mat::from_rows(rows);
        rref(m);
        std::vector<Vec> inter;
        for (size_t r = 0; r < m.rows; ++r) {
            bool left_zero = true;
            for (size_t c = 0; c < n && left_zero; ++c)
                if (!m.at(r, c).is_zero()) left_zero = false;
            if (!left_zero) continue;
            Vec right(m.a.begin() + r * 2 * n + n, m.a.begin() + (r + 1) * 2 * n);
            if (!is_zero_vec(right)) inter.push_back(std::move(right));
        }
        return span(n, inter);
    }

  private:
    size_t ambient_ = 0;
    std::vector<Vec> basis_;

    static size_t pivot_of(const Vec& row) {
        for (size_t c = 0; c < row.size(); ++c)
            if (!row[c].is_zero()) return c;
        throw consistency_error("zero row in subspace basis");
    }
};

// ---- sparse vectors ----

using SVec = std::vector<std::pair<int, Cyc>>;  // strictly ascending indices

inline Vec densify(const SVec& s, size_t n) {
    Vec v = zero_vec(n);
    for (const auto& [i, c] : s) v[static_cast<size_t>(i)] = c;
    return v;
}

inline SVec sparsify(const Vec& v) {
    SVec s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

// Reusable sparse accumulator: dense scratch plus a touched list, so that
// repeated sparse sums avoid sorting and allocation in hot loops.
class Accum {
  public:
    explicit Accum(size_t n = 0) { resize(n); }

    void resize(size_t n) {
        val_.assign(n, Cyc(0));
        used_.assign(n, false);
        touched_.clear();
    }

    void add(int i, const Cyc& c) {
        if (c.is_zero()) return;
        if (!used_[static_cast<size_t>(i)]) {
            used_[static_cast<size_t>(i)] = true;
            touched_.push_back(i);
            val_[static_cast<size_t>(i)] = c;
        } else {
            val_[static_cast<size_t>(i)] += c;
        }
    }

    void add_scaled(const SVec& s, const Cyc& f) {
        if (f.is_zero()) return;
        if (f.is_one()) {
            for (const auto& [i, c] : s) add(i, c);
        } else {
            for (const auto& [i, c] : s) add(i, f * c);
        }
    }

    // drains into a sorted sparse vector and resets
    SVec take() {
        std::sort(touched_.begin(), touched_.end());
        SVec out;
        out.reserve(touched_.size());
        for (int i : touched_) {
            if (!val_[static_cast<size_t>(i)].is_zero())
                out.emplace_back(i, std::move(val_[static_cast<size_t>(i)]));
            val_[static_cast<size_t>(i)] = Cyc(0);
            used_[static_cast<size_t>(i)] = false;
        }
        touched_.clear();
        return out;
    }

    bool empty_result() const {
        for (int i : touched_)
            if (!val_[static_cast<size_t>(i)].is_zero()) return false;
        return true;
    }

    // first touched index holding a nonzero value, or -1
    int first_nonzero() const {
        int best = -1;
        for (int i : touched_)
            if (!val_[static_cast<size_t>(i)].is_zero() && (best < 0 || i < best)) best = i;
        return best;
    }

    void reset() {
        for (int i : touched_) {
            val_[static_cast<size_t>(i)] = Cyc(0);
            used_[static_cast<size_t>(i)] = false;
        }
        touched_.clear();
    }

  private:
    std::vector<Cyc> val_;
    std::vector<bool> used_;
    std::vector<int> touched_;
};

}  // namespace hopf
