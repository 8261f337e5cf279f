#pragma once

// Finite-dimensional associative algebras as sparse structure tensors.
// HopfAlgebra layers coalgebra data on top; the Wedderburn machinery in
// irr.hpp works at this level so it can also decompose character rings and
// other subalgebras that are not Hopf.

#include <string>

#include "hopf/linalg.hpp"

namespace hopf {

struct MultTable {
    int n = 0;
    std::vector<SVec> rows;  // rows[i*n + j] = coordinates of b_i * b_j

    MultTable() = default;
    explicit MultTable(int dim) : n(dim), rows(static_cast<size_t>(dim) * dim) {}

    const SVec& row(int i, int j) const { return rows[static_cast<size_t>(i) * n + j]; }
    SVec& row(int i, int j) { return rows[static_cast<size_t>(i) * n + j]; }
};

struct FiniteAlgebra {
    MultTable mult;
    Vec unit;

    int dim() const { return mult.n; }

    Vec mul(const Vec& x, const Vec& y) const {
        Accum acc(static_cast<size_t>(dim()));
        for (int i = 0; i < dim(); ++i) {
            if (x[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (y[static_cast<size_t>(j)].is_zero()) continue;
                acc.add_scaled(mult.row(i, j), x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)]);
            }
        }
        return densify(acc.take(), static_cast<size_t>(dim()));
    }

    Mat left_mult(const Vec& x) const {
        int n = dim();
        Mat m(static_cast<size_t>(n), static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            if (x[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < n; ++j)
                for (const auto& [k, c] : mult.row(i, j))
                    m.at(static_cast<size_t>(k), static_cast<size_t>(j)) +=
                        x[static_cast<size_t>(i)] * c;
        }
        return m;
    }

    Mat right_mult(const Vec& x) const {
        int n = dim();
        Mat m(static_cast<size_t>(n), static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            if (x[static_cast<size_t>(j)].is_zero()) continue;
            for (int i = 0; i < n; ++i)
                for (const auto& [k, c] : mult.row(i, j))
                    m.at(static_cast<size_t>(k), static_cast<size_t>(i)) +=
                        x[static_cast<size_t>(j)] * c;
        }
        return m;
    }

    // trace of left multiplication by x in the regular representation
    Cyc trace_reg(const Vec& x) const {
        Cyc t(0);
        for (int i = 0; i < dim(); ++i) {
            if (x[static_cast<size_t>(i)].is_zero()) continue;
            for (int j = 0; j < dim(); ++j)
                for (const auto& [k, c] : mult.row(i, j))
                    if (k == j) t += x[static_cast<size_t>(i)] * c;
        }
        return t;
    }

    bool is_commutative() const {
        for (int i = 0; i < dim(); ++i)
            for (int j = i + 1; j < dim(); ++j)
                if (mult.row(i, j) != mult.row(j, i)) return false;
        return true;
    }

    Vec power(const Vec& x, unsigned e) const {
        Vec acc = unit, base = x;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            if (e >>= 1) base = mul(base, base);
        }
        return acc;
    }

    // The multiplication restricted to a subspace, in the subspace basis.
    // Throws if the subspace is not multiplicatively closed or misses 1.
    FiniteAlgebra restricted_to(const Subspace& w) const {
        FiniteAlgebra sub;
        int r = static_cast<int>(w.dim());
        sub.mult = MultTable(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                Vec prod = mul(w.basis()[static_cast<size_t>(i)], w.basis()[static_cast<size_t>(j)]);
                auto coords = w.coords_of(prod);
                if (!coords) throw precondition_error("restricted_to: subspace not closed under multiplication");
                sub.mult.row(i, j) = sparsify(*coords);
            }
        auto uc = w.coords_of(unit);
        if (!uc) throw precondition_error("restricted_to: subspace does not contain the unit");
        sub.unit = *uc;
        return sub;
    }
};

}  // namespace hopf
