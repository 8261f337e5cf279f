#pragma once

// Recovery of exact cyclotomic scalars from complex approximations: an LLL
// lattice step proposes a candidate with bounded coefficient denominators,
// and every candidate is then verified exactly by the caller (typically by
// substituting into the polynomial whose root was sought).  The numeric side
// is a guide only; soundness comes from the exact verification.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "hopf/interval.hpp"

namespace hopf {

namespace lll {

using Row = std::vector<Int>;

inline Rat dot(const Row& a, const Row& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return Rat(s);
}

inline Rat dot(const std::vector<Rat>& a, const Row& b) {
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
    return s;
}

inline Int round_nearest(const Rat& r) {
    // floor(r + 1/2)
    Rat t = r + Rat(1, 2);
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
    return q;
}

struct GramSchmidt {
    std::vector<std::vector<Rat>> star;   // orthogonalized rows
    std::vector<std::vector<Rat>> mu;     // mu[i][j], j < i
    std::vector<Rat> norm2;               // |b*_i|^2

    explicit GramSchmidt(const std::vector<Row>& b) { recompute(b); }

    void recompute(const std::vector<Row>& b) {
        size_t n = b.size(), m = b[0].size();
        star.assign(n, std::vector<Rat>(m, Rat(0)));
        mu.assign(n, std::vector<Rat>(n, Rat(0)));
        norm2.assign(n, Rat(0));
        for (size_t i = 0; i < n; ++i) {
            for (size_t t = 0; t < m; ++t) star[i][t] = Rat(b[i][t]);
            for (size_t j = 0; j < i; ++j) {
                if (is_zero(norm2[j])) continue;
                Rat proj = dot(star[j], b[i]) / norm2[j];
                mu[i][j] = proj;
                for (size_t t = 0; t < m; ++t) star[i][t] -= proj * star[j][t];
            }
            for (size_t t = 0; t < m; ++t) norm2[i] += star[i][t] * star[i][t];
        }
    }
};

// In-place LLL reduction with delta = 3/4.  Dimensions here are tiny
// (phi(N) + 2), so the simple full-recompute variant is fine.
inline void reduce(std::vector<Row>& b) {
    const Rat delta(3, 4);
    GramSchmidt gs(b);
    size_t k = 1;
    size_t guard = 0;
    while (k < b.size()) {
        if (++guard > 100000) throw consistency_error("LLL failed to terminate");
        for (size_t j = k; j-- > 0;) {
            Int c = round_nearest(gs.mu[k][j]);
            if (c != 0) {
                for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= c * b[j][t];
                gs.recompute(b);
            }
        }
        Rat lhs = gs.norm2[k];
        Rat rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs.recompute(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
}

// Babai nearest-plane: lattice vector close to target, in combination space.
inline std::vector<Int> nearest_combination(const std::vector<Row>& b,
                                            const std::vector<Rat>& target) {
    GramSchmidt gs(b);
    std::vector<Rat> y = target;
    std::vector<Int> combo(b.size(), 0);
    for (size_t i = b.size(); i-- > 0;) {
        if (is_zero(gs.norm2[i])) continue;
        Rat c(0);
        for (size_t t = 0; t < y.size(); ++t) c += y[t] * gs.star[i][t];
        Int ci = round_nearest(c / gs.norm2[i]);
        combo[i] = ci;
        for (size_t t = 0; t < y.size(); ++t) y[t] -= Rat(ci) * Rat(b[i][t]);
    }
    return combo;
}

}  // namespace lll

// The unique element of Q(zeta_N) with coefficient denominators <= denom_bound
// whose embedding lies in z, when the interval is narrow enough to pin it
// down; nullopt otherwise (caller raises precision).  The candidate proposed
// by the lattice step is accepted only if its certified embedding lies in z.
inline std::optional<Cyc> reconstruct(const CInt& z, unsigned long n, const Int& denom_bound,
                                      mpfr_prec_t prec = 128) {
    n = normalize_conductor(n);
    unsigned long phi = euler_phi(n);
    Int d_scale = 1;
    for (Int q = 2; q <= denom_bound; ++q) d_scale = lcm(d_scale, q);

    // Rows: [ identity | W*Re(zeta^j) | W*Im(zeta^j) ], target [0 | W*D*z].
    Int w = Int(1) << static_cast<unsigned>(std::min<mpfr_prec_t>(prec, 512));
    std::vector<lll::Row> basis(phi, lll::Row(phi + 2, 0));
    for (unsigned long j = 0; j < phi; ++j) {
        CInt e = root_of_unity_interval(n, j, prec);
        auto [re, im] = e.mid();
        basis[j][j] = 1;
        basis[j][phi] = lll::round_nearest(Rat(w) * re);
        basis[j][phi + 1] = lll::round_nearest(Rat(w) * im);
    }
    auto [zre, zim] = z.mid();
    std::vector<Rat> target(phi + 2, Rat(0));
    target[phi] = Rat(w) * Rat(d_scale) * zre;
    target[phi + 1] = Rat(w) * Rat(d_scale) * zim;

    lll::reduce(basis);
    std::vector<Int> combo = lll::nearest_combination(basis, target);

    // The identity block of the chosen lattice vector carries the numerator
    // coordinates of d_scale * candidate.
    std::vector<Int> numer(phi, 0);
    for (size_t i = 0; i < basis.size(); ++i)
        for (unsigned long j = 0; j < phi; ++j) numer[j] += combo[i] * basis[i][j];

    Cyc candidate(0);
    for (unsigned long j = 0; j < phi; ++j) {
        if (numer[j] == 0) continue;
        Rat coeff(numer[j], d_scale);
        coeff.canonicalize();
        if (coeff.get_den() > denom_bound) return std::nullopt;
        candidate += Cyc(coeff) * Cyc::root_of_unity(n, static_cast<long>(j));
    }
    if (!z.contains(embed(candidate, z.re.precision()))) return std::nullopt;
    return candidate;
}

namespace detail {

// Midpoint complex arithmetic at fixed mpfr precision, for root finding.
class CM {
  public:
    explicit CM(mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(re_, prec);
        mpfr_init2(im_, prec);
        mpfr_set_zero(re_, 1);
        mpfr_set_zero(im_, 1);
    }
    CM(const CM& o) : CM(o.prec_) {
        mpfr_set(re_, o.re_, MPFR_RNDN);
        mpfr_set(im_, o.im_, MPFR_RNDN);
    }
    CM(CM&& o) noexcept : CM(o.prec_) {
        mpfr_swap(re_, o.re_);
        mpfr_swap(im_, o.im_);
    }
    CM& operator=(CM o) {
        std::swap(prec_, o.prec_);
        mpfr_swap(re_, o.re_);
        mpfr_swap(im_, o.im_);
        return *this;
    }
    ~CM() {
        mpfr_clear(re_);
        mpfr_clear(im_);
    }

    static CM from(const Rat& re, const Rat& im, mpfr_prec_t prec) {
        CM out(prec);
        mpfr_set_q(out.re_, re.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(out.im_, im.get_mpq_t(), MPFR_RNDN);
        return out;
    }
    static CM from(double re, double im, mpfr_prec_t prec) {
        CM out(prec);
        mpfr_set_d(out.re_, re, MPFR_RNDN);
        mpfr_set_d(out.im_, im, MPFR_RNDN);
        return out;
    }

    friend CM operator+(const CM& a, const CM& b) {
        CM out(a.prec_);
        mpfr_add(out.re_, a.re_, b.re_, MPFR_RNDN);
        mpfr_add(out.im_, a.im_, b.im_, MPFR_RNDN);
        return out;
    }
    friend CM operator-(const CM& a, const CM& b) {
        CM out(a.prec_);
        mpfr_sub(out.re_, a.re_, b.re_, MPFR_RNDN);
        mpfr_sub(out.im_, a.im_, b.im_, MPFR_RNDN);
        return out;
    }
    friend CM operator*(const CM& a, const CM& b) {
        CM out(a.prec_);
        mpfr_t t1, t2;
        mpfr_init2(t1, a.prec_);
        mpfr_init2(t2, a.prec_);
        mpfr_mul(t1, a.re_, b.re_, MPFR_RNDN);
        mpfr_mul(t2, a.im_, b.im_, MPFR_RNDN);
        mpfr_sub(out.re_, t1, t2, MPFR_RNDN);
        mpfr_mul(t1, a.re_, b.im_, MPFR_RNDN);
        mpfr_mul(t2, a.im_, b.re_, MPFR_RNDN);
        mpfr_add(out.im_, t1, t2, MPFR_RNDN);
        mpfr_clear(t1);
        mpfr_clear(t2);
        return out;
    }
    friend CM operator/(const CM& a, const CM& b) {
        CM out(a.prec_);
        mpfr_t den, t1, t2;
        mpfr_init2(den, a.prec_);
        mpfr_init2(t1, a.prec_);
        mpfr_init2(t2, a.prec_);
        mpfr_mul(t1, b.re_, b.re_, MPFR_RNDN);
        mpfr_mul(t2, b.im_, b.im_, MPFR_RNDN);
        mpfr_add(den, t1, t2, MPFR_RNDN);
        mpfr_mul(t1, a.re_, b.re_, MPFR_RNDN);
        mpfr_mul(t2, a.im_, b.im_, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        mpfr_div(out.re_, t1, den, MPFR_RNDN);
        mpfr_mul(t1, a.im_, b.re_, MPFR_RNDN);
        mpfr_mul(t2, a.re_, b.im_, MPFR_RNDN);
        mpfr_sub(t1, t1, t2, MPFR_RNDN);
        mpfr_div(out.im_, t1, den, MPFR_RNDN);
        mpfr_clear(den);
        mpfr_clear(t1);
        mpfr_clear(t2);
        return out;
    }

    double abs2_d() const {
        mpfr_t t1, t2;
        mpfr_init2(t1, prec_);
        mpfr_init2(t2, prec_);
        mpfr_mul(t1, re_, re_, MPFR_RNDN);
        mpfr_mul(t2, im_, im_, MPFR_RNDN);
        mpfr_add(t1, t1, t2, MPFR_RNDN);
        double v = mpfr_get_d(t1, MPFR_RNDN);
        mpfr_clear(t1);
        mpfr_clear(t2);
        return v;
    }

    Rat re_rat() const { return RInt::exact_rat(re_); }
    Rat im_rat() const { return RInt::exact_rat(im_); }

  private:
    mpfr_prec_t prec_;
    mpfr_t re_, im_;
};

}  // namespace detail

// All roots (numeric, midpoint precision prec) of a polynomial with
// cyclotomic coefficients, by Durand-Kerner iteration.
inline std::vector<detail::CM> numeric_roots(const std::vector<Cyc>& poly, mpfr_prec_t prec) {
    using detail::CM;
    size_t deg = poly.size() - 1;
    std::vector<CM> c;
    c.reserve(poly.size());
    Cyc lead_inv = poly.back().inverse();
    double max_abs = 0;
    for (const Cyc& a : poly) {
        CInt e = embed(a * lead_inv, prec);
        auto [re, im] = e.mid();
        c.push_back(CM::from(re, im, prec));
        max_abs = std::max(max_abs, std::abs(re.get_d()) + std::abs(im.get_d()));
    }
    double radius = 1.0 + max_abs;
    std::vector<CM> z;
    for (size_t i = 0; i < deg; ++i) {
        double ang = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(deg) + 0.31;
        z.push_back(CM::from(radius * std::cos(ang), radius * std::sin(ang), prec));
    }
    auto eval = [&](const CM& x) {
        CM acc = c[deg];
        for (size_t i = deg; i-- > 0;) acc = acc * x + c[i];
        return acc;
    };
    double tol = std::pow(2.0, -0.85 * static_cast<double>(prec));
    for (int iter = 0; iter < 800; ++iter) {
        double worst = 0;
        for (size_t i = 0; i < deg; ++i) {
            CM denom = CM::from(1.0, 0.0, prec);
            for (size_t j = 0; j < deg; ++j)
                if (j != i) denom = denom * (z[i] - z[j]);
            CM delta = eval(z[i]) / denom;
            z[i] = z[i] - delta;
            worst = std::max(worst, delta.abs2_d());
        }
        if (worst < tol * tol) break;
    }
    return z;
}

// Finds all roots of the polynomial inside Q(zeta_n) and certifies the full
// factorization exactly; nullopt if the polynomial does not split over the
// field at this conductor (the caller escalates).
inline std::optional<std::vector<Cyc>> roots_in_field(const std::vector<Cyc>& poly,
                                                      unsigned long n,
                                                      const Int& denom_bound,
                                                      mpfr_prec_t prec = 192) {
    if (poly.size() < 2) return std::vector<Cyc>{};
    Cyc lead_inv = poly.back().inverse();
    std::vector<Cyc> monic(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) monic[i] = poly[i] * lead_inv;

    auto numeric = numeric_roots(monic, prec);
    std::vector<Cyc> roots;
    for (const auto& zr : numeric) {
        CInt box(prec);
        box.re = RInt::from_rat(zr.re_rat(), prec).widened(prec / 2);
        box.im = RInt::from_rat(zr.im_rat(), prec).widened(prec / 2);
        std::optional<Cyc> cand = reconstruct(box, n, denom_bound, prec);
        if (!cand) return std::nullopt;
        // exact root check
        Cyc val(0), pw(1);
        for (const Cyc& coeff : monic) {
            val += coeff * pw;
            pw *= *cand;
        }
        if (!val.is_zero()) return std::nullopt;
        roots.push_back(*cand);
    }
    // Exact full-split certificate: the monic polynomial equals prod (x - r).
    std::vector<Cyc> prod{Cyc(1)};
    for (const Cyc& r : roots) {
        std::vector<Cyc> next(prod.size() + 1, Cyc(0));
        for (size_t i = 0; i < prod.size(); ++i) {
            next[i + 1] += prod[i];
            next[i] -= r * prod[i];
        }
        prod = std::move(next);
    }
    if (prod.size() != monic.size()) return std::nullopt;
    for (size_t i = 0; i < prod.size(); ++i)
        if (prod[i] != monic[i]) return std::nullopt;
    return roots;
}

}  // namespace hopf
