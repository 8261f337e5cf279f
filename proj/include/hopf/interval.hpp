#pragma once

// Certified complex interval arithmetic on top of MPFR directed rounding.
// Used for the numeric side channel only: embedding cyclotomic scalars,
// locating polynomial roots, and sign certification of exact quantities.
// No interval result is ever a source of truth; exact verification follows
// every reconstruction.

#include <mpfr.h>

#include <string>
#include <utility>

#include "hopf/cyclotomic.hpp"

namespace hopf {

class RInt {
  public:
    explicit RInt(mpfr_prec_t prec = 128) : prec_(prec) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    RInt(const RInt& o) : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    RInt(RInt&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(lo_, prec_);
        mpfr_init2(hi_, prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
    }
    RInt& operator=(RInt o) {
        std::swap(prec_, o.prec_);
        mpfr_swap(lo_, o.lo_);
        mpfr_swap(hi_, o.hi_);
        return *this;
    }
    ~RInt() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    mpfr_prec_t precision() const { return prec_; }

    static RInt from_rat(const Rat& r, mpfr_prec_t prec) {
        RInt out(prec);
        mpfr_set_q(out.lo_, r.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(out.hi_, r.get_mpq_t(), MPFR_RNDU);
        return out;
    }

    static RInt pi(mpfr_prec_t prec) {
        RInt out(prec);
        mpfr_const_pi(out.lo_, MPFR_RNDD);
        mpfr_const_pi(out.hi_, MPFR_RNDU);
        return out;
    }

    friend RInt operator+(const RInt& a, const RInt& b) {
        RInt out(a.prec_);
        mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return out;
    }
    friend RInt operator-(const RInt& a, const RInt& b) {
        RInt out(a.prec_);
        mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return out;
    }
    RInt operator-() const {
        RInt out(prec_);
        mpfr_neg(out.lo_, hi_, MPFR_RNDD);
        mpfr_neg(out.hi_, lo_, MPFR_RNDU);
        return out;
    }
    friend RInt operator*(const RInt& a, const RInt& b) {
        RInt out(a.prec_);
        mpfr_t t;
        mpfr_init2(t, a.prec_);
        const mpfr_srcptr as[2] = {a.lo_, a.hi_};
        const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
        bool first = true;
        for (auto x : as)
            for (auto y : bs) {
                mpfr_mul(t, x, y, MPFR_RNDD);
                if (first || mpfr_cmp(t, out.lo_) < 0) mpfr_set(out.lo_, t, MPFR_RNDD);
                mpfr_mul(t, x, y, MPFR_RNDU);
                if (first || mpfr_cmp(t, out.hi_) > 0) mpfr_set(out.hi_, t, MPFR_RNDU);
                first = false;
            }
        mpfr_clear(t);
        return out;
    }

    // Enclosure of cos/sin over the interval, via the midpoint value widened
    // by the radius (both functions are 1-Lipschitz).
    RInt cos_enclosure() const { return lipschitz1(mpfr_cos); }
    RInt sin_enclosure() const { return lipschitz1(mpfr_sin); }

    bool contains(const RInt& inner) const {
        return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(inner.hi_, hi_) <= 0;
    }
    bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
    // -1, 0 (straddles zero), +1
    int sign() const {
        if (mpfr_sgn(lo_) > 0) return 1;
        if (mpfr_sgn(hi_) < 0) return -1;
        return 0;
    }
    double width() const {
        mpfr_t t;
        mpfr_init2(t, prec_);
        mpfr_sub(t, hi_, lo_, MPFR_RNDU);
        double w = mpfr_get_d(t, MPFR_RNDU);
        mpfr_clear(t);
        return w;
    }
    double lower_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double upper_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

    Rat mid_rat() const {
        mpfr_t m;
        mpfr_init2(m, prec_);
        mpfr_add(m, lo_, hi_, MPFR_RNDN);
        mpfr_div_2ui(m, m, 1, MPFR_RNDN);
        Rat out = exact_rat(m);
        mpfr_clear(m);
        return out;
    }

    // Exact rational value of an mpfr number.
    static Rat exact_rat(const mpfr_t x) {
        if (mpfr_zero_p(x)) return Rat(0);
        Int z;
        mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
        Rat out(z);
        if (e >= 0) {
            mpz_mul_2exp(out.get_num().get_mpz_t(), out.get_num().get_mpz_t(),
                         static_cast<unsigned long>(e));
        } else {
            mpz_mul_2exp(out.get_den().get_mpz_t(), out.get_den().get_mpz_t(),
                         static_cast<unsigned long>(-e));
        }
        out.canonicalize();
        return out;
    }

    // Widen both ends by 2^-k.
    RInt widened(long k) const {
        RInt out = *this;
        mpfr_t eps;
        mpfr_init2(eps, prec_);
        mpfr_set_ui_2exp(eps, 1, -k, MPFR_RNDU);
        mpfr_sub(out.lo_, out.lo_, eps, MPFR_RNDD);
        mpfr_add(out.hi_, out.hi_, eps, MPFR_RNDU);
        mpfr_clear(eps);
        return out;
    }

  private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;

    template <typename F>
    RInt lipschitz1(F func) const {
        RInt out(prec_);
        mpfr_t rad;
        mpfr_init2(rad, prec_);
        mpfr_sub(rad, hi_, lo_, MPFR_RNDU);
        func(out.lo_, lo_, MPFR_RNDD);
        func(out.hi_, lo_, MPFR_RNDU);
        mpfr_sub(out.lo_, out.lo_, rad, MPFR_RNDD);
        mpfr_add(out.hi_, out.hi_, rad, MPFR_RNDU);
        mpfr_clear(rad);
        return out;
    }
};

struct CInt {
    RInt re, im;

    explicit CInt(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    CInt(RInt r, RInt i) : re(std::move(r)), im(std::move(i)) {}

    friend CInt operator+(const CInt& a, const CInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend CInt operator-(const CInt& a, const CInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend CInt operator*(const CInt& a, const CInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    bool contains(const CInt& inner) const {
        return re.contains(inner.re) && im.contains(inner.im);
    }
    double width() const { return std::max(re.width(), im.width()); }
    std::pair<Rat, Rat> mid() const { return {re.mid_rat(), im.mid_rat()}; }
};

// Certified enclosure of zeta_n^k under zeta_n -> exp(2 pi i / n).
inline CInt root_of_unity_interval(unsigned long n, unsigned long k, mpfr_prec_t prec) {
    Rat frac(2 * Int(k), Int(n));
    frac.canonicalize();
    RInt theta = RInt::pi(prec) * RInt::from_rat(frac, prec);
    return {theta.cos_enclosure(), theta.sin_enclosure()};
}

// Certified enclosure of the image of a cyclotomic scalar under the standard
// embedding zeta_N -> exp(2 pi i / N).
inline CInt embed(const Cyc& a, mpfr_prec_t prec = 128) {
    if (prec < 64) throw precondition_error("embed: precision must be at least 64 bits");
    unsigned long n = a.conductor();
    CInt acc(prec);
    const auto& coeffs = a.coeffs();
    for (unsigned long j = 0; j < coeffs.size(); ++j) {
        if (is_zero(coeffs[j])) continue;
        RInt c = RInt::from_rat(coeffs[j], prec);
        CInt term = root_of_unity_interval(n, j, prec);
        acc = acc + CInt{c * term.re, c * term.im};
    }
    return acc;
}

// Certified sign of a real cyclotomic scalar (one fixed by conjugation):
// exact zero test first, then interval refinement.  Throws if the element is
// not real.
inline int certified_sign(const Cyc& a, mpfr_prec_t start_prec = 128) {
    if (a.is_zero()) return 0;
    if (a.is_rational()) return sgn(a.rat());
    if (a.conj() != a) throw precondition_error("certified_sign: element is not real");
    for (mpfr_prec_t p = start_prec; p <= 1 << 20; p *= 2) {
        CInt e = embed(a, p);
        int s = e.re.sign();
        if (s != 0) return s;
    }
    throw consistency_error("certified_sign: interval refinement did not separate from zero");
}

}  // namespace hopf
