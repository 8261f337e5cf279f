#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).  Elements are stored on
// the power basis 1, zeta, ..., zeta^(phi(N)-1) reduced modulo the N-th
// cyclotomic polynomial; this basis makes canonical forms unique.
// Conductors are kept normalized (never 2 mod 4, since Q(zeta_2m) = Q(zeta_m)
// for odd m) and elements are demoted to conductor 1 whenever they are
// rational, so the common all-rational fast path stays cheap.

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <vector>

#include "hopf/rational.hpp"

namespace hopf {

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<unsigned long> prime_factors(unsigned long n) {
    std::vector<unsigned long> ps;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Q(zeta_n) = Q(zeta_(n/2)) for n = 2 mod 4; use the odd-half conductor.
inline unsigned long normalize_conductor(unsigned long n) {
    return (n % 4 == 2) ? n / 2 : n;
}

inline unsigned long lcm_conductor(unsigned long a, unsigned long b) {
    unsigned long l = std::lcm(a, b);
    l = normalize_conductor(l);
    if (l > config::max_conductor()) throw conductor_overflow(l);
    return l;
}

namespace detail {

// Per-conductor data: the cyclotomic polynomial Phi_N and the reduction of
// every power zeta^j (0 <= j < N) onto the power basis.  Entries are built
// once and immutable afterward, so sharing across threads is safe.
struct FieldTable {
    unsigned long n;
    unsigned long phi;
    std::vector<Int> cyclo;                 // Phi_N, monic, degree phi
    std::vector<std::vector<Int>> power;    // power[j] = zeta^j on the basis

    explicit FieldTable(unsigned long n_) : n(n_), phi(euler_phi(n_)) {
        cyclo = cyclotomic_polynomial(n);
        power.resize(n);
        for (unsigned long j = 0; j < phi && j < n; ++j) {
            power[j].assign(phi, 0);
            power[j][j] = 1;
        }
        // zeta^j = zeta * zeta^(j-1) followed by one reduction step.
        for (unsigned long j = phi; j < n; ++j) {
            std::vector<Int> shifted(phi + 1, 0);
            for (unsigned long t = 0; t < phi; ++t) shifted[t + 1] = power[j - 1][t];
            // subtract shifted[phi] * (x^phi mod Phi) = shifted[phi] * (x^phi - Phi)
            std::vector<Int> out(phi);
            for (unsigned long t = 0; t < phi; ++t)
                out[t] = shifted[t] - shifted[phi] * cyclo[t];
            power[j] = std::move(out);
        }
    }

    static std::vector<Int> cyclotomic_polynomial(unsigned long n) {
        if (n == 1) return {-1, 1};  // x - 1
        // (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division.
        std::vector<Int> poly(n + 1, 0);
        poly[0] = -1;
        poly[n] = 1;
        for (unsigned long d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            std::vector<Int> div = cyclotomic_polynomial(d);
            poly = divide_exact(poly, div);
        }
        return poly;
    }

    // Exact division of integer polynomials (remainder must vanish).
    static std::vector<Int> divide_exact(const std::vector<Int>& a,
                                         const std::vector<Int>& b) {
        std::vector<Int> rem = a;
        size_t db = b.size() - 1;
        std::vector<Int> q(a.size() - db, 0);
        for (size_t i = a.size(); i-- > db;) {
            Int c = rem[i];  // b is monic
            if (c == 0) continue;
            q[i - db] = c;
            for (size_t t = 0; t <= db; ++t) rem[i - db + t] -= c * b[t];
        }
        for (const Int& r : rem)
            if (r != 0) throw consistency_error("inexact cyclotomic division");
        return q;
    }
};

inline const FieldTable& field_table(unsigned long n) {
    static std::map<unsigned long, FieldTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, FieldTable(n)).first;
    return it->second;
}

}  // namespace detail

class Cyc {
  public:
    Cyc() : n_(1), c_(1, Rat(0)) {}
    Cyc(const Rat& r) : n_(1), c_(1, r) {}  // NOLINT: implicit by design
    Cyc(long v) : n_(1), c_(1, Rat(v)) {}   // NOLINT
    Cyc(long num, long den) : n_(1), c_(1, Rat(num, den)) { c_[0].canonicalize(); }

    // zeta_n^k, stored at the normalized minimal conductor for a root of unity.
    static Cyc root_of_unity(unsigned long n, long k) {
        if (n == 0) throw precondition_error("root_of_unity: n must be positive");
        long km = k % static_cast<long>(n);
        if (km < 0) km += static_cast<long>(n);
        unsigned long kk = static_cast<unsigned long>(km);
        unsigned long g = std::gcd(n, kk == 0 ? n : kk);
        n /= g;
        kk /= g;  // kk == 0 handles zeta^0 = 1 via n == 1
        bool negate = false;
        if (n % 4 == 2) {
            // zeta_{2m} = -zeta_m^((m+1)/2) for odd m
            unsigned long m = n / 2;
            negate = (kk % 2) == 1;
            kk = (kk * ((m + 1) / 2)) % m;
            n = m;
        }
        if (n > config::max_conductor()) throw conductor_overflow(n);
        const auto& tab = detail::field_table(n);
        Cyc out;
        out.n_ = n;
        out.c_.assign(tab.phi, Rat(0));
        const auto& pw = tab.power[kk % n];
        for (unsigned long t = 0; t < tab.phi; ++t) out.c_[t] = Rat(pw[t]);
        if (negate) out.negate_inplace();
        out.demote();
        return out;
    }

    unsigned long conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const Rat& x : c_)
            if (!hopf::is_zero(x)) return false;
        return true;
    }
    bool is_one() const { return is_rational() && c_[0] == 1; }
    bool is_rational() const { return n_ == 1; }
    // Valid only when is_rational().
    const Rat& rat() const {
        if (n_ != 1) throw precondition_error("rat(): not a rational scalar");
        return c_[0];
    }

    friend bool operator==(const Cyc& a, const Cyc& b) {
        if (a.n_ == b.n_) return a.c_ == b.c_;
        unsigned long m = lcm_conductor(a.n_, b.n_);
        return a.lifted(m) == b.lifted(m);
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    Cyc operator-() const {
        Cyc out = *this;
        out.negate_inplace();
        return out;
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        if (a.n_ == b.n_) {
            Cyc out = a;
            for (size_t t = 0; t < out.c_.size(); ++t) out.c_[t] += b.c_[t];
            out.demote();
            return out;
        }
        unsigned long m = lcm_conductor(a.n_, b.n_);
        Cyc out;
        out.n_ = m;
        out.c_ = a.lifted(m);
        auto bl = b.lifted(m);
        for (size_t t = 0; t < out.c_.size(); ++t) out.c_[t] += bl[t];
        out.demote();
        return out;
    }

    friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        if (a.n_ == 1 && b.n_ == 1) return Cyc(Rat(a.c_[0] * b.c_[0]));
        if (a.n_ == 1) return b.scaled(a.c_[0]);
        if (b.n_ == 1) return a.scaled(b.c_[0]);
        unsigned long m = lcm_conductor(a.n_, b.n_);
        const auto& tab = detail::field_table(m);
        std::vector<Rat> av = a.lifted(m), bv = b.lifted(m);
        size_t phi = tab.phi;
        std::vector<Rat> prod(2 * phi - 1, Rat(0));
        for (size_t i = 0; i < phi; ++i) {
            if (hopf::is_zero(av[i])) continue;
            for (size_t j = 0; j < phi; ++j) {
                if (hopf::is_zero(bv[j])) continue;
                prod[i + j] += av[i] * bv[j];
            }
        }
        Cyc out;
        out.n_ = m;
        out.c_.assign(phi, Rat(0));
        for (size_t t = 0; t < phi; ++t) out.c_[t] = std::move(prod[t]);
        for (size_t t = phi; t < prod.size(); ++t) {
            if (hopf::is_zero(prod[t])) continue;
            const auto& pw = tab.power[t % m];  // zeta^t = zeta^(t mod m)
            for (size_t u = 0; u < phi; ++u)
                if (pw[u] != 0) out.c_[u] += prod[t] * Rat(pw[u]);
        }
        out.demote();
        return out;
    }

    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

    // Multiplicative inverse via extended gcd with the cyclotomic polynomial.
    Cyc inverse() const {
        if (is_zero()) throw precondition_error("division by zero CycScalar");
        if (n_ == 1) return Cyc(Rat(1 / c_[0]));
        const auto& tab = detail::field_table(n_);
        std::vector<Rat> phi_poly(tab.cyclo.size());
        for (size_t t = 0; t < tab.cyclo.size(); ++t) phi_poly[t] = Rat(tab.cyclo[t]);
        auto inv = poly_modular_inverse(c_, phi_poly);
        Cyc out;
        out.n_ = n_;
        out.c_ = std::move(inv);
        out.c_.resize(tab.phi, Rat(0));
        out.demote();
        return out;
    }

    friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

    // Galois automorphism zeta -> zeta^k; requires gcd(k, conductor) = 1.
    Cyc galois(long k) const {
        if (n_ == 1) return *this;
        long km = k % static_cast<long>(n_);
        if (km < 0) km += static_cast<long>(n_);
        if (std::gcd(static_cast<unsigned long>(km), n_) != 1)
            throw precondition_error("galois: exponent not coprime to conductor");
        const auto& tab = detail::field_table(n_);
        Cyc out;
        out.n_ = n_;
        out.c_.assign(tab.phi, Rat(0));
        for (unsigned long j = 0; j < tab.phi; ++j) {
            if (hopf::is_zero(c_[j])) continue;
            const auto& pw = tab.power[(j * static_cast<unsigned long>(km)) % n_];
            for (unsigned long t = 0; t < tab.phi; ++t)
                if (pw[t] != 0) out.c_[t] += c_[j] * Rat(pw[t]);
        }
        out.demote();
        return out;
    }

    // Galois action of sigma_k in Gal(Q(zeta_n)/Q) on an element of any
    // subfield of Q(zeta_n).
    Cyc galois_at(unsigned long n, long k) const {
        if (n % n_ != 0) throw precondition_error("galois_at: conductor does not divide n");
        if (n == 1) return *this;
        Cyc lifted_elt;
        lifted_elt.n_ = n;
        lifted_elt.c_ = lifted(n);
        return lifted_elt.galois(k);
    }

    // Complex conjugation (zeta -> zeta^(-1)).
    Cyc conj() const { return n_ == 1 ? *this : galois(static_cast<long>(n_) - 1); }

    Cyc pow(unsigned long e) const {
        Cyc acc(1), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return acc;
    }

    // Rewrites the element at its minimal conductor.  Equality never needs
    // this (it lifts to a common field), but printing, serialization and the
    // deterministic total order do.
    Cyc canonical() const {
        Cyc out = *this;
        bool again = true;
        while (again && out.n_ > 1) {
            again = false;
            for (unsigned long p : prime_factors(out.n_)) {
                unsigned long m = normalize_conductor(out.n_ / p);
                if (m == out.n_) continue;
                if (auto down = out.descend_to(m)) {
                    out = std::move(*down);
                    again = out.n_ > 1;
                    break;
                }
            }
        }
        return out;
    }

    // Deterministic total order on canonical forms: (conductor, coeff lex).
    static int cmp(const Cyc& a, const Cyc& b) {
        Cyc ca = a.canonical(), cb = b.canonical();
        if (ca.n_ != cb.n_) return ca.n_ < cb.n_ ? -1 : 1;
        for (size_t t = 0; t < ca.c_.size(); ++t) {
            int c = ::cmp(ca.c_[t], cb.c_[t]);
            if (c != 0) return c;
        }
        return 0;
    }

    // Literal format: zeta(N)[k1:p1/q1, k2:p2/q2, ...] on the canonical form.
    std::string str() const {
        Cyc c = canonical();
        std::ostringstream os;
        os << "zeta(" << c.n_ << ")[";
        bool first = true;
        for (size_t k = 0; k < c.c_.size(); ++k) {
            if (hopf::is_zero(c.c_[k])) continue;
            if (!first) os << ", ";
            first = false;
            os << k << ":" << rat_literal(c.c_[k]);
        }
        os << "]";
        return os.str();
    }

    // Accepts the zeta(N)[...] literal or a bare rational "p/q".
    static Cyc parse(const std::string& s) {
        size_t i = 0;
        auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
        skip_ws();
        if (i >= s.size()) throw parse_error("empty scalar literal");
        if (s.compare(i, 5, "zeta(") != 0) return Cyc(parse_rat(s.substr(i)));
        i += 5;
        size_t close = s.find(')', i);
        if (close == std::string::npos) throw parse_error("unterminated conductor in '" + s + "'");
        unsigned long n = std::strtoul(s.substr(i, close - i).c_str(), nullptr, 10);
        if (n == 0) throw parse_error("bad conductor in '" + s + "'");
        i = close + 1;
        skip_ws();
        if (i >= s.size() || s[i] != '[') throw parse_error("expected '[' in '" + s + "'");
        ++i;
        Cyc out(0);
        while (true) {
            skip_ws();
            if (i >= s.size()) throw parse_error("unterminated scalar literal '" + s + "'");
            if (s[i] == ']') break;
            size_t colon = s.find(':', i);
            size_t end = s.find_first_of(",]", i);
            if (colon == std::string::npos || end == std::string::npos || colon > end)
                throw parse_error("bad term near '" + s.substr(i) + "'");
            unsigned long k = std::strtoul(s.substr(i, colon - i).c_str(), nullptr, 10);
            if (k >= n) throw parse_error("exponent out of range in '" + s + "'");
            Rat coeff = parse_rat(trim(s.substr(colon + 1, end - colon - 1)));
            out += Cyc(coeff) * root_of_unity(n, static_cast<long>(k));
            i = end;
            if (s[i] == ',') ++i;
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyc& c) { return os << c.str(); }

    // Coefficient vector lifted to conductor m (m must be a normalized
    // multiple of the current conductor).
    std::vector<Rat> lifted(unsigned long m) const {
        if (m == n_) return c_;
        const auto& tab = detail::field_table(m);
        std::vector<Rat> out(tab.phi, Rat(0));
        unsigned long step = m / n_;
        for (unsigned long j = 0; j < c_.size(); ++j) {
            if (hopf::is_zero(c_[j])) continue;
            const auto& pw = tab.power[(j * step) % m];
            for (unsigned long t = 0; t < tab.phi; ++t)
                if (pw[t] != 0) out[t] += c_[j] * Rat(pw[t]);
        }
        return out;
    }

  private:
    unsigned long n_;
    std::vector<Rat> c_;

    static std::string trim(std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        if (a == std::string::npos) return "";
        return s.substr(a, b - a + 1);
    }

    void negate_inplace() {
        for (Rat& x : c_) x = -x;
    }

    Cyc scaled(const Rat& r) const {
        if (hopf::is_zero(r)) return Cyc(0);
        Cyc out = *this;
        for (Rat& x : out.c_) x *= r;
        return out;
    }

    // Demote to conductor 1 when the element is rational (all non-constant
    // power-basis coordinates vanish; that characterizes rationality).
    void demote() {
        if (n_ == 1) return;
        for (size_t t = 1; t < c_.size(); ++t)
            if (!hopf::is_zero(c_[t])) return;
        Rat r = std::move(c_[0]);
        n_ = 1;
        c_.assign(1, std::move(r));
    }

    // Tries to rewrite on the basis of Q(zeta_m) for m | n; small dense
    // rational solve (phi(n) x phi(m)).
    std::optional<Cyc> descend_to(unsigned long m) const {
        const auto& big = detail::field_table(n_);
        unsigned long phim = euler_phi(m);
        unsigned long step = n_ / m;
        // columns: lift of zeta_m^j; augmented with target c_.
        size_t rows = big.phi, cols = phim;
        std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols + 1, Rat(0)));
        for (unsigned long j = 0; j < phim; ++j) {
            const auto& pw = big.power[(j * step) % n_];
            for (size_t r = 0; r < rows; ++r) a[r][j] = Rat(pw[r]);
        }
        for (size_t r = 0; r < rows; ++r) a[r][cols] = c_[r];
        // Gaussian elimination to decide solvability and read the solution.
        std::vector<long> pivot_of_col(cols, -1);
        size_t rank = 0;
        for (size_t col = 0; col < cols && rank < rows; ++col) {
            size_t sel = rank;
            while (sel < rows && hopf::is_zero(a[sel][col])) ++sel;
            if (sel == rows) continue;
            std::swap(a[rank], a[sel]);
            Rat inv = 1 / a[rank][col];
            for (size_t t = col; t <= cols; ++t) a[rank][t] *= inv;
            for (size_t r = 0; r < rows; ++r) {
                if (r == rank || hopf::is_zero(a[r][col])) continue;
                Rat f = a[r][col];
                for (size_t t = col; t <= cols; ++t) a[r][t] -= f * a[rank][t];
            }
            pivot_of_col[col] = static_cast<long>(rank);
            ++rank;
        }
        for (size_t r = rank; r < rows; ++r)
            if (!hopf::is_zero(a[r][cols])) return std::nullopt;
        Cyc out;
        out.n_ = m;
        out.c_.assign(phim, Rat(0));
        for (size_t col = 0; col < cols; ++col)
            if (pivot_of_col[col] >= 0) out.c_[col] = a[static_cast<size_t>(pivot_of_col[col])][cols];
        out.demote();
        return out;
    }

    // inverse of a modulo f over Q, f monic.
    static std::vector<Rat> poly_modular_inverse(std::vector<Rat> a, std::vector<Rat> f) {
        auto deg = [](const std::vector<Rat>& p) {
            for (size_t i = p.size(); i-- > 0;)
                if (!hopf::is_zero(p[i])) return static_cast<long>(i);
            return -1L;
        };
        // extended Euclid: r0 = f, r1 = a; track s only against a.
        std::vector<Rat> r0 = f, r1 = a;
        std::vector<Rat> t0 = {Rat(0)}, t1 = {Rat(1)};
        while (deg(r1) > 0) {
            // divide r0 by r1
            std::vector<Rat> q(std::max<long>(deg(r0) - deg(r1) + 1, 1), Rat(0));
            std::vector<Rat> rem = r0;
            long d1 = deg(r1);
            Rat lead = r1[static_cast<size_t>(d1)];
            for (long i = deg(rem); i >= d1; --i) {
                if (hopf::is_zero(rem[static_cast<size_t>(i)])) continue;
                Rat c = rem[static_cast<size_t>(i)] / lead;
                q[static_cast<size_t>(i - d1)] = c;
                for (long t = 0; t <= d1; ++t)
                    rem[static_cast<size_t>(i - d1 + t)] -= c * r1[static_cast<size_t>(t)];
            }
            // (t0, t1) <- (t1, t0 - q*t1)
            std::vector<Rat> t2(std::max(t0.size(), q.size() + t1.size()), Rat(0));
            for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
            for (size_t i = 0; i < q.size(); ++i) {
                if (hopf::is_zero(q[i])) continue;
                for (size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        long d = deg(r1);
        if (d != 0) throw consistency_error("cyclotomic inverse: gcd not constant");
        Rat inv = 1 / r1[0];
        for (Rat& x : t1) x *= inv;
        return t1;
    }
};

inline Cyc operator*(const Rat& r, const Cyc& c) { return Cyc(r) * c; }
inline Cyc operator*(long r, const Cyc& c) { return Cyc(r) * c; }

}  // namespace hopf
