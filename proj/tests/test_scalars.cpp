#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hopf/cyclotomic.hpp"

using hopf::Cyc;
using hopf::Rat;

namespace {

Cyc zeta(unsigned long n, long k = 1) { return Cyc::root_of_unity(n, k); }

// Deterministic random scalars over a handful of small conductors.
struct ScalarGen {
    std::mt19937 rng{0xC0FFEE};
    std::uniform_int_distribution<int> num{-6, 6};
    std::uniform_int_distribution<int> den{1, 4};
    std::uniform_int_distribution<int> pick{0, 5};

    Cyc operator()() {
        static const unsigned long conductors[] = {1, 3, 4, 5, 8, 12};
        unsigned long n = conductors[pick(rng)];
        unsigned long phi = hopf::euler_phi(n);
        Cyc out(0);
        for (unsigned long j = 0; j < phi; ++j) {
            Rat c(num(rng), den(rng));
            c.canonicalize();
            out += Cyc(c) * zeta(n, static_cast<long>(j));
        }
        return out;
    }
};

}  // namespace

TEST_CASE("cyclotomic basics") {
    CHECK(zeta(3) + zeta(3, 2) == Cyc(-1));
    CHECK(Cyc(1) * zeta(8, 3) == zeta(8, 3));
    CHECK(zeta(4) * zeta(4) == Cyc(-1));
    CHECK(zeta(2) == Cyc(-1));
    CHECK(zeta(6).conductor() == 3);  // conductor normalization
    CHECK(zeta(6) == -zeta(3, 2));
    CHECK(zeta(5).pow(5) == Cyc(1));
    CHECK((zeta(12) * zeta(12, 11)) == Cyc(1));
}

TEST_CASE("cyclotomic inverses") {
    CHECK(Cyc(2).inverse() == Cyc(1, 2));
    CHECK(zeta(4).inverse() == -zeta(4));
    // 1 + zeta_3 = -zeta_3^2, so its inverse is -zeta_3: verified by
    // multiplying out and reducing mod 1 + x + x^2.
    Cyc a = Cyc(1) + zeta(3);
    CHECK(a * (-zeta(3)) == Cyc(1));
    CHECK(a.inverse() == -zeta(3));
    CHECK_THROWS_AS(Cyc(0).inverse(), hopf::precondition_error);
}

TEST_CASE("field axioms on random scalars") {
    ScalarGen gen;
    for (int trial = 0; trial < 60; ++trial) {
        Cyc a = gen(), b = gen(), c = gen();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Cyc(1));
            CHECK((a * b) / a == b);
        }
    }
}

TEST_CASE("galois conjugation is a field automorphism") {
    ScalarGen gen;
    for (int trial = 0; trial < 40; ++trial) {
        Cyc a = gen(), b = gen();
        unsigned long n = hopf::lcm_conductor(a.conductor(), b.conductor());
        for (unsigned long k = 1; k < n; ++k) {
            if (std::gcd(k, n) != 1) continue;
            Cyc la = a.conductor() == n ? a : a + zeta(n) - zeta(n);  // lift via arithmetic
            CHECK((a * b).galois_at(n, k) == a.galois_at(n, k) * b.galois_at(n, k));
            CHECK((a + b).galois_at(n, k) == a.galois_at(n, k) + b.galois_at(n, k));
            (void)la;
        }
        CHECK(a.conj().conj() == a);
    }
}

TEST_CASE("canonical form has minimal conductor") {
    // zeta_12^3 = i lives in Q(zeta_4)
    Cyc x = zeta(12, 3);
    CHECK(x.canonical().conductor() == 4);
    CHECK(x == zeta(4));
    // elements that really need the big field stay there
    CHECK(zeta(12).canonical().conductor() == 12);
    // rational combinations demote automatically
    Cyc sum = zeta(5) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4);
    CHECK(sum.is_rational());
    CHECK(sum == Cyc(-1));
}

TEST_CASE("literal round trips") {
    CHECK(Cyc::parse("zeta(3)[0:1/2, 1:-1/1]") == Cyc(1, 2) - zeta(3));
    CHECK(Cyc::parse("-5/3") == Cyc(-5, 3));
    CHECK(Cyc::parse("7") == Cyc(7));
    ScalarGen gen;
    for (int trial = 0; trial < 40; ++trial) {
        Cyc a = gen();
        CHECK(Cyc::parse(a.str()) == a);
    }
    CHECK(Cyc(0).str() == "zeta(1)[]");
    CHECK_THROWS_AS(Cyc::parse("zeta(3)[0:x]"), hopf::parse_error);
    CHECK_THROWS_AS(Cyc::parse("zeta(3)[5:1/2]"), hopf::parse_error);
}

TEST_CASE("conductor overflow is signalled") {
    unsigned long saved = hopf::config::max_conductor();
    hopf::config::max_conductor() = 10;
    CHECK_THROWS_AS(zeta(3) * zeta(8), hopf::conductor_overflow);
    hopf::config::max_conductor() = saved;
}
