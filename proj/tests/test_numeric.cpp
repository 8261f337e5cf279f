#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hopf/reconstruct.hpp"

using hopf::CInt;
using hopf::Cyc;
using hopf::Int;
using hopf::Rat;

namespace {
Cyc zeta(unsigned long n, long k = 1) { return Cyc::root_of_unity(n, k); }
}  // namespace

TEST_CASE("embed basics") {
    CInt one = hopf::embed(Cyc(1), 128);
    CHECK(one.re.contains(hopf::RInt::from_rat(Rat(1), 128)));
    CHECK(one.im.contains_zero());
    CHECK(one.width() < 1e-30);

    CInt i4 = hopf::embed(zeta(4), 128);
    CHECK(i4.re.contains_zero());
    CHECK(i4.im.contains(hopf::RInt::from_rat(Rat(1), 128)));

    // zeta_3 -> -1/2 + 0.86602...i
    CInt w = hopf::embed(zeta(3), 128);
    CHECK(w.re.contains(hopf::RInt::from_rat(Rat(-1, 2), 128)));
    double im_mid = (w.im.lower_d() + w.im.upper_d()) / 2;
    CHECK(std::abs(im_mid - 0.8660254037844386) < 1e-12);
    CHECK_THROWS_AS(hopf::embed(Cyc(1), 32), hopf::precondition_error);
}

TEST_CASE("embed respects multiplication up to widening") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-4, 4);
    for (int trial = 0; trial < 25; ++trial) {
        Cyc a = Cyc(coef(rng)) + Cyc(coef(rng)) * zeta(8) + Cyc(coef(rng)) * zeta(8, 2);
        Cyc b = Cyc(coef(rng)) + Cyc(coef(rng)) * zeta(8, 3);
        CInt prod = hopf::embed(a, 128) * hopf::embed(b, 128);
        CInt tight = hopf::embed(a * b, 256);
        CInt widened{prod.re.widened(100), prod.im.widened(100)};
        CHECK(widened.contains(tight));
    }
}

TEST_CASE("reconstruct inverts embed") {
    CHECK(*hopf::reconstruct(hopf::embed(Cyc(-1), 128), 3, Int(1)) == Cyc(-1));
    CHECK(*hopf::reconstruct(hopf::embed(Cyc(1, 2), 128), 4, Int(2)) == Cyc(1, 2));
    CHECK(*hopf::reconstruct(hopf::embed(zeta(3), 128), 3, Int(1)) == zeta(3));

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    for (unsigned long n : {3UL, 4UL, 5UL, 8UL, 12UL}) {
        for (int trial = 0; trial < 8; ++trial) {
            Cyc a(0);
            for (unsigned long j = 0; j < hopf::euler_phi(n); ++j) {
                Rat c(num(rng), den(rng));
                c.canonicalize();
                a += Cyc(c) * zeta(n, static_cast<long>(j));
            }
            auto back = hopf::reconstruct(hopf::embed(a, 192), n, Int(6), 192);
            REQUIRE(back.has_value());
            CHECK(*back == a);
        }
    }
}

TEST_CASE("roots in field") {
    // x^2 + x + 1 splits over Q(zeta_3)
    auto r = hopf::roots_in_field({Cyc(1), Cyc(1), Cyc(1)}, 3, Int(1));
    REQUIRE(r.has_value());
    REQUIRE(r->size() == 2);
    CHECK(((*r)[0] == zeta(3) || (*r)[0] == zeta(3, 2)));
    CHECK((*r)[0] * (*r)[1] == Cyc(1));

    // x^2 - 2 needs Q(zeta_8): sqrt(2) = zeta_8 + zeta_8^7
    auto s = hopf::roots_in_field({Cyc(-2), Cyc(0), Cyc(1)}, 8, Int(1));
    REQUIRE(s.has_value());
    Cyc sqrt2 = zeta(8) + zeta(8, 7);
    CHECK(((*s)[0] == sqrt2 || (*s)[0] == -sqrt2));

    // ... and does not split over Q(zeta_4)
    CHECK_FALSE(hopf::roots_in_field({Cyc(-2), Cyc(0), Cyc(1)}, 4, Int(1)).has_value());

    // cubic with known roots 1, zeta_3, zeta_3^2
    auto t = hopf::roots_in_field({Cyc(-1), Cyc(0), Cyc(0), Cyc(1)}, 3, Int(1));
    REQUIRE(t.has_value());
    CHECK(t->size() == 3);
}

TEST_CASE("certified sign of real cyclotomics") {
    Cyc sqrt2 = zeta(8) + zeta(8, 7);
    CHECK(hopf::certified_sign(sqrt2 - Cyc(1)) == 1);
    CHECK(hopf::certified_sign(sqrt2 - Cyc(2)) == -1);
    CHECK(hopf::certified_sign(Cyc(0)) == 0);
    CHECK(hopf::certified_sign(zeta(5) + zeta(5, 4)) == 1);  // 2 cos 72 deg
    CHECK_THROWS_AS(hopf::certified_sign(zeta(3)), hopf::precondition_error);
}
