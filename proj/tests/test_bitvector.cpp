#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "crl/bitvector.hpp"
#include "crl/random.hpp"

using crl::BitVector;

TEST_CASE("construction keeps tail bits clear") {
    BitVector ones(70, true);
    CHECK(ones.count() == 70);
    CHECK((~ones).count() == 0);
    BitVector zeros(70);
    CHECK(zeros.none());
    CHECK((~zeros).count() == 70);
}

TEST_CASE("set, test and indices") {
    BitVector v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.test(64));
    CHECK_FALSE(v.test(65));
    CHECK(v.indices() == std::vector<std::size_t>{0, 64, 129});
    v.set(64, false);
    CHECK(v.count() == 2);
}

TEST_CASE("word operations agree with a bool vector") {
    crl::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng.below(200);
        std::vector<bool> a(n), b(n);
        BitVector va(n), vb(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform() < 0.5;
            b[i] = rng.uniform() < 0.5;
            va.set(i, a[i]);
            vb.set(i, b[i]);
        }
        std::size_t both = 0, a_not_b = 0, either = 0, differ = 0;
        for (std::size_t i = 0; i < n; ++i) {
            both += a[i] && b[i];
            a_not_b += a[i] && !b[i];
            either += a[i] || b[i];
            differ += a[i] != b[i];
        }
        CHECK((va & vb).count() == both);
        CHECK(crl::count_and(va, vb) == both);
        CHECK(crl::count_and_not(va, vb) == a_not_b);
        CHECK(BitVector(va).and_not(vb).count() == a_not_b);
        CHECK((va | vb).count() == either);
        CHECK((va ^ vb).count() == differ);
    }
}

TEST_CASE("rng draws are reproducible and in range") {
    crl::Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        const double u = a.uniform();
        CHECK(u == b.uniform());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(a.below(7) == b.below(7));
    }
    CHECK(crl::derive_seed(1, 0) != crl::derive_seed(1, 1));
}
