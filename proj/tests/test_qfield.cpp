#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cohom1/qfield.hpp"

using namespace cohom1;

namespace {

FieldElem fe(long long a, long long b = 0) { return {Rat(a), Rat(b)}; }

// random small rationals, seeded: the property tests are reproducible
std::mt19937 rng(20260810);

FieldElem random_elem() {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 6);
    return {Rat(num(rng), den(rng)), Rat(num(rng), den(rng))};
}

Quaternion e_pi_4_i() {  // e^{pi i/4} = (1+i)/sqrt2
    return exp_axis(Quaternion::i(), Angle(1, 8));
}

}  // namespace

TEST_CASE("field arithmetic on the spec examples") {
    FieldElem x{Rat(1), Rat(1)}, y{Rat(1), Rat(-1)};
    CHECK(x * y == fe(-1));  // (1 + s2)(1 - s2) = -1

    FieldElem h{Rat(0), Rat(1, 2)};  // sqrt2/2
    CHECK(h * h == FieldElem(Rat(1, 2), Rat(0)));

    // division, checked by multiplying back
    FieldElem a{Rat(3), Rat(2)}, d{Rat(1), Rat(1)};
    FieldElem q = a / d;
    CHECK(q * d == a);
}

TEST_CASE("division by zero") {
    CHECK_THROWS_AS(fe(1) / fe(0), DivisionByZero);
}

TEST_CASE("field axioms hold exactly for random pairs") {
    for (int it = 0; it < 300; ++it) {
        FieldElem x = random_elem(), y = random_elem(), z = random_elem();
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x * x.inverse() == FieldElem::one());
        CHECK((x - y) + y == x);
    }
}

TEST_CASE("exact sign") {
    CHECK(fe(1, -1).sign() == -1);   // 1 - sqrt2 < 0
    CHECK(fe(3, -2).sign() == 1);    // 3 - 2 sqrt2 > 0
    CHECK(fe(-1, 1).sign() == 1);    // sqrt2 - 1 > 0
    CHECK(fe(0, 0).sign() == 0);
    CHECK(fe(-3, 2).sign() == -1);
}

TEST_CASE("quaternion basics") {
    Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(i * i == -Quaternion::one());

    // e^{pi i/4} * e^{pi i/4} = i
    Quaternion r = e_pi_4_i();
    CHECK(r * r == i);

    // j i j^{-1} = -i
    CHECK(j.sandwich(i) == -i);

    CHECK(r.is_unit());
    CHECK(r.conj() * r == Quaternion::one());
}

TEST_CASE("norm is multiplicative on random unit products") {
    std::vector<Quaternion> pool = {Quaternion::one(), Quaternion::i(), Quaternion::j(),
                                    Quaternion::k(), e_pi_4_i(),
                                    exp_axis(Quaternion::j(), Angle(1, 8)),
                                    exp_axis(Quaternion::k(), Angle(3, 8))};
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (int it = 0; it < 200; ++it) {
        Quaternion p = pool[pick(rng)] * pool[pick(rng)];
        Quaternion q = pool[pick(rng)] * pool[pick(rng)];
        CHECK((p * q).norm() == p.norm() * q.norm());
        CHECK(p.is_unit());
    }
}

TEST_CASE("exp_axis on the spec examples") {
    Quaternion r = exp_axis(Quaternion::i(), Angle(1, 8));
    FieldElem s = FieldElem::inv_sqrt2();
    CHECK(r == Quaternion{s, s, FieldElem::zero(), FieldElem::zero()});

    CHECK(exp_axis(Quaternion::j(), Angle(1, 4)) == Quaternion::j());
    CHECK_THROWS_AS(exp_axis(Quaternion::i(), Angle(1, 16)), UnsupportedAngle);
}

TEST_CASE("exp_axis is a one-parameter homomorphism on supported angles") {
    const Quaternion axes[] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
    for (const auto& u : axes)
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b) {
                Angle s(a, 8), t(b, 8);
                CHECK(exp_axis(u, s) * exp_axis(u, t) == exp_axis(u, s + t));
            }
}

TEST_CASE("group element order") {
    GroupElement g{Quaternion::i(), Quaternion::i()};
    CHECK(g.order() == 4);
    CHECK(GroupElement::identity().order() == 1);
    GroupElement r{e_pi_4_i(), e_pi_4_i()};
    CHECK(r.order() == 8);
}
