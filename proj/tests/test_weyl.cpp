#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cohom1/weyl.hpp"

using namespace cohom1;

namespace {

Diagram p_family(int k) {
    return parse("K-=C(i,1,1)*H; K+=C(j," + std::to_string(2 * k - 1) + "," +
                 std::to_string(2 * k + 1) + ")*H; H=gen{(i,i),(j,-j)}");
}

Diagram q_family(int k) {
    return parse("K-=C(i,1,1)*H; K+=C(j," + std::to_string(k) + "," + std::to_string(k + 1) +
                 ")*H; H=gen{(i,i),(-1,1)}");
}

Diagram e_family(int p) {
    std::string h = (p % 2 == 0) ? "(1,-1)" : "(-1,1)";
    return parse("K-=DS3*H; K+=C(i," + std::to_string(p) + "," + std::to_string(p + 1) +
                 "); H=gen{" + h + "}");
}

void check_involution(const GroupElement& w, const Diagram& d, const IsotropySubgroup& k) {
    CHECK(d.h.contains(w * w));
    CHECK(!d.h.contains(w));
    CHECK(k.contains(w));
    for (const auto& g : d.h.elements) CHECK(d.h.contains(w.conjugate(g)));
}

}  // namespace

TEST_CASE("representatives for the S7 diagram") {
    Diagram d = p_family(1);
    GroupElement wm = weyl_representative(d.kminus, d.h);
    Quaternion r = exp_axis(Quaternion::i(), Angle(1, 8));
    CHECK(wm == GroupElement{r, r});
    check_involution(wm, d, d.kminus);

    GroupElement wp = weyl_representative(d.kplus, d.h);
    CHECK(wp == GroupElement{exp_axis(Quaternion::j(), Angle(1, 8)),
                             exp_axis(Quaternion::j(), Angle(3, 8))});
    check_involution(wp, d, d.kplus);
}

TEST_CASE("diagonal representative is the antipode") {
    Diagram d = e_family(1);
    GroupElement wm = weyl_representative(d.kminus, d.h);
    CHECK(wm == GroupElement{-Quaternion::one(), -Quaternion::one()});
    check_involution(wm, d, d.kminus);
}

TEST_CASE("dihedral types of the named diagrams") {
    CHECK(weyl_group(p_family(1)).half_order == 6);  // S7
    Diagram b7 = parse("K-=C(i,3,1)*H; K+=C(j,1,3)*H; H=gen{(i,-i),(k,k)}");
    CHECK(weyl_group(b7).half_order == 3);
    for (int k = 1; k <= 10; ++k) CHECK(weyl_group(q_family(k)).half_order == 4);
    Diagram r = parse("K-=C(i,3,1)*H; K+=C(j,1,2)*H; H=gen{(i,i),(-1,1)}");
    CHECK(weyl_group(r).half_order == 4);
    for (int p = 1; p <= 6; ++p) CHECK(weyl_group(e_family(p)).half_order == 2);
}

TEST_CASE("P-family parity law up to k = 20") {
    for (int k = 1; k <= 20; ++k) {
        WeylResult w = weyl_group(p_family(k));
        CHECK(w.half_order == (k % 2 == 0 ? 3 : 6));
        check_involution(w.w_minus, p_family(k), p_family(k).kminus);
        check_involution(w.w_plus, p_family(k), p_family(k).kplus);
    }
}

TEST_CASE("weyl type is invariant under equivalence moves") {
    std::vector<Diagram> base = {p_family(1), p_family(2), q_family(3)};
    for (const auto& d : base) {
        int m0 = weyl_group(d).half_order;
        CHECK(weyl_group(d.kswapped()).half_order == m0);
        CHECK(weyl_group(d.factor_swapped()).half_order == m0);
        // sampled global conjugations
        int tried = 0;
        for (const auto& b1 : witness_rotations()) {
            if (tried >= 6) break;
            for (const auto& b2 : witness_rotations()) {
                auto c = d.conjugated({b1, b2});
                if (!c) continue;
                CHECK(weyl_group(*c).half_order == m0);
                ++tried;
                break;
            }
        }
        CHECK(tried >= 3);
    }
}

TEST_CASE("cap exceeded is an error") {
    CHECK_THROWS_AS(weyl_group(p_family(1), 3), OrderExceedsCap);
}
