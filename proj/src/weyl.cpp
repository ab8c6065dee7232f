#include "cohom1/weyl.hpp"

#include "cohom1/errors.hpp"

namespace cohom1 {

namespace {

bool normalizes(const GroupElement& a, const FiniteSubgroup& h) {
    for (const auto& g : h.elements)
        if (!h.contains(a.conjugate(g))) return false;
    return true;
}

bool involution_conditions(const GroupElement& a, const FiniteSubgroup& h) {
    return h.contains(a * a) && !h.contains(a) && normalizes(a, h);
}

}  // namespace

GroupElement weyl_representative(const IsotropySubgroup& k, const FiniteSubgroup& h) {
    GroupElement raw;
    switch (k.kind) {
        case IsotropySubgroup::Kind::CircleDot: {
            FiniteSubgroup m = circle_torsion_intersect(k.circle, h);
            long long mm = static_cast<long long>(m.size());
            Angle half(1, 2 * mm);  // half of the minimal torsion angle
            if (!half.representable())
                throw UnsupportedAngle("half-torsion angle 1/" + std::to_string(2 * mm));
            raw = k.circle.point(half);
            break;
        }
        case IsotropySubgroup::Kind::DiagS3Dot:
            raw = GroupElement{-Quaternion::one(), -Quaternion::one()};
            break;
        case IsotropySubgroup::Kind::Finite:
            throw NoRepresentative("finite isotropy has no circle or sphere factor");
    }
    if (involution_conditions(raw, h)) return raw;
    for (const auto& t : h.elements) {
        GroupElement a = raw * t;
        if (involution_conditions(a, h)) return a;
    }
    throw NoRepresentative("no H-translate of the half-angle point works");
}

WeylResult weyl_group(const Diagram& d, int cap) {
    if (cap < 1) throw Error("weyl cap must be >= 1");
    WeylResult r;
    r.w_minus = weyl_representative(d.kminus, d.h);
    r.w_plus = weyl_representative(d.kplus, d.h);
    GroupElement step = r.w_minus * r.w_plus;
    GroupElement pow = step;
    for (int n = 1; n <= cap; ++n) {
        r.word_log.push_back(n);
        if (d.h.contains(pow)) {
            r.half_order = n;
            return r;
        }
        pow = pow * step;
    }
    throw OrderExceedsCap("(w- w+)^n stays outside H for n <= " + std::to_string(cap));
}

}  // namespace cohom1
