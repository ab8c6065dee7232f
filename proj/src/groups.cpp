#include "cohom1/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "cohom1/errors.hpp"

namespace cohom1 {

FiniteSubgroup FiniteSubgroup::trivial() {
    FiniteSubgroup g;
    g.elements = {GroupElement::identity()};
    return g;
}

bool FiniteSubgroup::contains(const GroupElement& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

bool FiniteSubgroup::subgroup_of(const FiniteSubgroup& other) const {
    return std::includes(other.elements.begin(), other.elements.end(),
                         elements.begin(), elements.end());
}

FiniteSubgroup FiniteSubgroup::conjugated(const GroupElement& g) const {
    FiniteSubgroup out;
    out.elements.reserve(elements.size());
    for (const auto& h : elements) out.elements.push_back(g.conjugate(h));
    std::sort(out.elements.begin(), out.elements.end());
    for (const auto& h : generators) out.generators.push_back(g.conjugate(h));
    return out;
}

FiniteSubgroup FiniteSubgroup::factor_swapped() const {
    FiniteSubgroup out;
    out.elements.reserve(elements.size());
    for (const auto& h : elements) out.elements.push_back({h.right, h.left});
    std::sort(out.elements.begin(), out.elements.end());
    for (const auto& h : generators) out.generators.push_back({h.right, h.left});
    return out;
}

FiniteSubgroup closure(const std::vector<GroupElement>& gens, size_t cap) {
    if (cap < 1) throw Error("closure cap must be >= 1");
    for (const auto& g : gens)
        if (!g.is_unit()) throw Error("closure generator is not a unit pair");

    std::set<GroupElement> elems;
    std::deque<GroupElement> work;
    elems.insert(GroupElement::identity());
    for (const auto& g : gens)
        if (elems.insert(g).second) work.push_back(g);

    // Finite closure under multiplication inside a group is a group
    // (inverses are powers), so products against generators suffice.
    while (!work.empty()) {
        GroupElement g = work.front();
        work.pop_front();
        for (const auto& h : gens) {
            GroupElement p = g * h;
            if (elems.insert(p).second) {
                if (elems.size() > cap)
                    throw ClosureExceedsCap("more than " + std::to_string(cap) + " elements");
                work.push_back(p);
            }
        }
    }

    FiniteSubgroup out;
    out.elements.assign(elems.begin(), elems.end());
    out.generators = gens;
    for (const auto& g : out.elements) {
        int n = g.order(8);
        if (n == 0 || 8 % n != 0)
            throw ClosureExceedsCap("element of order not dividing 8: " + g.str());
    }
    return out;
}

SlopeCircle::SlopeCircle(Quaternion u, long long p_, long long q_) : axis(std::move(u)), p(p_), q(q_) {
    if (!axis.is_pure() || !axis.is_unit()) throw Error("slope circle axis must be a pure unit");
    if (p == 0 && q == 0) throw Error("slope (0,0) is not a circle");
    // axis sign normal form: leading nonzero coordinate positive
    int s = axis.x.sign() != 0 ? axis.x.sign() : (axis.y.sign() != 0 ? axis.y.sign() : axis.z.sign());
    if (s < 0) {
        axis = -axis;
        p = -p;
        q = -q;
    }
    if (p < 0 || (p == 0 && q < 0)) {  // (p,q) ~ (-p,-q)
        p = -p;
        q = -q;
    }
}

GroupElement SlopeCircle::point(const Angle& t) const {
    return {exp_axis(axis, p * t), exp_axis(axis, q * t)};
}

bool SlopeCircle::coprime() const { return std::gcd(std::abs(p), std::abs(q)) == 1; }

bool SlopeCircle::contains_torsion(const GroupElement& g, int order_cap) const {
    int n = g.order(order_cap);
    if (n == 0) return false;
    for (int t = 0; t < n; ++t) {
        Angle a(t, n);
        // a non-representable primitive angle cannot carry a Q(sqrt2) point
        if (!a.representable()) continue;
        if (point(a) == g) return true;
    }
    return false;
}

std::optional<SignCharacter> normalizes_circle(const FiniteSubgroup& F, const SlopeCircle& C) {
    SignCharacter chi;
    for (const auto& h : F.elements) {
        int sign = 0;  // common sign, 0 = not yet constrained
        const Quaternion img_l = h.left.sandwich(C.axis);
        const Quaternion img_r = h.right.sandwich(C.axis);
        if (C.p != 0) {
            if (img_l == C.axis) sign = 1;
            else if (img_l == -C.axis) sign = -1;
            else return std::nullopt;
        }
        if (C.q != 0) {
            int s = 0;
            if (img_r == C.axis) s = 1;
            else if (img_r == -C.axis) s = -1;
            else return std::nullopt;
            if (sign != 0 && s != sign) return std::nullopt;
            sign = s;
        }
        chi[h] = sign == 0 ? 1 : sign;
    }
    return chi;
}

FiniteSubgroup circle_torsion_intersect(const SlopeCircle& C, const FiniteSubgroup& F) {
    if (!C.coprime()) throw Error("circle_torsion_intersect requires coprime slopes");
    std::set<GroupElement> pts;
    const long long n = static_cast<long long>(F.size());
    for (long long t = 0; t < n; ++t) {
        Angle a(t, n);
        // points at non-representable reduced angles would have order not
        // dividing 8, impossible inside F (exponent-8 invariant)
        if (!a.representable()) continue;
        GroupElement g = C.point(a);
        if (F.contains(g)) pts.insert(g);
    }
    FiniteSubgroup out;
    out.elements.assign(pts.begin(), pts.end());
    // a generator: the smallest positive representable angle hit
    for (long long t = 1; t < n; ++t) {
        Angle a(t, n);
        if (!a.representable()) continue;
        GroupElement g = C.point(a);
        if (F.contains(g)) {
            out.generators = {g};
            break;
        }
    }
    return out;
}

TangentLine ad_conjugate(const GroupElement& g, const TangentLine& L) {
    return {Vec3::pure_part(g.left.sandwich(L.left.as_pure())),
            Vec3::pure_part(g.right.sandwich(L.right.as_pure()))};
}

int rank_over_field(std::span<const TangentLine> lines) {
    std::vector<std::array<FieldElem, 6>> rows;
    rows.reserve(lines.size());
    for (const auto& L : lines)
        rows.push_back({L.left.x, L.left.y, L.left.z, L.right.x, L.right.y, L.right.z});

    int rank = 0;
    for (int col = 0; col < 6 && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (!rows[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        FieldElem inv = rows[rank][col].inverse();
        for (int c = col; c < 6; ++c) rows[rank][c] *= inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            FieldElem f = rows[r][col];
            for (int c = col; c < 6; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return rank;
}

TangentLine bracket(const TangentLine& L1, const TangentLine& L2) {
    FieldElem two(2);
    return {two * cross(L1.left, L2.left), two * cross(L1.right, L2.right)};
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, const Angle& t) {
    FieldElem c = cos_turn(t), s = sin_turn(t);
    Vec3 av = cross(axis, v);
    FieldElem ad = dot(axis, v);
    // v cos + (a x v) sin + a (a.v)(1 - cos)
    Vec3 out = c * v;
    out = out + s * av;
    out = out + ((FieldElem::one() - c) * ad) * axis;
    return out;
}

}  // namespace cohom1
