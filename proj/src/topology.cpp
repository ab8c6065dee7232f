#include "cohom1/topology.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "cohom1/errors.hpp"

namespace cohom1 {

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

void swap_rows(IntMatrix2& m) { std::swap(m.a, m.c); std::swap(m.b, m.d); }
void swap_cols(IntMatrix2& m) { std::swap(m.a, m.b); std::swap(m.c, m.d); }

}  // namespace

SNFResult smith_normal_form(const IntMatrix2& A) {
    IntMatrix2 D = A;
    IntMatrix2 U{1, 0, 0, 1}, V{1, 0, 0, 1};

    auto row_op = [&](const Int& f) {  // row2 -= f * row1
        D.c -= f * D.a;
        D.d -= f * D.b;
        U.c -= f * U.a;
        U.d -= f * U.b;
    };
    auto col_op = [&](const Int& f) {  // col2 -= f * col1
        D.b -= f * D.a;
        D.d -= f * D.c;
        V.b -= f * V.a;
        V.d -= f * V.c;
    };

    for (int guard = 0; guard < 512; ++guard) {
        // move a minimal nonzero entry to the corner
        if (D.a == 0) {
            if (D.b != 0) { swap_cols(D); swap_cols(V); }
            else if (D.c != 0) { swap_rows(D); swap_rows(U); }
            else if (D.d != 0) {
                swap_rows(D); swap_rows(U);
                swap_cols(D); swap_cols(V);
            } else break;  // zero matrix
        }
        if (D.c != 0 && iabs(D.c) < iabs(D.a)) { swap_rows(D); swap_rows(U); }
        if (D.b != 0 && iabs(D.b) < iabs(D.a)) { swap_cols(D); swap_cols(V); }

        if (D.c != 0) { row_op(D.c / D.a); continue; }
        if (D.b != 0) { col_op(D.b / D.a); continue; }
        // corner is lone; enforce divisibility d1 | d2
        if (D.d % D.a != 0) {
            // col1 += col2 brings the remainder back into play
            D.a += D.b; D.c += D.d;
            V.a += V.b; V.c += V.d;
            continue;
        }
        break;
    }

    // sign normal form
    if (D.a < 0) { D.a = -D.a; D.b = -D.b; U.a = -U.a; U.b = -U.b; }
    if (D.d < 0) { D.c = -D.c; D.d = -D.d; U.c = -U.c; U.d = -U.d; }

    SNFResult r{D.a, D.d, U, V};
    IntMatrix2 check = (U * A) * V;
    if (!(check == IntMatrix2{r.d1, 0, 0, r.d2}) || iabs(U.det()) != 1 || iabs(V.det()) != 1)
        throw InternalInconsistency("smith normal form verification failed");
    if (r.d2 != 0 && (r.d1 == 0 || r.d2 % r.d1 != 0))
        throw InternalInconsistency("smith divisibility failed");
    return r;
}

IntMatrix2 mv_matrix_P(const Int& pm, const Int& qm, const Int& pp, const Int& qp) {
    for (const Int* s : {&pm, &qm, &pp, &qp})
        if (*s % 2 == 0)
            throw NonIntegralEntry("quaternion-family slopes must all be odd");
    Int a2 = pm * pm + qm * qm, c2 = pm * pm - qm * qm;
    Int b2 = pp * pp + qp * qp, d2 = pp * pp - qp * qp;
    if (a2 % 2 != 0 || b2 % 2 != 0 || c2 % 8 != 0 || d2 % 8 != 0)
        throw NonIntegralEntry("matrix entries fail the parity scalings");
    return {a2 / 2, -b2 / 2, c2 / 8, -d2 / 8};
}

IntMatrix2 mv_matrix_N(const Int& pm, const Int& qm, const Int& pp, const Int& qp) {
    if (pm % 2 == 0 || qm % 2 == 0 || qp % 2 == 0 || pp % 2 != 0)
        throw NonIntegralEntry("normal form needs pm, qm, qp odd and pp even");
    Int a2 = pm * pm + qm * qm, c2 = pm * pm - qm * qm;
    if (a2 % 2 != 0 || c2 % 2 != 0) throw NonIntegralEntry("left column fails the scaling");
    return {a2 / 2, -(pp * pp + qp * qp), c2 / 2, -(pp * pp - qp * qp)};
}

namespace {

std::string cyclic(const Int& order) {
    if (order == 1) return "0";
    std::ostringstream os;
    os << "Z_" << order;
    return os.str();
}

TopologyInvariants finish(TopologyFamily f, const IntMatrix2& m, const Int& closed_form) {
    Int det = m.det();
    if (det != closed_form)
        throw InternalInconsistency("matrix determinant disagrees with the closed form");
    SNFResult s = smith_normal_form(m);
    TopologyInvariants out;
    out.family = f;
    out.det = det;
    out.d1 = s.d1;
    out.d2 = s.d2;
    out.torsion_order = s.d1 * s.d2;
    if (det != 0 && iabs(det) != out.torsion_order)
        throw InternalInconsistency("cokernel order disagrees with |det|");

    if (f == TopologyFamily::P) {
        out.two_connected = true;
        out.H2 = "0";
        if (det == 0) {
            out.degenerate = true;
            out.H3 = out.H4 = "Z";
            out.pi3 = "Z";
        } else {
            out.H3 = "0";
            out.H4 = cyclic(out.torsion_order);
            out.pi3 = cyclic(out.torsion_order);
        }
    } else {
        out.two_connected = false;
        out.H2 = "Z";
        if (det == 0) {
            out.degenerate = true;
            out.H3 = out.H4 = "Z";
            out.caveat = "degenerate slopes: statement rule for the quaternion family applied";
        } else {
            out.H3 = "0";
            out.H4 = cyclic(out.torsion_order);
        }
    }
    return out;
}

}  // namespace

TopologyInvariants invariants_from_slopes(TopologyFamily f, Int pm, Int qm, Int pp, Int qp) {
    if (f == TopologyFamily::P) {
        IntMatrix2 m = mv_matrix_P(pm, qm, pp, qp);
        Int closed = (pm * pm * qp * qp - pp * pp * qm * qm) / 8;
        return finish(f, m, closed);
    }
    // N normal form: the even entry belongs in the p+ slot; the table-level
    // slopes may arrive in the other factor orientation
    if (pp % 2 != 0) {
        if (qp % 2 == 0) {
            std::swap(pm, qm);
            std::swap(pp, qp);
        } else {
            throw FamilyMismatch("no even entry in the (p+,q+) pair");
        }
    }
    IntMatrix2 m = mv_matrix_N(pm, qm, pp, qp);
    Int closed = pm * pm * qp * qp - pp * pp * qm * qm;
    return finish(f, m, closed);
}

namespace {

bool is_sign_pair(const GroupElement& g, const Quaternion& u) {
    // g = (eps1 u, eps2 u)?
    return (g.left == u || g.left == -u) && (g.right == u || g.right == -u);
}

// quaternion-group family: H is a sign-twisted diagonal of {+-1,+-i,+-j,+-k}
bool is_q_type(const FiniteSubgroup& h) {
    if (h.size() != 8) return false;
    int counts = 0;
    for (const Quaternion& u : {Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()})
        for (const auto& g : h.elements)
            if (is_sign_pair(g, u)) ++counts;
    if (counts != 8) return false;
    // noncommutative: distinguishes it from the Z4+Z2 shape
    for (const auto& a : h.elements)
        for (const auto& b : h.elements)
            if (!(a * b == b * a)) return true;
    return false;
}

// Z4+Z2 family: {(+-1,+-1), (+-a,+-a)} for one pure unit a
bool is_z4z2_type(const FiniteSubgroup& h) {
    if (h.size() != 8) return false;
    int central = 0;
    std::optional<Quaternion> axis;
    for (const auto& g : h.elements) {
        bool lc = g.left == Quaternion::one() || g.left == -Quaternion::one();
        bool rc = g.right == Quaternion::one() || g.right == -Quaternion::one();
        if (lc && rc) {
            ++central;
            continue;
        }
        if (!g.left.is_pure()) return false;
        if (!axis) axis = g.left;  // fixes the common axis up to sign
        if (!(g.left == *axis) && !(g.left == -*axis)) return false;
        if (!(g.right == *axis) && !(g.right == -*axis)) return false;
    }
    return central == 4;
}

}  // namespace

TopologyInvariants invariants(const Diagram& d) {
    if (d.kminus.kind != IsotropySubgroup::Kind::CircleDot ||
        d.kplus.kind != IsotropySubgroup::Kind::CircleDot)
        throw FamilyMismatch("both singular groups must be circle type");
    Int pm = d.kminus.circle.p, qm = d.kminus.circle.q;
    Int pp = d.kplus.circle.p, qp = d.kplus.circle.q;

    if (is_q_type(d.h)) return invariants_from_slopes(TopologyFamily::P, pm, qm, pp, qp);
    if (is_z4z2_type(d.h)) {
        // the odd-odd pair plays the left role in the normal form
        if (pm % 2 == 0 || qm % 2 == 0) {
            std::swap(pm, pp);
            std::swap(qm, qp);
        }
        return invariants_from_slopes(TopologyFamily::N, pm, qm, pp, qp);
    }
    throw FamilyMismatch("H is neither the quaternion nor the Z4+Z2 shape");
}

std::string TopologyInvariants::json() const {
    nlohmann::json j;
    j["family"] = family == TopologyFamily::P ? "P" : "N";
    j["two_connected"] = two_connected;
    j["degenerate"] = degenerate;
    j["H2"] = H2;
    j["H3"] = H3;
    j["H4"] = H4;
    if (family == TopologyFamily::P) j["pi3"] = pi3;
    std::ostringstream dd;
    dd << det;
    j["det"] = dd.str();
    std::ostringstream s1, s2;
    s1 << d1;
    s2 << d2;
    j["snf"] = nlohmann::json::array({s1.str(), s2.str()});
    if (!caveat.empty()) j["caveat"] = caveat;
    return j.dump();
}

}  // namespace cohom1
