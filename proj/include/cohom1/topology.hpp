#pragma once

#include "cohom1/diagram.hpp"

namespace cohom1 {

/// Exact 2x2 integer matrix [[a, b], [c, d]].
struct IntMatrix2 {
    Int a, b, c, d;

    Int det() const { return a * d - b * c; }
    friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    bool operator==(const IntMatrix2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
};

/// U A V = diag(d1, d2) with d1 | d2, d1, d2 >= 0 and |det U| = |det V| = 1.
struct SNFResult {
    Int d1, d2;
    IntMatrix2 U, V;
};

SNFResult smith_normal_form(const IntMatrix2& A);

/// The degree-3 boundary matrix of the two-disc-bundle cover for the
/// quaternion-group family: requires all four slopes odd, pairs coprime.
IntMatrix2 mv_matrix_P(const Int& pm, const Int& qm, const Int& pp, const Int& qp);

/// Same matrix for the Z4+Z2 family normal form: pm, qm, qp odd, pp even.
IntMatrix2 mv_matrix_N(const Int& pm, const Int& qm, const Int& pp, const Int& qp);

enum class TopologyFamily { P, N };

struct TopologyInvariants {
    TopologyFamily family;
    bool two_connected = false;
    bool degenerate = false;       // proportional slopes: det = 0
    std::string H2, H3, H4, pi3;   // "0", "Z", or "Z_k"
    Int det;
    Int d1, d2;                    // SNF of the boundary matrix
    Int torsion_order;             // d1 * d2 when det != 0
    std::string caveat;            // set on the undocumented N degenerate case

    std::string json() const;
};

/// Invariants from a slope quadruple; for the N family the input may be in
/// either factor orientation and is normalized (factor swap) so that the
/// even entry lands in the p+ slot.
TopologyInvariants invariants_from_slopes(TopologyFamily f, Int pm, Int qm, Int pp, Int qp);

/// Invariants of a validated circle-circle diagram; the family is read off
/// the isomorphism type of H. Cross-checks the determinant against the
/// closed form and refuses to answer on mismatch.
TopologyInvariants invariants(const Diagram& d);

}  // namespace cohom1
