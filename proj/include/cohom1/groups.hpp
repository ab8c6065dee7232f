#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cohom1/qfield.hpp"

namespace cohom1 {

/// A finite subgroup of S^3 x S^3, stored as a sorted element list.
/// Invariant (enforced by closure): every element has order dividing 8,
/// and the group has at most 64 elements.
struct FiniteSubgroup {
    std::vector<GroupElement> elements;    // sorted, unique, contains identity
    std::vector<GroupElement> generators;

    static FiniteSubgroup trivial();

    size_t size() const { return elements.size(); }
    bool contains(const GroupElement& g) const;
    bool is_trivial() const { return elements.size() == 1; }

    /// Subgroup-of test (both must be genuine groups).
    bool subgroup_of(const FiniteSubgroup& other) const;

    bool same_set(const FiniteSubgroup& other) const { return elements == other.elements; }

    /// Image under component-wise conjugation by g.
    FiniteSubgroup conjugated(const GroupElement& g) const;
    /// Image under the swap of the two S^3 factors.
    FiniteSubgroup factor_swapped() const;
};

/// Smallest subgroup containing `gens`. Throws ClosureExceedsCap if the
/// closure grows past `cap` elements or acquires an element whose order
/// does not divide 8.
FiniteSubgroup closure(const std::vector<GroupElement>& gens, size_t cap = 64);

/// One-parameter subgroup {(e^{p u theta}, e^{q u theta})} with a pure unit
/// axis u. Slopes are stored sign-normalized (leading nonzero of (p,q)
/// positive); (p,q) and (-p,-q) are the same circle.
struct SlopeCircle {
    Quaternion axis;
    long long p = 1, q = 1;

    SlopeCircle() : axis(Quaternion::i()) {}
    SlopeCircle(Quaternion u, long long p_, long long q_);

    /// The point at angle t (a fraction of a full turn in the parameter).
    GroupElement point(const Angle& t) const;

    /// Membership test for torsion elements (finite order up to `order_cap`).
    /// Representable torsion points on a representable-axis circle always
    /// have order dividing 8, so the scan over exact angles is complete.
    bool contains_torsion(const GroupElement& g, int order_cap = 64) const;

    bool coprime() const;

    bool operator==(const SlopeCircle& o) const {
        return axis == o.axis && p == o.p && q == o.q;
    }
};

/// Result of normalizes_circle: the sign character F -> {+1,-1} when F
/// normalizes the circle, nothing otherwise.
using SignCharacter = std::map<GroupElement, int>;

/// Does every h in F conjugate the circle into itself? For h = (h1,h2) and
/// nonzero slopes this requires h1 u h1^{-1} = eps u and h2 u h2^{-1} = eps u
/// with a common sign eps(h); components with zero slope are unconstrained.
std::optional<SignCharacter> normalizes_circle(const FiniteSubgroup& F, const SlopeCircle& C);

/// C intersect F, computed by scanning the angles 2 pi t/|F|. Sufficient:
/// a point of C with coprime slopes at parameter 2 pi a has order den(a),
/// which must divide |F| (see docs/notes.md). Requires coprime slopes.
FiniteSubgroup circle_torsion_intersect(const SlopeCircle& C, const FiniteSubgroup& F);

/// An element of the Lie algebra so(3)+so(3), identified with a pair of
/// pure-imaginary vectors. Kept unnormalized; rank is scale-invariant.
struct Vec3 {
    FieldElem x, y, z;

    static Vec3 zero() { return {}; }
    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }
    friend Vec3 operator+(const Vec3& u, const Vec3& v) { return {u.x + v.x, u.y + v.y, u.z + v.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    friend Vec3 operator*(const FieldElem& c, const Vec3& v) { return {c * v.x, c * v.y, c * v.z}; }
    friend Vec3 cross(const Vec3& u, const Vec3& v) {
        return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
    }
    friend FieldElem dot(const Vec3& u, const Vec3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }
    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }

    Quaternion as_pure() const { return {FieldElem::zero(), x, y, z}; }
    static Vec3 pure_part(const Quaternion& q) { return {q.x, q.y, q.z}; }
};

struct TangentLine {
    Vec3 left, right;
    bool is_zero() const { return left.is_zero() && right.is_zero(); }
    bool operator==(const TangentLine& o) const { return left == o.left && right == o.right; }
};

/// Component-wise rotation v |-> g v g^{-1}.
TangentLine ad_conjugate(const GroupElement& g, const TangentLine& L);

/// Exact rank of the lines viewed as vectors in the 6-dimensional algebra.
int rank_over_field(std::span<const TangentLine> lines);

/// so(3)+so(3) bracket under the pure-quaternion identification:
/// component-wise cross product times 2. A zero result is meaningful.
TangentLine bracket(const TangentLine& L1, const TangentLine& L2);

/// Rotate v by the angle 2 pi t about the pure unit axis (Rodrigues, exact);
/// this is conjugation by e^{axis * pi * t} without materializing the group
/// element, so quarter- and eighth-turn rotations stay inside Q(sqrt2).
Vec3 rotate_about(const Vec3& v, const Vec3& axis, const Angle& t);

}  // namespace cohom1
