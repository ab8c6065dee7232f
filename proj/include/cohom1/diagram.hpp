#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohom1/groups.hpp"

namespace cohom1 {

/// One of the two singular isotropy groups K of a diagram.
/// Grammar shapes: a circle times a finite group (CircleDot), the diagonal
/// S^3 times a finite group (DiagS3Dot), or a bare finite group (never
/// produced by the parser; rejected by validation as an exceptional orbit).
struct IsotropySubgroup {
    enum class Kind { Finite, CircleDot, DiagS3Dot };

    Kind kind = Kind::Finite;
    SlopeCircle circle;      // meaningful for CircleDot
    FiniteSubgroup finite;   // the finite factor F (trivial when absent)

    static IsotropySubgroup circle_dot(SlopeCircle c, FiniteSubgroup f) {
        IsotropySubgroup k;
        k.kind = Kind::CircleDot;
        k.circle = std::move(c);
        k.finite = std::move(f);
        return k;
    }
    static IsotropySubgroup diag_s3_dot(FiniteSubgroup f) {
        IsotropySubgroup k;
        k.kind = Kind::DiagS3Dot;
        k.finite = std::move(f);
        return k;
    }

    /// Membership for torsion elements.
    bool contains(const GroupElement& g) const;

    bool operator==(const IsotropySubgroup& o) const;
};

/// The group diagram H in {K-, K+} in S^3 x S^3.
struct Diagram {
    IsotropySubgroup kminus, kplus;
    FiniteSubgroup h;

    Diagram factor_swapped() const;
    Diagram kswapped() const {
        Diagram d = *this;
        std::swap(d.kminus, d.kplus);
        return d;
    }
    /// Conjugated diagram, when the conjugate stays in the representable
    /// grammar (circle components keep a common axis, diagonals stay
    /// diagonal). Component-wise conjugation can leave it otherwise.
    std::optional<Diagram> conjugated(const GroupElement& b) const;

    bool operator==(const Diagram& o) const {
        return kminus == o.kminus && kplus == o.kplus && h.elements == o.h.elements;
    }

    /// Deterministic structural key; total order used by canonical_form.
    std::string key() const;
    /// One-line text form (the parser grammar when the axes allow it).
    std::string text() const;
    std::string json() const;
};

enum class EffectiveGroup { S3xS3, SO4, SO3xS3, S3xSO3, SO3xSO3 };

std::string to_string(EffectiveGroup g);

struct ValidationReport {
    int l_minus = 0, l_plus = 0;
    int components_Kminus = 1, components_Kplus = 1;
    long long pi1_order = 1;
    long long effective_kernel_order = 1;
    EffectiveGroup effective_group = EffectiveGroup::S3xS3;

    std::string json() const;
};

/// Parse the one-line diagram grammar
///   K-=<kg>; K+=<kg>; H=gen{<elem>,...}
/// with <kg> := C(<axis>,<p>,<q>)*H | DS3*H | DS3 | C(<axis>,<p>,<q>),
/// axis in {i,j,k}, and <elem> a pair (<q>,<q>) of quaternion literals
/// (1, -1, i, -i, j, k, ... or e(<axis>,<t>/<n>)).
Diagram parse(const std::string& text);

/// Structural validation: K's are groups, H is contained in both, the
/// fibers K/H are spheres; computes fiber dimensions, component counts,
/// pi_1 = H / <<H cap K0-, H cap K0+>> and the effective quotient.
ValidationReport validate(const Diagram& d);

/// The two kernels H+- of H acting on K+-/H must meet trivially in the
/// effective group. Returns true on pass.
bool kernel_triviality_check(const Diagram& d);

/// -------- equivalence engine --------

/// A record of the moves applied to reach a normal form.
struct Transform {
    bool kswap = false;
    bool factor_swap = false;
    std::vector<std::string> steps;  // human-readable move log
    std::string describe() const;
};

struct CanonicalResult {
    Diagram diagram;
    Transform transform;
};

/// Deterministic representative of the equivalence class reachable by the
/// finite witness moves: K-swap, factor swap, global conjugation sampled
/// from the 48-element unit group over Q(sqrt2) per factor, axis rotations
/// through the identity component of N(H), and per-circle reparametrization.
/// Axes land on (i for K-, j for K+), or both on i when the axes coincide.
/// Throws NonCanonicalizable when no witness move aligns the axes.
CanonicalResult canonical_form_with_transform(const Diagram& d);
Diagram canonical_form(const Diagram& d);

enum class EquivalenceVerdict { Equivalent, Distinct, NotIdentified };

struct EquivalenceResult {
    EquivalenceVerdict verdict;
    std::string witness;  // move log when Equivalent, explanation otherwise
};

/// True equivalence when canonical forms coincide. A definite negative is
/// only claimed when the canonical forms differ AND computable invariants
/// (fiber dimensions, pi_1, kernel) differ; otherwise NotIdentified.
EquivalenceResult equivalent(const Diagram& d1, const Diagram& d2);

/// -------- shared helpers --------

/// Subgroup of `ambient` generated by `gens` (all inside ambient).
FiniteSubgroup subgroup_generated(const FiniteSubgroup& ambient,
                                  const std::vector<GroupElement>& gens);

/// Normal closure of `gens` inside `ambient`.
FiniteSubgroup normal_closure(const FiniteSubgroup& ambient,
                              const std::vector<GroupElement>& gens);

/// H cap K0 (identity component of K).
FiniteSubgroup intersect_identity_component(const IsotropySubgroup& k, const FiniteSubgroup& h);

/// Tangent lines of the identity component: (p u, q u) for a slope circle,
/// the three diagonal lines for the diagonal S^3, nothing for finite K.
std::vector<TangentLine> lie_line(const IsotropySubgroup& k);

/// Largest central subgroup of S^3 x S^3 inside H.
FiniteSubgroup central_kernel(const FiniteSubgroup& h);

/// Per-factor identity component of the centralizer of H, the same thing as
/// N(H)_0 for finite H. Trivial, a circle with the given axis, or all of S^3.
struct CentralizerFactor {
    enum class Type { Trivial, Circle, Full } type = Type::Full;
    Vec3 axis;  // meaningful for Circle
};
std::array<CentralizerFactor, 2> centralizer_identity(const FiniteSubgroup& h);

/// The 48 unit quaternions over Q(sqrt2) used as per-factor conjugation
/// witnesses (Lipschitz units, Hurwitz units, and the (a+b)/sqrt2 units).
const std::vector<Quaternion>& witness_units();

/// One representative per +-pair of witness_units(); conjugation cannot
/// distinguish b from -b.
const std::vector<Quaternion>& witness_rotations();

}  // namespace cohom1
