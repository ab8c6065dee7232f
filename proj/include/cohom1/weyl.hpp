#pragma once

#include "cohom1/diagram.hpp"

namespace cohom1 {

/// The dihedral group generated by the two involutions w+- in N(H)/H.
struct WeylResult {
    GroupElement w_minus, w_plus;
    int half_order = 0;          // m: least n with (w- w+)^n in H
    std::vector<int> word_log;   // the powers n that were tested
    std::string type() const { return "D" + std::to_string(half_order); }
    int order() const { return 2 * half_order; }
};

/// The unique element a of K mod H with a^2 in H but a not in H, verified
/// to normalize H. For a circle factor this is the circle point at half the
/// minimal torsion angle; for a diagonal factor it is (-1,-1). When the raw
/// candidate fails to normalize H its H-translates are tried before the
/// operation gives up.
GroupElement weyl_representative(const IsotropySubgroup& k, const FiniteSubgroup& h);

/// Iterates (w- w+)^n with exact products until the power lands in H.
/// Throws OrderExceedsCap past `cap`; the scan treats that as a rejection.
WeylResult weyl_group(const Diagram& d, int cap = 48);

}  // namespace cohom1
