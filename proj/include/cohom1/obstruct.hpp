#pragma once

#include "cohom1/weyl.hpp"

namespace cohom1 {

enum class Verdict { Pass, Fail, NotApplicable };

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::string reason;
    bool sampled = false;  // verdict rests on a finite sample grid

    static CheckResult pass(std::string n, std::string r = "") {
        return {std::move(n), Verdict::Pass, std::move(r), false};
    }
    static CheckResult fail(std::string n, std::string r) {
        return {std::move(n), Verdict::Fail, std::move(r), false};
    }
    static CheckResult na(std::string n, std::string r) {
        return {std::move(n), Verdict::NotApplicable, std::move(r), false};
    }
};

/// Ordered verdict ledger for one diagram. Survives iff no check failed.
struct ObstructionReport {
    std::vector<CheckResult> checks;
    std::optional<ValidationReport> validation;
    std::optional<WeylResult> weyl;

    bool survives() const;
    std::string first_fail() const;  // empty when none
    const CheckResult* find(const std::string& name) const;
    std::string json() const;
};

/// Corank of H in S^3 x S^3 must be 0 or 2 for an odd-dimensional space.
/// `h_torus_rank` is the rank of a maximal torus of H; 0 for the finite
/// principal isotropy groups this library builds.
CheckResult check_rank(int h_torus_rank = 0);

/// H may not contain (a,+-1) or (+-1,a) with a noncentral.
CheckResult check_forbidden_elements(const FiniteSubgroup& h);

/// Normal-weight check for one circle side: with k = |C cap H|, pass iff
/// |2(p-q)| = k, |2(p+q)| = k, or 4|p| = 4|q| = k (the equal-weight case
/// where the flat-plane argument does not apply).
CheckResult check_weight(const SlopeCircle& c, const FiniteSubgroup& h, const std::string& name);

/// min(|p-|,|p+|) <= 2 and min(|q-|,|q+|) <= 2 for circle-circle diagrams;
/// sharpened to = 1 when H has an element of order 4 squaring to (-1,-1).
CheckResult check_frankel(const Diagram& d);

/// The isotropy algebras along the closed geodesic (Weyl-word conjugates of
/// the K+- lines) must span all 6 dimensions.
CheckResult check_linear_primitivity(const Diagram& d, const WeylResult& w);

/// K- together with any N(H)_0-conjugate of K+ must generate the full group:
/// bracket closure of the lines has rank 6 on a sampled conjugate grid, and
/// the algebraically degenerate configuration (both sides proportional) is
/// absent.
CheckResult check_group_primitivity(const Diagram& d);

/// Lower bound 2m (l- + l+) >= 12 always; upper bound |W| <= 8 only when H
/// is cyclic, recorded NotApplicable otherwise.
std::pair<CheckResult, CheckResult> check_weyl_bounds(const Diagram& d, const WeylResult& w,
                                                      const ValidationReport& v);

/// Runs the whole ledger in order: validate, simply_connected,
/// kernel_triviality, rank, forbidden_elements, weight_minus, weight_plus,
/// frankel, weyl_finite, weyl_lower_bound, weyl_upper_bound,
/// linear_primitivity, group_primitivity. Structural errors short-circuit;
/// everything reachable is recorded.
ObstructionReport run_pipeline(const Diagram& d);

}  // namespace cohom1
