#include "cohom1/obstruct.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cohom1/errors.hpp"

namespace cohom1 {

bool ObstructionReport::survives() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const CheckResult& c) { return c.verdict == Verdict::Fail; });
}

std::string ObstructionReport::first_fail() const {
    for (const auto& c : checks)
        if (c.verdict == Verdict::Fail) return c.name;
    return "";
}

const CheckResult* ObstructionReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string ObstructionReport::json() const {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json e;
        e["name"] = c.name;
        e["verdict"] = c.verdict == Verdict::Pass ? "pass"
                       : c.verdict == Verdict::Fail ? "fail"
                                                    : "not_applicable";
        if (!c.reason.empty()) e["reason"] = c.reason;
        if (c.sampled) e["sampled"] = true;
        j["checks"].push_back(e);
    }
    j["overall"] = survives() ? "survives" : "rejected";
    if (!survives()) j["first_fail"] = first_fail();
    if (weyl) j["weyl_type"] = weyl->type();
    if (validation) {
        j["l_minus"] = validation->l_minus;
        j["l_plus"] = validation->l_plus;
        j["pi1_order"] = validation->pi1_order;
        j["effective_group"] = to_string(validation->effective_group);
    }
    return j.dump();
}

CheckResult check_rank(int h_torus_rank) {
    int corank = 2 - h_torus_rank;
    if (corank == 0 || corank == 2)
        return CheckResult::pass("rank", "corank " + std::to_string(corank));
    return CheckResult::fail("rank", "corank " + std::to_string(corank) + " is neither 0 nor 2");
}

namespace {

bool is_central(const Quaternion& q) {
    return q == Quaternion::one() || q == -Quaternion::one();
}

}  // namespace

CheckResult check_forbidden_elements(const FiniteSubgroup& h) {
    for (const auto& g : h.elements) {
        bool lc = is_central(g.left), rc = is_central(g.right);
        if (lc != rc)  // one side central, the other not
            return CheckResult::fail("forbidden_elements", "witness " + g.str());
    }
    return CheckResult::pass("forbidden_elements");
}

CheckResult check_weight(const SlopeCircle& c, const FiniteSubgroup& h, const std::string& name) {
    long long k = static_cast<long long>(circle_torsion_intersect(c, h).size());
    long long p = c.p, q = c.q;
    bool ok = std::llabs(2 * (p - q)) == k || std::llabs(2 * (p + q)) == k ||
              (4 * std::llabs(p) == k && 4 * std::llabs(q) == k);
    if (ok)
        return CheckResult::pass(name, "normal weight " + std::to_string(k));
    std::ostringstream os;
    os << "slope (" << p << "," << q << ") incompatible with normal weight " << k;
    return CheckResult::fail(name, os.str());
}

CheckResult check_frankel(const Diagram& d) {
    using Kind = IsotropySubgroup::Kind;
    if (d.kminus.kind != Kind::CircleDot || d.kplus.kind != Kind::CircleDot)
        return CheckResult::na("frankel", "needs circle factors on both sides");

    bool sharpened = false;
    GroupElement minus_one{-Quaternion::one(), -Quaternion::one()};
    for (const auto& g : d.h.elements)
        if (g.order() == 4 && g * g == minus_one) {
            sharpened = true;
            break;
        }

    long long pmin = std::min(std::llabs(d.kminus.circle.p), std::llabs(d.kplus.circle.p));
    long long qmin = std::min(std::llabs(d.kminus.circle.q), std::llabs(d.kplus.circle.q));
    long long bound = sharpened ? 1 : 2;
    bool ok = sharpened ? (pmin == 1 && qmin == 1) : (pmin <= 2 && qmin <= 2);
    if (ok) return CheckResult::pass("frankel", sharpened ? "min slopes 1" : "min slopes <= 2");
    std::ostringstream os;
    os << "min |p| = " << pmin << ", min |q| = " << qmin << " exceeds " << bound;
    return CheckResult::fail("frankel", os.str());
}

namespace {

// incremental reduced echelon form over Q(sqrt2); rows stay zero at each
// other's pivots so membership reduction is order-independent
struct LineSpan {
    std::vector<std::array<FieldElem, 6>> rows;
    std::vector<int> pivots;

    bool add(const TangentLine& L) {
        std::array<FieldElem, 6> v{L.left.x, L.left.y, L.left.z,
                                   L.right.x, L.right.y, L.right.z};
        for (size_t r = 0; r < rows.size(); ++r) {
            FieldElem f = v[pivots[r]];
            if (f.is_zero()) continue;
            for (int c = 0; c < 6; ++c) v[c] -= f * rows[r][c];
        }
        int piv = -1;
        for (int c = 0; c < 6; ++c)
            if (!v[c].is_zero()) {
                piv = c;
                break;
            }
        if (piv < 0) return false;
        FieldElem inv = v[piv].inverse();
        for (int c = 0; c < 6; ++c) v[c] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            FieldElem f = rows[r][piv];
            if (f.is_zero()) continue;
            for (int c = 0; c < 6; ++c) rows[r][c] -= f * v[c];
        }
        rows.push_back(v);
        pivots.push_back(piv);
        return true;
    }
    int rank() const { return static_cast<int>(rows.size()); }
};

int bracket_closure_rank(std::vector<TangentLine> lines) {
    LineSpan span;
    std::vector<TangentLine> basis;
    for (const auto& L : lines)
        if (span.add(L)) basis.push_back(L);
    for (size_t i = 0; i < basis.size() && span.rank() < 6; ++i)
        for (size_t j = 0; j < i; ++j) {
            TangentLine br = bracket(basis[i], basis[j]);
            if (br.is_zero()) continue;
            if (span.add(br)) basis.push_back(br);
        }
    return span.rank();
}

}  // namespace

CheckResult check_linear_primitivity(const Diagram& d, const WeylResult& w) {
    // isotropy groups along the closed geodesic: conjugates of K+- by the
    // alternating words in w-, w+ of length up to 2m
    std::vector<GroupElement> words{GroupElement::identity()};
    GroupElement a = GroupElement::identity(), b = GroupElement::identity();
    for (int n = 1; n <= 2 * w.half_order; ++n) {
        a = a * (n % 2 ? w.w_minus : w.w_plus);
        b = b * (n % 2 ? w.w_plus : w.w_minus);
        words.push_back(a);
        words.push_back(b);
    }
    std::vector<TangentLine> lines;
    for (const auto& k : {d.kminus, d.kplus})
        for (const auto& L : lie_line(k))
            for (const auto& g : words) lines.push_back(ad_conjugate(g, L));
    int r = rank_over_field(lines);
    if (r == 6) return CheckResult::pass("linear_primitivity", "rank 6");
    return CheckResult::fail("linear_primitivity",
                             "geodesic isotropy algebras span rank " + std::to_string(r));
}

namespace {

// vector rotations realizing the sampled N(H)_0 = centralizer conjugations;
// one list per factor
std::vector<std::vector<std::pair<Vec3, Angle>>> rotation_grid(const FiniteSubgroup& h) {
    auto cf = centralizer_identity(h);
    std::vector<std::vector<std::pair<Vec3, Angle>>> grid(2);
    for (int f = 0; f < 2; ++f) {
        grid[f].push_back({Vec3{FieldElem::one(), {}, {}}, Angle(0, 1)});  // identity
        std::vector<Vec3> axes;
        if (cf[f].type == CentralizerFactor::Type::Circle) axes.push_back(cf[f].axis);
        if (cf[f].type == CentralizerFactor::Type::Full) {
            axes.push_back(Vec3::pure_part(Quaternion::i()));
            axes.push_back(Vec3::pure_part(Quaternion::j()));
            axes.push_back(Vec3::pure_part(Quaternion::k()));
        }
        for (const auto& ax : axes)
            for (int t = 1; t < 8; ++t) grid[f].push_back({ax, Angle(t, 8)});
    }
    return grid;
}

std::vector<TangentLine> rotated_lines(const std::vector<TangentLine>& lines,
                                       const std::pair<Vec3, Angle>& rl,
                                       const std::pair<Vec3, Angle>& rr) {
    std::vector<TangentLine> out;
    out.reserve(lines.size());
    for (const auto& L : lines)
        out.push_back({rotate_about(L.left, rl.first, rl.second),
                       rotate_about(L.right, rr.first, rr.second)});
    return out;
}

bool side_proportional(const IsotropySubgroup& k) {
    if (k.kind == IsotropySubgroup::Kind::DiagS3Dot) return true;
    if (k.kind == IsotropySubgroup::Kind::CircleDot)
        return std::llabs(k.circle.p) == std::llabs(k.circle.q);
    return false;
}

}  // namespace

CheckResult check_group_primitivity(const Diagram& d) {
    // exact degeneracy: both sides proportional means some N(H)_0 conjugate
    // of K+ lands with K- in a common twisted-diagonal subalgebra
    if (side_proportional(d.kminus) && side_proportional(d.kplus)) {
        CheckResult r = CheckResult::fail("group_primitivity",
                                          "degenerate configuration |p-|=|q-| and |p+|=|q+|");
        return r;
    }

    std::vector<TangentLine> base = lie_line(d.kminus);
    std::vector<TangentLine> plus = lie_line(d.kplus);
    auto grid = rotation_grid(d.h);
    for (const auto& rl : grid[0])
        for (const auto& rr : grid[1]) {
            std::vector<TangentLine> lines = base;
            for (const auto& L : rotated_lines(plus, rl, rr)) lines.push_back(L);
            int r = bracket_closure_rank(std::move(lines));
            if (r < 6) {
                CheckResult c = CheckResult::fail(
                    "group_primitivity", "bracket closure rank " + std::to_string(r) +
                                             " at a sampled N(H)_0 conjugate");
                c.sampled = true;
                return c;
            }
        }
    CheckResult c = CheckResult::pass("group_primitivity", "rank 6 at all sampled conjugates");
    c.sampled = true;
    return c;
}

std::pair<CheckResult, CheckResult> check_weyl_bounds(const Diagram& d, const WeylResult& w,
                                                      const ValidationReport& v) {
    int lsum = v.l_minus + v.l_plus;
    CheckResult lower =
        2 * w.half_order * lsum >= 12
            ? CheckResult::pass("weyl_lower_bound",
                                "|W| = " + std::to_string(2 * w.half_order))
            : CheckResult::fail("weyl_lower_bound",
                                "|W| (l- + l+) = " + std::to_string(2 * w.half_order * lsum) +
                                    " < 12");
    // the upper bound needs H cyclic (H_0 trivial here)
    bool cyclic = false;
    for (const auto& g : d.h.elements)
        if (closure({g}, d.h.size()).size() == d.h.size()) {
            cyclic = true;
            break;
        }
    CheckResult upper = !cyclic
                            ? CheckResult::na("weyl_upper_bound", "H is not cyclic")
                            : (2 * w.half_order <= 8
                                   ? CheckResult::pass("weyl_upper_bound",
                                                       "|W| = " + std::to_string(2 * w.half_order))
                                   : CheckResult::fail("weyl_upper_bound",
                                                       "|W| = " + std::to_string(2 * w.half_order) +
                                                           " > 8"));
    return {lower, upper};
}

ObstructionReport run_pipeline(const Diagram& d) {
    ObstructionReport rep;

    try {
        rep.validation = validate(d);
        rep.checks.push_back(CheckResult::pass("validate"));
    } catch (const Error& e) {
        rep.checks.push_back(CheckResult::fail("validate", e.what()));
        return rep;  // structural: nothing else is well defined
    }
    const ValidationReport& v = *rep.validation;

    rep.checks.push_back(v.pi1_order == 1
                             ? CheckResult::pass("simply_connected")
                             : CheckResult::fail("simply_connected",
                                                 "pi1 has order " + std::to_string(v.pi1_order)));

    rep.checks.push_back(kernel_triviality_check(d)
                             ? CheckResult::pass("kernel_triviality")
                             : CheckResult::fail("kernel_triviality",
                                                 "H- and H+ meet in the effective group"));

    rep.checks.push_back(check_rank());
    rep.checks.push_back(check_forbidden_elements(d.h));

    for (const auto& [k, name] :
         {std::pair{&d.kminus, "weight_minus"}, std::pair{&d.kplus, "weight_plus"}}) {
        if (k->kind == IsotropySubgroup::Kind::CircleDot)
            rep.checks.push_back(check_weight(k->circle, d.h, name));
        else
            rep.checks.push_back(CheckResult::na(name, "no circle factor on this side"));
    }

    rep.checks.push_back(check_frankel(d));

    try {
        rep.weyl = weyl_group(d);
        rep.checks.push_back(
            CheckResult::pass("weyl_finite", rep.weyl->type() + " within cap"));
    } catch (const Error& e) {
        rep.checks.push_back(CheckResult::fail("weyl_finite", e.what()));
    }

    if (rep.weyl) {
        auto [lower, upper] = check_weyl_bounds(d, *rep.weyl, v);
        rep.checks.push_back(lower);
        rep.checks.push_back(upper);
        rep.checks.push_back(check_linear_primitivity(d, *rep.weyl));
    } else {
        rep.checks.push_back(CheckResult::na("weyl_lower_bound", "weyl group unavailable"));
        rep.checks.push_back(CheckResult::na("weyl_upper_bound", "weyl group unavailable"));
        rep.checks.push_back(CheckResult::na("linear_primitivity", "weyl group unavailable"));
    }

    rep.checks.push_back(check_group_primitivity(d));
    return rep;
}

}  // namespace cohom1
