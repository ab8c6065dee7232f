#include "cohom1/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cohom1/errors.hpp"

namespace cohom1 {

using nlohmann::json;

// ---------------------------------------------------------------- helpers

FiniteSubgroup subgroup_generated(const FiniteSubgroup& ambient,
                                  const std::vector<GroupElement>& gens) {
    for (const auto& g : gens)
        if (!ambient.contains(g)) throw Error("generator outside ambient group");
    FiniteSubgroup s = closure(gens, ambient.size());
    return s;
}

FiniteSubgroup normal_closure(const FiniteSubgroup& ambient,
                              const std::vector<GroupElement>& gens) {
    FiniteSubgroup s = subgroup_generated(ambient, gens);
    for (;;) {
        std::vector<GroupElement> extra;
        for (const auto& a : ambient.elements)
            for (const auto& x : s.elements) {
                GroupElement c = a.conjugate(x);
                if (!s.contains(c)) extra.push_back(c);
            }
        if (extra.empty()) return s;
        std::vector<GroupElement> g = s.elements;
        g.insert(g.end(), extra.begin(), extra.end());
        s = closure(g, ambient.size());
    }
}

FiniteSubgroup central_kernel(const FiniteSubgroup& h) {
    std::vector<GroupElement> z;
    for (const auto& g : h.elements) {
        bool lc = g.left == Quaternion::one() || g.left == -Quaternion::one();
        bool rc = g.right == Quaternion::one() || g.right == -Quaternion::one();
        if (lc && rc) z.push_back(g);
    }
    FiniteSubgroup out;
    out.elements = std::move(z);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

namespace {

bool is_pm_one(const Quaternion& q) {
    return q == Quaternion::one() || q == -Quaternion::one();
}

// Unit axis of a non-central exponent-8 quaternion. Elements of order 4 are
// pure units; order-8 elements have |pure part| = 1/sqrt2. Both stay in the
// field, so no square roots are needed.
std::optional<Vec3> unit_axis_of(const Quaternion& q) {
    if (is_pm_one(q)) return std::nullopt;
    Vec3 v = Vec3::pure_part(q);
    FieldElem n2 = dot(v, v);
    if (n2 == FieldElem::one()) return v;
    if (n2 == FieldElem(Rat(1, 2), Rat(0))) {
        FieldElem s2{Rat(0), Rat(1)};  // sqrt(2)
        return s2 * v;
    }
    throw Error("element outside the exponent-8 class: " + q.str());
}

}  // namespace

std::array<CentralizerFactor, 2> centralizer_identity(const FiniteSubgroup& h) {
    std::array<CentralizerFactor, 2> out;
    for (int f = 0; f < 2; ++f) {
        std::optional<Vec3> axis;
        bool trivial = false;
        for (const auto& g : h.elements) {
            const Quaternion& c = (f == 0) ? g.left : g.right;
            auto a = unit_axis_of(c);
            if (!a) continue;
            if (!axis) {
                axis = *a;
            } else if (!(*a == *axis) && !(*a == -*axis)) {
                trivial = true;
                break;
            }
        }
        if (trivial)
            out[f].type = CentralizerFactor::Type::Trivial;
        else if (axis) {
            out[f].type = CentralizerFactor::Type::Circle;
            out[f].axis = *axis;
        } else
            out[f].type = CentralizerFactor::Type::Full;
    }
    return out;
}

const std::vector<Quaternion>& witness_rotations() {
    // one representative of each +-pair: conjugation cannot see the sign
    static const std::vector<Quaternion> rots = [] {
        std::vector<Quaternion> out;
        for (const auto& b : witness_units()) {
            int s = b.w.sign();
            if (s == 0) s = b.x.sign();
            if (s == 0) s = b.y.sign();
            if (s == 0) s = b.z.sign();
            if (s > 0) out.push_back(b);
        }
        return out;
    }();
    return rots;
}

const std::vector<Quaternion>& witness_units() {
    static const std::vector<Quaternion> units = [] {
        std::vector<Quaternion> w;
        const FieldElem o = FieldElem::one(), z = FieldElem::zero();
        const FieldElem h{Rat(1, 2), Rat(0)};
        const FieldElem s = FieldElem::inv_sqrt2();
        auto push = [&w](FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
            w.emplace_back(std::move(a), std::move(b), std::move(c), std::move(d));
        };
        // Lipschitz units
        for (int i = 0; i < 4; ++i)
            for (int sgn : {1, -1}) {
                FieldElem v[4] = {z, z, z, z};
                v[i] = sgn > 0 ? o : -o;
                push(v[0], v[1], v[2], v[3]);
            }
        // Hurwitz units (+-1 +-i +-j +-k)/2
        for (int m = 0; m < 16; ++m)
            push((m & 1) ? -h : h, (m & 2) ? -h : h, (m & 4) ? -h : h, (m & 8) ? -h : h);
        // (+-a +- b)/sqrt2 for distinct basis elements a < b
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int si : {1, -1})
                    for (int sj : {1, -1}) {
                        FieldElem v[4] = {z, z, z, z};
                        v[i] = si > 0 ? s : -s;
                        v[j] = sj > 0 ? s : -s;
                        push(v[0], v[1], v[2], v[3]);
                    }
        return w;
    }();
    return units;
}

// ------------------------------------------------------- IsotropySubgroup

bool IsotropySubgroup::contains(const GroupElement& g) const {
    switch (kind) {
        case Kind::Finite:
            return finite.contains(g);
        case Kind::CircleDot:
            for (const auto& f : finite.elements)
                if (circle.contains_torsion(g * f.inverse())) return true;
            return false;
        case Kind::DiagS3Dot:
            for (const auto& f : finite.elements) {
                GroupElement x = g * f.inverse();
                if (x.left == x.right) return true;
            }
            return false;
    }
    return false;
}

bool IsotropySubgroup::operator==(const IsotropySubgroup& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::CircleDot && !(circle == o.circle)) return false;
    return finite.elements == o.finite.elements;
}

// ----------------------------------------------------------------- Diagram

namespace {

IsotropySubgroup swap_isotropy_factors(const IsotropySubgroup& k) {
    IsotropySubgroup out = k;
    out.finite = k.finite.factor_swapped();
    if (k.kind == IsotropySubgroup::Kind::CircleDot)
        out.circle = SlopeCircle(k.circle.axis, k.circle.q, k.circle.p);
    return out;
}

std::optional<IsotropySubgroup> conjugate_isotropy(const IsotropySubgroup& k,
                                                   const GroupElement& b) {
    IsotropySubgroup out = k;
    out.finite = k.finite.conjugated(b);
    if (k.kind == IsotropySubgroup::Kind::CircleDot) {
        Quaternion ul = b.left.sandwich(k.circle.axis);
        Quaternion ur = b.right.sandwich(k.circle.axis);
        if (ul == ur)
            out.circle = SlopeCircle(ul, k.circle.p, k.circle.q);
        else if (ul == -ur)
            out.circle = SlopeCircle(ur, -k.circle.p, k.circle.q);
        else
            return std::nullopt;  // components acquire different axes
    } else if (k.kind == IsotropySubgroup::Kind::DiagS3Dot) {
        if (!(b.left == b.right) && !(b.left == -b.right))
            return std::nullopt;  // conjugate is a twisted diagonal
    }
    return out;
}

}  // namespace

Diagram Diagram::factor_swapped() const {
    Diagram d;
    d.kminus = swap_isotropy_factors(kminus);
    d.kplus = swap_isotropy_factors(kplus);
    d.h = h.factor_swapped();
    return d;
}

std::optional<Diagram> Diagram::conjugated(const GroupElement& b) const {
    auto km = conjugate_isotropy(kminus, b);
    auto kp = conjugate_isotropy(kplus, b);
    if (!km || !kp) return std::nullopt;
    Diagram d;
    d.kminus = std::move(*km);
    d.kplus = std::move(*kp);
    d.h = h.conjugated(b);
    return d;
}

namespace {

std::string axis_name(const Quaternion& a) {
    if (a == Quaternion::i()) return "i";
    if (a == Quaternion::j()) return "j";
    if (a == Quaternion::k()) return "k";
    return a.str();
}

std::string quat_literal(const Quaternion& q) {
    if (q == Quaternion::one()) return "1";
    if (q == -Quaternion::one()) return "-1";
    for (const char* n : {"i", "j", "k"}) {
        Quaternion b = n[0] == 'i' ? Quaternion::i() : n[0] == 'j' ? Quaternion::j() : Quaternion::k();
        if (q == b) return n;
        if (q == -b) return std::string("-") + n;
    }
    for (const char* n : {"i", "j", "k"}) {
        Quaternion b = n[0] == 'i' ? Quaternion::i() : n[0] == 'j' ? Quaternion::j() : Quaternion::k();
        for (int t = 1; t < 8; ++t) {
            if (t == 2 || t == 4 || t == 6) continue;  // covered by basis forms
            if (q == exp_axis(b, Angle(t, 8))) return "e(" + std::string(n) + "," + std::to_string(t) + "/8)";
            if (q == -exp_axis(b, Angle(t, 8)))
                return "-e(" + std::string(n) + "," + std::to_string(t) + "/8)";
        }
    }
    return q.str();  // outside the literal grammar; JSON stays exact
}

std::string isotropy_text(const IsotropySubgroup& k, const FiniteSubgroup& h) {
    std::string s;
    switch (k.kind) {
        case IsotropySubgroup::Kind::Finite:
            s = "F{...}";
            break;
        case IsotropySubgroup::Kind::CircleDot:
            s = "C(" + axis_name(k.circle.axis) + "," + std::to_string(k.circle.p) + "," +
                std::to_string(k.circle.q) + ")";
            break;
        case IsotropySubgroup::Kind::DiagS3Dot:
            s = "DS3";
            break;
    }
    if (!k.finite.is_trivial()) {
        s += k.finite.same_set(h) ? "*H" : "*F";
    }
    return s;
}

json field_to_json(const FieldElem& f) {
    std::ostringstream a, b;
    a << f.a;
    b << f.b;
    return json::array({a.str(), b.str()});
}

json quat_to_json(const Quaternion& q) {
    return json::array({field_to_json(q.w), field_to_json(q.x), field_to_json(q.y), field_to_json(q.z)});
}

json elem_to_json(const GroupElement& g) {
    return json::object({{"left", quat_to_json(g.left)}, {"right", quat_to_json(g.right)}});
}

json group_to_json(const FiniteSubgroup& f) {
    json els = json::array();
    for (const auto& g : f.elements) els.push_back(elem_to_json(g));
    json gens = json::array();
    for (const auto& g : f.generators) gens.push_back(elem_to_json(g));
    return json::object({{"order", f.size()}, {"elements", els}, {"generators", gens}});
}

json isotropy_to_json(const IsotropySubgroup& k) {
    json j;
    switch (k.kind) {
        case IsotropySubgroup::Kind::Finite:
            j["kind"] = "finite";
            break;
        case IsotropySubgroup::Kind::CircleDot:
            j["kind"] = "circle_dot";
            j["circle"] = json::object({{"axis", quat_to_json(k.circle.axis)},
                                        {"p", k.circle.p},
                                        {"q", k.circle.q}});
            break;
        case IsotropySubgroup::Kind::DiagS3Dot:
            j["kind"] = "diag_s3_dot";
            break;
    }
    j["finite"] = group_to_json(k.finite);
    return j;
}

}  // namespace

std::string Diagram::text() const {
    std::string s = "K-=" + isotropy_text(kminus, h) + "; K+=" + isotropy_text(kplus, h) + "; H=gen{";
    const std::vector<GroupElement>& gens =
        h.generators.empty() ? h.elements : h.generators;
    for (size_t n = 0; n < gens.size(); ++n) {
        if (n) s += ",";
        s += "(" + quat_literal(gens[n].left) + "," + quat_literal(gens[n].right) + ")";
    }
    s += "}";
    return s;
}

namespace {

// zero-padded slope encoding; positive before negative so the canonical
// representative prefers positive slopes
void encode_slope(std::ostringstream& os, long long v) {
    os << (v >= 0 ? 'a' : 'b');
    long long a = v >= 0 ? v : -v;
    os.width(6);
    os.fill('0');
    os << a;
}

}  // namespace

std::string Diagram::key() const {
    // slopes outrank the finite data: the canonical representative fixes the
    // frame and slope signs first, and only then the layout of H
    std::ostringstream os;
    auto skeleton = [&](const IsotropySubgroup& k) {
        switch (k.kind) {
            case IsotropySubgroup::Kind::DiagS3Dot:
                os << "D";
                break;
            case IsotropySubgroup::Kind::CircleDot:
                os << "C[" << k.circle.axis.str() << ";";
                encode_slope(os, k.circle.p);
                os << ",";
                encode_slope(os, k.circle.q);
                os << "]";
                break;
            case IsotropySubgroup::Kind::Finite:
                os << "F";
                break;
        }
    };
    auto elems = [&](const FiniteSubgroup& f) {
        os << "{";
        for (const auto& g : f.elements) os << g.str() << ";";
        os << "}";
    };
    skeleton(kminus);
    os << "|";
    skeleton(kplus);
    os << "|H";
    elems(h);
    os << "|F-";
    elems(kminus.finite);
    os << "|F+";
    elems(kplus.finite);
    return os.str();
}

std::string Diagram::json() const {
    ::cohom1::json j;
    j["ambient"] = "S3xS3";
    j["kminus"] = isotropy_to_json(kminus);
    j["kplus"] = isotropy_to_json(kplus);
    j["h"] = group_to_json(h);
    j["text"] = text();
    return j.dump();
}

std::string to_string(EffectiveGroup g) {
    switch (g) {
        case EffectiveGroup::S3xS3: return "S3xS3";
        case EffectiveGroup::SO4: return "SO4";
        case EffectiveGroup::SO3xS3: return "SO3xS3";
        case EffectiveGroup::S3xSO3: return "S3xSO3";
        case EffectiveGroup::SO3xSO3: return "SO3xSO3";
    }
    return "?";
}

std::string ValidationReport::json() const {
    ::cohom1::json j;
    j["l_minus"] = l_minus;
    j["l_plus"] = l_plus;
    j["components_kminus"] = components_Kminus;
    j["components_kplus"] = components_Kplus;
    j["pi1_order"] = pi1_order;
    j["effective_kernel_order"] = effective_kernel_order;
    j["effective_group"] = to_string(effective_group);
    return j.dump();
}

// ------------------------------------------------------------------ parser

namespace {

struct Cursor {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::string(w).size();
        if (s.compare(pos, n, w) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    long long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) throw ParseError("expected integer", start);
        return std::stoll(s.substr(start, pos - start));
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
};

Quaternion parse_axis(Cursor& c) {
    c.skip_ws();
    if (c.eat_word("i")) return Quaternion::i();
    if (c.eat_word("j")) return Quaternion::j();
    if (c.eat_word("k")) return Quaternion::k();
    throw ParseError("expected axis i, j or k", c.pos);
}

Quaternion parse_quat_literal(Cursor& c) {
    c.skip_ws();
    bool neg = c.eat('-');
    Quaternion q;
    if (c.eat_word("e")) {
        c.expect('(');
        Quaternion axis = parse_axis(c);
        c.expect(',');
        long long num = c.integer();
        c.expect('/');
        long long den = c.integer();
        c.expect(')');
        Angle t(num, den);
        if (!t.representable())
            throw UnsupportedAngle(std::to_string(num) + "/" + std::to_string(den) + " of a turn");
        q = exp_axis(axis, t);
    } else if (c.eat_word("1")) {
        q = Quaternion::one();
    } else if (c.eat_word("i")) {
        q = Quaternion::i();
    } else if (c.eat_word("j")) {
        q = Quaternion::j();
    } else if (c.eat_word("k")) {
        q = Quaternion::k();
    } else {
        throw ParseError("expected quaternion literal", c.pos);
    }
    return neg ? -q : q;
}

struct RawIsotropy {
    bool diag = false;
    std::optional<SlopeCircle> circle;
    bool times_h = false;
};

RawIsotropy parse_kg(Cursor& c) {
    RawIsotropy out;
    c.skip_ws();
    if (c.eat_word("DS3")) {
        out.diag = true;
    } else if (c.eat_word("C")) {
        c.expect('(');
        Quaternion axis = parse_axis(c);
        c.expect(',');
        long long p = c.integer();
        c.expect(',');
        long long q = c.integer();
        c.expect(')');
        if (p == 0 && q == 0) throw ParseError("slope (0,0) is not a circle", c.pos);
        if (std::gcd(std::llabs(p), std::llabs(q)) != 1)
            throw ParseError("circle slopes must be coprime", c.pos);
        out.circle = SlopeCircle(axis, p, q);
    } else {
        throw ParseError("expected C(...) or DS3", c.pos);
    }
    if (c.eat('*')) {
        if (!c.eat_word("H")) throw ParseError("expected H after '*'", c.pos);
        out.times_h = true;
    }
    return out;
}

}  // namespace

Diagram parse(const std::string& text) {
    Cursor c{text};
    std::optional<RawIsotropy> km, kp;
    std::optional<std::vector<GroupElement>> hgens;

    while (!c.done()) {
        c.skip_ws();
        if (c.eat_word("K-")) {
            c.expect('=');
            km = parse_kg(c);
        } else if (c.eat_word("K+")) {
            c.expect('=');
            kp = parse_kg(c);
        } else if (c.eat_word("H")) {
            c.expect('=');
            if (!c.eat_word("gen")) throw ParseError("expected gen{...}", c.pos);
            c.expect('{');
            std::vector<GroupElement> gens;
            if (!c.eat('}')) {
                do {
                    c.expect('(');
                    Quaternion l = parse_quat_literal(c);
                    c.expect(',');
                    Quaternion r = parse_quat_literal(c);
                    c.expect(')');
                    gens.push_back({l, r});
                } while (c.eat(','));
                c.expect('}');
            }
            hgens = std::move(gens);
        } else {
            throw ParseError("expected K-, K+ or H", c.pos);
        }
        if (!c.eat(';')) break;
    }
    if (!c.done()) throw ParseError("trailing input", c.pos);
    if (!km || !kp || !hgens) throw ParseError("diagram needs K-, K+ and H", c.pos);

    Diagram d;
    d.h = closure(*hgens);
    auto build = [&](const RawIsotropy& raw) {
        FiniteSubgroup f = raw.times_h ? d.h : FiniteSubgroup::trivial();
        if (raw.diag) return IsotropySubgroup::diag_s3_dot(std::move(f));
        return IsotropySubgroup::circle_dot(*raw.circle, std::move(f));
    };
    d.kminus = build(*km);
    d.kplus = build(*kp);
    return d;
}

// --------------------------------------------------------------- validate

FiniteSubgroup intersect_identity_component(const IsotropySubgroup& k, const FiniteSubgroup& h) {
    switch (k.kind) {
        case IsotropySubgroup::Kind::CircleDot:
            return circle_torsion_intersect(k.circle, h);
        case IsotropySubgroup::Kind::DiagS3Dot: {
            FiniteSubgroup out;
            for (const auto& g : h.elements)
                if (g.left == g.right) out.elements.push_back(g);
            std::sort(out.elements.begin(), out.elements.end());
            return out;
        }
        case IsotropySubgroup::Kind::Finite:
            return FiniteSubgroup::trivial();
    }
    return FiniteSubgroup::trivial();
}

std::vector<TangentLine> lie_line(const IsotropySubgroup& k) {
    switch (k.kind) {
        case IsotropySubgroup::Kind::CircleDot: {
            Vec3 u = Vec3::pure_part(k.circle.axis);
            return {TangentLine{FieldElem(k.circle.p) * u, FieldElem(k.circle.q) * u}};
        }
        case IsotropySubgroup::Kind::DiagS3Dot: {
            Vec3 vi = Vec3::pure_part(Quaternion::i());
            Vec3 vj = Vec3::pure_part(Quaternion::j());
            Vec3 vk = Vec3::pure_part(Quaternion::k());
            return {TangentLine{vi, vi}, TangentLine{vj, vj}, TangentLine{vk, vk}};
        }
        case IsotropySubgroup::Kind::Finite:
            return {};
    }
    return {};
}

namespace {

FiniteSubgroup diagonal_intersect(const FiniteSubgroup& f) {
    FiniteSubgroup out;
    for (const auto& g : f.elements)
        if (g.left == g.right) out.elements.push_back(g);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

void check_isotropy_is_group(const IsotropySubgroup& k, const char* name) {
    if (k.kind == IsotropySubgroup::Kind::CircleDot) {
        if (!normalizes_circle(k.finite, k.circle))
            throw NotASphere(std::string(name) + ": finite part does not normalize the circle");
    } else if (k.kind == IsotropySubgroup::Kind::DiagS3Dot) {
        for (const auto& f : k.finite.elements)
            if (!(f.left == f.right) && !(f.left == -f.right))
                throw NotASphere(std::string(name) + ": finite part does not normalize the diagonal");
    }
}

int fiber_dimension(const IsotropySubgroup& k, const FiniteSubgroup& h, const char* name) {
    switch (k.kind) {
        case IsotropySubgroup::Kind::CircleDot:
            return 1;  // K/H = C/(C cap H), a circle
        case IsotropySubgroup::Kind::DiagS3Dot: {
            // K/H = Delta/(Delta cap H): a 3-sphere only for trivial intersection
            FiniteSubgroup di = diagonal_intersect(h);
            if (di.size() != 1)
                throw NotASphere(std::string(name) +
                                 ": H meets the diagonal, the fiber is a quotient of S^3");
            return 3;
        }
        case IsotropySubgroup::Kind::Finite:
            throw NotASphere(std::string(name) + ": exceptional orbit (finite fiber)");
    }
    return 0;
}

int component_count(const IsotropySubgroup& k) {
    switch (k.kind) {
        case IsotropySubgroup::Kind::CircleDot: {
            FiniteSubgroup cf = circle_torsion_intersect(k.circle, k.finite);
            return static_cast<int>(k.finite.size() / cf.size());
        }
        case IsotropySubgroup::Kind::DiagS3Dot: {
            FiniteSubgroup di = diagonal_intersect(k.finite);
            return static_cast<int>(k.finite.size() / di.size());
        }
        case IsotropySubgroup::Kind::Finite:
            return static_cast<int>(k.finite.size());
    }
    return 1;
}

}  // namespace

ValidationReport validate(const Diagram& d) {
    check_isotropy_is_group(d.kminus, "K-");
    check_isotropy_is_group(d.kplus, "K+");

    for (const auto& g : d.h.elements) {
        if (!d.kminus.contains(g)) throw NotASubgroup("H not contained in K-: " + g.str());
        if (!d.kplus.contains(g)) throw NotASubgroup("H not contained in K+: " + g.str());
    }

    ValidationReport r;
    r.l_minus = fiber_dimension(d.kminus, d.h, "K-");
    r.l_plus = fiber_dimension(d.kplus, d.h, "K+");
    r.components_Kminus = component_count(d.kminus);
    r.components_Kplus = component_count(d.kplus);

    // pi_1(M) = H / <<H cap K0-, H cap K0+>>  (van Kampen over the two disc
    // bundles; see docs/notes.md for the derivation)
    FiniteSubgroup a = intersect_identity_component(d.kminus, d.h);
    FiniteSubgroup b = intersect_identity_component(d.kplus, d.h);
    std::vector<GroupElement> gens = a.elements;
    gens.insert(gens.end(), b.elements.begin(), b.elements.end());
    FiniteSubgroup nc = normal_closure(d.h, gens);
    r.pi1_order = static_cast<long long>(d.h.size() / nc.size());

    FiniteSubgroup z = central_kernel(d.h);
    r.effective_kernel_order = static_cast<long long>(z.size());
    if (z.size() == 4) {
        r.effective_group = EffectiveGroup::SO3xSO3;
    } else if (z.size() == 1) {
        r.effective_group = EffectiveGroup::S3xS3;
    } else {
        GroupElement m{-Quaternion::one(), -Quaternion::one()};
        GroupElement l{-Quaternion::one(), Quaternion::one()};
        if (z.contains(m))
            r.effective_group = EffectiveGroup::SO4;
        else if (z.contains(l))
            r.effective_group = EffectiveGroup::SO3xS3;
        else
            r.effective_group = EffectiveGroup::S3xSO3;
    }
    return r;
}

bool kernel_triviality_check(const Diagram& d) {
    // H_+- = kernel of H acting on K^+-/H = centralizer of K0^+- in H
    auto kernel_side = [&](const IsotropySubgroup& k) {
        std::vector<GroupElement> ker;
        for (const auto& g : d.h.elements) {
            bool central;
            if (k.kind == IsotropySubgroup::Kind::CircleDot) {
                const Quaternion& u = k.circle.axis;
                bool lc = k.circle.p == 0 || g.left.sandwich(u) == u;
                bool rc = k.circle.q == 0 || g.right.sandwich(u) == u;
                central = lc && rc;
            } else if (k.kind == IsotropySubgroup::Kind::DiagS3Dot) {
                central = is_pm_one(g.left) && is_pm_one(g.right);
            } else {
                central = true;
            }
            if (central) ker.push_back(g);
        }
        return ker;
    };
    std::vector<GroupElement> hm = kernel_side(d.kminus);
    std::vector<GroupElement> hp = kernel_side(d.kplus);
    std::sort(hm.begin(), hm.end());
    std::sort(hp.begin(), hp.end());
    std::vector<GroupElement> inter;
    std::set_intersection(hm.begin(), hm.end(), hp.begin(), hp.end(), std::back_inserter(inter));
    // trivial in the effective group = contained in the ineffective kernel
    FiniteSubgroup z = central_kernel(d.h);
    for (const auto& g : inter)
        if (!z.contains(g)) return false;
    return true;
}

// ------------------------------------------------------ equivalence engine

namespace {

bool axis_is_basis(const Quaternion& a) {
    return a == Quaternion::i() || a == Quaternion::j() || a == Quaternion::k();
}

// order used for choosing which circle becomes K-: DiagS3Dot first, then
// lexicographically smaller (p,q)
bool frame_feasible(const Diagram& d) {
    using Kind = IsotropySubgroup::Kind;
    const auto& km = d.kminus;
    const auto& kp = d.kplus;
    if (km.kind == Kind::CircleDot && kp.kind == Kind::CircleDot) {
        if (km.circle.axis == kp.circle.axis) return km.circle.axis == Quaternion::i();
        return km.circle.axis == Quaternion::i() && kp.circle.axis == Quaternion::j();
    }
    if (km.kind == Kind::CircleDot && !(km.circle.axis == Quaternion::i())) return false;
    if (kp.kind == Kind::CircleDot && !(kp.circle.axis == Quaternion::i())) return false;
    return true;
}

std::vector<Quaternion> circle_axes(const Diagram& d) {
    std::vector<Quaternion> a;
    if (d.kminus.kind == IsotropySubgroup::Kind::CircleDot) a.push_back(d.kminus.circle.axis);
    if (d.kplus.kind == IsotropySubgroup::Kind::CircleDot) a.push_back(d.kplus.circle.axis);
    return a;
}

struct Image {
    Diagram d;
    Transform t;
    std::string k;
};

void consider(std::vector<Image>& best, Diagram d, Transform t) {
    if (!frame_feasible(d)) return;
    std::string k = d.key();
    if (best.empty() || k < best.front().k) {
        best.clear();
        best.push_back({std::move(d), std::move(t), std::move(k)});
    }
}

// N(H)_0 moves: rotate the K+ axis about the per-factor centralizer circles
// (conjugation by N(H)_0 = centralizer fixes H elementwise). Only the
// rotated axis is materialized, so eighth-turn torus points stay exact.
// Each image is (left-axis quaternion, negate q) for the rotated circle
// {(e^{p l theta}, e^{q r theta})} with r = +-l.
std::vector<std::pair<Quaternion, bool>> nh0_axis_images(const Diagram& d) {
    std::vector<std::pair<Quaternion, bool>> out;
    if (d.kplus.kind != IsotropySubgroup::Kind::CircleDot) return out;
    auto cf = centralizer_identity(d.h);
    Vec3 v = Vec3::pure_part(d.kplus.circle.axis);

    auto axes_for = [](const CentralizerFactor& f) {
        std::vector<Vec3> axes;
        if (f.type == CentralizerFactor::Type::Circle) axes.push_back(f.axis);
        if (f.type == CentralizerFactor::Type::Full) {
            axes.push_back(Vec3::pure_part(Quaternion::i()));
            axes.push_back(Vec3::pure_part(Quaternion::j()));
            axes.push_back(Vec3::pure_part(Quaternion::k()));
        }
        return axes;
    };

    auto images_about = [&](const std::vector<Vec3>& axes) {
        std::vector<Vec3> imgs{v};
        for (const auto& c : axes)
            for (int t = 1; t < 8; ++t) imgs.push_back(rotate_about(v, c, Angle(t, 8)));
        return imgs;
    };
    auto li = images_about(axes_for(cf[0]));
    auto ri = images_about(axes_for(cf[1]));
    std::set<std::string> seen;
    for (const auto& l : li)
        for (const auto& r : ri) {
            // the rotated circle is representable when the component images agree
            if (!(l == r) && !(l == -r)) continue;
            Quaternion a = l.as_pure();
            if (!a.is_unit()) continue;
            bool negq = !(l == r);
            std::string key = a.str() + (negq ? "-" : "+");
            if (seen.insert(key).second) out.push_back({a, negq});
        }
    return out;
}

Diagram with_kplus_axis(const Diagram& d, const Quaternion& axis, bool negate_q) {
    Diagram out = d;
    out.kplus.circle =
        SlopeCircle(axis, d.kplus.circle.p, negate_q ? -d.kplus.circle.q : d.kplus.circle.q);
    return out;
}

std::optional<Image> one_round(const Diagram& d0) {
    std::vector<Image> best;

    for (int ks = 0; ks < 2; ++ks) {
        Diagram d1 = ks ? d0.kswapped() : d0;
        for (int fs = 0; fs < 2; ++fs) {
            Diagram d2 = fs ? d1.factor_swapped() : d1;

            std::vector<std::pair<Diagram, bool>> pre{{d2, false}};
            // open the N(H)_0 gate only for off-basis axes
            auto axes = circle_axes(d2);
            bool all_basis = std::all_of(axes.begin(), axes.end(), axis_is_basis);
            if (!all_basis && d2.kplus.kind == IsotropySubgroup::Kind::CircleDot) {
                for (const auto& [a, negq] : nh0_axis_images(d2))
                    pre.push_back({with_kplus_axis(d2, a, negq), true});
            }

            for (const auto& [d3, rotated] : pre) {
                auto ax3 = circle_axes(d3);
                const auto& rots = witness_rotations();
                // precomputed axis images per +-conjugation class; a class is
                // usable only if it moves every circle axis to a basis axis
                std::vector<std::array<Quaternion, 2>> img(rots.size());
                std::vector<bool> usable(rots.size(), true);
                for (size_t r = 0; r < rots.size(); ++r)
                    for (size_t a = 0; a < ax3.size(); ++a) {
                        Quaternion im = rots[r].sandwich(ax3[a]);
                        if (!axis_is_basis(im) && !axis_is_basis(-im)) {
                            usable[r] = false;
                            break;
                        }
                        img[r][a] = im;
                    }
                using Kind = IsotropySubgroup::Kind;
                bool needs_diag =
                    d3.kminus.kind == Kind::DiagS3Dot || d3.kplus.kind == Kind::DiagS3Dot;
                size_t n_minus_axes = d3.kminus.kind == Kind::CircleDot ? 1 : 0;

                auto normalized = [](const Quaternion& a) {
                    int s = a.x.sign() != 0 ? a.x.sign() : (a.y.sign() != 0 ? a.y.sign() : a.z.sign());
                    return s < 0 ? -a : a;
                };

                for (size_t r1 = 0; r1 < rots.size(); ++r1) {
                    if (!usable[r1]) continue;
                    for (size_t r2 = 0; r2 < rots.size(); ++r2) {
                        if (!usable[r2]) continue;
                        if (needs_diag && r1 != r2) continue;
                        // frame test on stored images only
                        std::optional<Quaternion> am, ap;
                        bool ok = true;
                        auto axis_of = [&](size_t idx) -> std::optional<Quaternion> {
                            const Quaternion& ul = img[r1][idx];
                            const Quaternion& ur = img[r2][idx];
                            if (!(ul == ur) && !(ul == -ur)) return std::nullopt;
                            return normalized(ul);
                        };
                        if (d3.kminus.kind == Kind::CircleDot) {
                            am = axis_of(0);
                            if (!am) ok = false;
                        }
                        if (ok && d3.kplus.kind == Kind::CircleDot) {
                            ap = axis_of(n_minus_axes);
                            if (!ap) ok = false;
                        }
                        if (!ok) continue;
                        if (am && ap) {
                            if (*am == *ap) ok = *am == Quaternion::i();
                            else ok = *am == Quaternion::i() && *ap == Quaternion::j();
                        } else if (am) {
                            ok = *am == Quaternion::i();
                        } else if (ap) {
                            ok = *ap == Quaternion::i();
                        }
                        if (!ok) continue;

                        GroupElement b{rots[r1], rots[r2]};
                        auto d4 = d3.conjugated(b);
                        if (!d4) continue;
                        Transform t;
                        t.kswap = ks;
                        t.factor_swap = fs;
                        if (ks) t.steps.push_back("swap K- and K+");
                        if (fs) t.steps.push_back("swap the two S^3 factors");
                        if (rotated) t.steps.push_back("rotate K+ axis through N(H)_0");
                        t.steps.push_back("conjugate by (" + rots[r1].str() + "," + rots[r2].str() + ")");
                        consider(best, std::move(*d4), std::move(t));
                    }
                }
            }
        }
    }
    if (best.empty()) return std::nullopt;
    return best.front();
}

}  // namespace

std::string Transform::describe() const {
    if (steps.empty()) return "identity";
    std::string s;
    for (size_t n = 0; n < steps.size(); ++n) {
        if (n) s += "; ";
        s += steps[n];
    }
    return s;
}

CanonicalResult canonical_form_with_transform(const Diagram& d) {
    Diagram cur = d;
    Transform total;
    std::string cur_key;
    bool have = false;
    for (int round = 0; round < 8; ++round) {
        auto img = one_round(cur);
        if (!img) {
            if (have) break;
            throw NonCanonicalizable("no witness move aligns the axes of " + d.key());
        }
        if (have && !(img->k < cur_key)) break;  // fixpoint
        cur = img->d;
        cur_key = img->k;
        total.kswap ^= img->t.kswap;
        total.factor_swap ^= img->t.factor_swap;
        total.steps.insert(total.steps.end(), img->t.steps.begin(), img->t.steps.end());
        have = true;
    }
    return {cur, total};
}

Diagram canonical_form(const Diagram& d) { return canonical_form_with_transform(d).diagram; }

EquivalenceResult equivalent(const Diagram& d1, const Diagram& d2) {
    CanonicalResult c1, c2;
    try {
        c1 = canonical_form_with_transform(d1);
        c2 = canonical_form_with_transform(d2);
    } catch (const NonCanonicalizable&) {
        return {EquivalenceVerdict::NotIdentified, "a side is not canonicalizable by the witness set"};
    }
    if (c1.diagram.key() == c2.diagram.key()) {
        return {EquivalenceVerdict::Equivalent,
                "left: " + c1.transform.describe() + " | right: " + c2.transform.describe()};
    }
    auto signature = [](const Diagram& d) -> std::optional<std::string> {
        try {
            ValidationReport r = validate(d);
            std::ostringstream os;
            os << r.l_minus << "," << r.l_plus << "," << r.pi1_order << ","
               << r.effective_kernel_order << "," << d.h.size();
            return os.str();
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    auto s1 = signature(d1), s2 = signature(d2);
    if (s1 && s2 && *s1 != *s2)
        return {EquivalenceVerdict::Distinct, "invariants differ: " + *s1 + " vs " + *s2};
    return {EquivalenceVerdict::NotIdentified,
            "canonical forms differ but invariants agree; witness set inconclusive"};
}

}  // namespace cohom1
