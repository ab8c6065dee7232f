#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

#include "cohom1/errors.hpp"

namespace cohom1 {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// An element a + b*sqrt(2) of the real quadratic field Q(sqrt2),
/// with exact rational coordinates. Every group coordinate in this
/// library lives here; there is no floating point anywhere.
struct FieldElem {
    Rat a;  // rational part
    Rat b;  // coefficient of sqrt(2)

    FieldElem() : a(0), b(0) {}
    FieldElem(Rat ra, Rat rb) : a(std::move(ra)), b(std::move(rb)) {}
    explicit FieldElem(long long n) : a(n), b(0) {}

    static FieldElem zero() { return FieldElem(); }
    static FieldElem one() { return FieldElem(1); }
    /// 1/sqrt(2) = 0 + (1/2) sqrt(2); the coordinate of e^{i pi/4}.
    static FieldElem inv_sqrt2() { return FieldElem(Rat(0), Rat(1, 2)); }

    bool is_zero() const { return a == 0 && b == 0; }

    friend FieldElem operator+(const FieldElem& x, const FieldElem& y) {
        return {x.a + y.a, x.b + y.b};
    }
    friend FieldElem operator-(const FieldElem& x, const FieldElem& y) {
        return {x.a - y.a, x.b - y.b};
    }
    FieldElem operator-() const { return {-a, -b}; }
    friend FieldElem operator*(const FieldElem& x, const FieldElem& y) {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s  with s^2 = 2
        return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
    }

    /// Field conjugate a - b*sqrt(2).
    FieldElem conj() const { return {a, -b}; }

    /// Field norm a^2 - 2 b^2; zero only for the zero element.
    Rat field_norm() const { return a * a - 2 * b * b; }

    FieldElem inverse() const {
        if (is_zero()) throw DivisionByZero();
        Rat n = field_norm();  // nonzero: sqrt(2) is irrational
        return {a / n, -b / n};
    }
    friend FieldElem operator/(const FieldElem& x, const FieldElem& y) { return x * y.inverse(); }

    FieldElem& operator+=(const FieldElem& y) { return *this = *this + y; }
    FieldElem& operator-=(const FieldElem& y) { return *this = *this - y; }
    FieldElem& operator*=(const FieldElem& y) { return *this = *this * y; }

    bool operator==(const FieldElem& o) const { return a == o.a && b == o.b; }

    /// Sign of the real number a + b*sqrt(2): -1, 0 or +1, decided exactly.
    int sign() const {
        int sa = a.sign(), sb = b.sign();
        if (sa == 0 && sb == 0) return 0;
        if (sa >= 0 && sb >= 0) return 1;
        if (sa <= 0 && sb <= 0) return -1;
        // mixed signs: compare a^2 with 2 b^2
        Rat d = a * a - 2 * b * b;
        int sd = d.sign();
        return sa > 0 ? sd : -sd;  // a>0,b<0: a+b*sqrt2 > 0 iff a^2 > 2b^2
    }

    /// Structural total order (lexicographic on (a, b)), used for set keys.
    friend bool operator<(const FieldElem& x, const FieldElem& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }

    std::string str() const;
};

/// Quaternion w + x i + y j + z k over Q(sqrt2).
struct Quaternion {
    FieldElem w, x, y, z;

    Quaternion() : w(FieldElem::one()) {}
    Quaternion(FieldElem w_, FieldElem x_, FieldElem y_, FieldElem z_)
        : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    static Quaternion one() { return {FieldElem::one(), {}, {}, {}}; }
    static Quaternion i() { return {{}, FieldElem::one(), {}, {}}; }
    static Quaternion j() { return {{}, {}, FieldElem::one(), {}}; }
    static Quaternion k() { return {{}, {}, {}, FieldElem::one()}; }

    friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
                p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
                p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
                p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
    }
    friend Quaternion operator+(const Quaternion& p, const Quaternion& q) {
        return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
    }
    Quaternion operator-() const { return {-w, -x, -y, -z}; }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    FieldElem norm() const { return w * w + x * x + y * y + z * z; }

    Quaternion inverse() const {
        FieldElem n = norm();
        if (n.is_zero()) throw DivisionByZero();
        if (n == FieldElem::one()) return conj();
        FieldElem ni = n.inverse();
        Quaternion c = conj();
        return {c.w * ni, c.x * ni, c.y * ni, c.z * ni};
    }

    bool is_unit() const { return norm() == FieldElem::one(); }
    bool is_pure() const { return w.is_zero(); }
    bool is_one() const { return *this == one(); }

    /// v |-> q v q^{-1}; for unit q a rotation of the pure part.
    Quaternion sandwich(const Quaternion& v) const { return *this * v * inverse(); }

    bool operator==(const Quaternion& o) const {
        return w == o.w && x == o.x && y == o.y && z == o.z;
    }
    friend bool operator<(const Quaternion& p, const Quaternion& q) {
        if (!(p.w == q.w)) return p.w < q.w;
        if (!(p.x == q.x)) return p.x < q.x;
        if (!(p.y == q.y)) return p.y < q.y;
        return p.z < q.z;
    }

    std::string str() const;
};

/// A point of S^3 x S^3: a pair of unit quaternions.
struct GroupElement {
    Quaternion left, right;

    GroupElement() = default;
    GroupElement(Quaternion l, Quaternion r) : left(std::move(l)), right(std::move(r)) {}

    static GroupElement identity() { return {Quaternion::one(), Quaternion::one()}; }

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        return {g.left * h.left, g.right * h.right};
    }
    GroupElement inverse() const { return {left.inverse(), right.inverse()}; }
    GroupElement operator-() const { return {-left, -right}; }

    /// Component-wise conjugation g x g^{-1}.
    GroupElement conjugate(const GroupElement& x) const {
        return {left.sandwich(x.left), right.sandwich(x.right)};
    }

    bool is_identity() const { return left.is_one() && right.is_one(); }
    bool is_unit() const { return left.is_unit() && right.is_unit(); }

    /// Order of the element, or 0 if it exceeds `cap`.
    int order(int cap = 64) const;

    bool operator==(const GroupElement& o) const { return left == o.left && right == o.right; }
    friend bool operator<(const GroupElement& g, const GroupElement& h) {
        if (!(g.left == h.left)) return g.left < h.left;
        return g.right < h.right;
    }

    std::string str() const { return "(" + left.str() + "," + right.str() + ")"; }
};

/// A fraction t/n of a full turn, reduced mod 1. Angles are exact-only:
/// the representable denominators are 1, 2, 4, 8 (the pi/4 grid).
struct Angle {
    long long num = 0;
    long long den = 1;

    Angle() = default;
    Angle(long long t, long long n);  // reduces t/n mod 1; requires n != 0

    bool representable() const { return den == 1 || den == 2 || den == 4 || den == 8; }

    friend Angle operator+(const Angle& s, const Angle& t) {
        return Angle(s.num * t.den + t.num * s.den, s.den * t.den);
    }
    friend Angle operator*(long long m, const Angle& t) { return Angle(m * t.num, t.den); }
    bool operator==(const Angle& o) const { return num == o.num && den == o.den; }
};

/// cos(2 pi t) + u sin(2 pi t) for a pure unit axis u.
/// Throws UnsupportedAngle when the angle leaves the pi/4 grid.
Quaternion exp_axis(const Quaternion& axis, const Angle& t);

/// Exact cos/sin of 2 pi t on the pi/4 grid.
FieldElem cos_turn(const Angle& t);
FieldElem sin_turn(const Angle& t);

}  // namespace cohom1
