#include "cohom1/qfield.hpp"

#include <numeric>
#include <sstream>

namespace cohom1 {

std::string FieldElem::str() const {
    std::ostringstream os;
    if (b == 0) {
        os << a;
    } else if (a == 0) {
        os << b << "*s2";
    } else {
        os << a << (b > 0 ? "+" : "") << b << "*s2";
    }
    return os.str();
}

std::string Quaternion::str() const {
    std::ostringstream os;
    os << "[" << w.str() << "," << x.str() << "," << y.str() << "," << z.str() << "]";
    return os.str();
}

int GroupElement::order(int cap) const {
    GroupElement p = *this;
    for (int n = 1; n <= cap; ++n) {
        if (p.is_identity()) return n;
        p = p * *this;
    }
    return 0;
}

Angle::Angle(long long t, long long n) {
    if (n == 0) throw Error("angle with zero denominator");
    if (n < 0) {
        n = -n;
        t = -t;
    }
    t %= n;
    if (t < 0) t += n;
    long long g = std::gcd(t, n);
    num = t / g;
    den = n / g;
}

FieldElem cos_turn(const Angle& t) {
    if (!t.representable()) throw UnsupportedAngle("cos of " + std::to_string(t.num) + "/" + std::to_string(t.den) + " turn");
    long long e = t.num * (8 / t.den);  // eighths of a turn, 0..7
    static const int table[8] = {2, 1, 0, -1, -2, -1, 0, 1};  // 2*cos in units of {1, 1/sqrt2}
    int v = table[e];
    if (v == 2 || v == -2) return FieldElem(Rat(v / 2), Rat(0));
    if (v == 0) return FieldElem::zero();
    FieldElem s = FieldElem::inv_sqrt2();
    return v > 0 ? s : -s;
}

FieldElem sin_turn(const Angle& t) {
    if (!t.representable()) throw UnsupportedAngle("sin of " + std::to_string(t.num) + "/" + std::to_string(t.den) + " turn");
    long long e = t.num * (8 / t.den);  // eighths of a turn, 0..7
    static const int table[8] = {0, 1, 2, 1, 0, -1, -2, -1};
    int v = table[e];
    if (v == 2 || v == -2) return FieldElem(Rat(v / 2), Rat(0));
    if (v == 0) return FieldElem::zero();
    FieldElem s = FieldElem::inv_sqrt2();
    return v > 0 ? s : -s;
}

Quaternion exp_axis(const Quaternion& axis, const Angle& t) {
    if (!axis.is_pure() || !axis.is_unit())
        throw Error("exp_axis requires a pure unit axis");
    FieldElem c = cos_turn(t);
    FieldElem s = sin_turn(t);
    return {c, s * axis.x, s * axis.y, s * axis.z};
}

}  // namespace cohom1
