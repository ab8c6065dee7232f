#pragma once

#include <stdexcept>
#include <string>

namespace cohom1 {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in Q(sqrt2)") {}
};

// Raised whenever a requested angle has cosine/sine outside Q(sqrt2).
struct UnsupportedAngle : Error {
    explicit UnsupportedAngle(const std::string& msg) : Error("unsupported angle: " + msg) {}
};

struct ClosureExceedsCap : Error {
    explicit ClosureExceedsCap(const std::string& msg) : Error("closure exceeds cap: " + msg) {}
};

struct ParseError : Error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : Error("parse error at " + std::to_string(pos) + ": " + msg), position(pos) {}
};

struct NotASubgroup : Error {
    explicit NotASubgroup(const std::string& msg) : Error("not a subgroup: " + msg) {}
};

struct NotASphere : Error {
    explicit NotASphere(const std::string& msg) : Error("singular fiber is not a sphere: " + msg) {}
};

struct NoRepresentative : Error {
    explicit NoRepresentative(const std::string& msg) : Error("no involution representative: " + msg) {}
};

struct OrderExceedsCap : Error {
    explicit OrderExceedsCap(const std::string& msg) : Error("dihedral order exceeds cap: " + msg) {}
};

struct NonIntegralEntry : Error {
    explicit NonIntegralEntry(const std::string& msg) : Error("non-integral matrix entry: " + msg) {}
};

struct FamilyMismatch : Error {
    explicit FamilyMismatch(const std::string& msg) : Error("family mismatch: " + msg) {}
};

struct InternalInconsistency : Error {
    explicit InternalInconsistency(const std::string& msg) : Error("internal inconsistency: " + msg) {}
};

struct UnknownEntry : Error {
    explicit UnknownEntry(const std::string& msg) : Error("unknown catalog entry: " + msg) {}
};

struct NonCanonicalizable : Error {
    explicit NonCanonicalizable(const std::string& msg) : Error("not canonicalizable: " + msg) {}
};

}  // namespace cohom1
