#pragma once

#include <stdexcept>
#include <string>

namespace ncalg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotInvertible : Error {
    NotInvertible() : Error("element is not invertible") {}
    explicit NotInvertible(const std::string& what) : Error(what) {}
};

struct VariableMismatch : Error {
    explicit VariableMismatch(const std::string& what) : Error(what) {}
};

struct NonzeroConstantTerm : Error {
    NonzeroConstantTerm() : Error("exponential requires a zero constant term") {}
};

struct ConstantTermNotOne : Error {
    ConstantTermNotOne() : Error("factor series must have constant term one") {}
};

/// First prefix f_1..f_m whose Wronski/Vandermonde matrix is singular.
struct DegeneratePrefix : Error {
    int prefix;
    explicit DegeneratePrefix(int m)
        : Error("degenerate prefix of length " + std::to_string(m)), prefix(m) {}
};

struct DegenerateKernel : Error {
    DegenerateKernel() : Error("kernel family has a singular Wronski matrix") {}
};

struct DegenerateData : Error {
    explicit DegenerateData(const std::string& what) : Error(what) {}
};

struct SymmetryViolated : Error {
    explicit SymmetryViolated(const std::string& what) : Error(what) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error(what) {}
};

/// A flow left its invariant subspace; indicates an arithmetic bug, not bad input.
struct TangencyViolation : Error {
    explicit TangencyViolation(const std::string& what) : Error(what) {}
};

struct FloorTooShallow : Error {
    explicit FloorTooShallow(const std::string& what) : Error(what) {}
};

/// A certificate would be asserted on an empty coefficient window.
struct TruncationTooShallow : Error {
    explicit TruncationTooShallow(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace ncalg
