#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "ncalg/errors.hpp"

namespace ncalg {

/// Arbitrary-precision rational, always kept canonical: gcd(|num|, den) = 1, den > 0.
/// Backed by GMP's mpq layer; this wrapper pins the canonical-form invariant and
/// the exact textual format used by the matrix literal syntax.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {} // NOLINT(google-explicit-constructor)
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw Error("zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Accepts "p", "-p", "p/q" in base 10.
    static Rational parse(const std::string& text) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal: " + text);
        if (q.get_den() == 0) throw ParseError("zero denominator: " + text);
        q.canonicalize();
        return Rational(q);
    }

    std::string str() const { return v_.get_str(); }
    double to_double() const { return v_.get_d(); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    /// Decimal digit count of |numerator| (0 for zero); used by residual tables.
    int numerator_digits() const {
        if (is_zero()) return 0;
        return static_cast<int>(mpz_sizeinbase(v_.get_num().get_mpz_t(), 10));
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    // mpq arithmetic keeps canonical operands canonical; skip re-reduction
    Rational operator-() const { return Rational(-v_, NoCanon{}); }
    Rational operator+(const Rational& o) const { return Rational(v_ + o.v_, NoCanon{}); }
    Rational operator-(const Rational& o) const { return Rational(v_ - o.v_, NoCanon{}); }
    Rational operator*(const Rational& o) const { return Rational(v_ * o.v_, NoCanon{}); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw NotInvertible("division by zero");
        return Rational(v_ / o.v_, NoCanon{});
    }
    Rational& operator+=(const Rational& o) {
        v_ += o.v_;
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        v_ -= o.v_;
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        v_ *= o.v_;
        return *this;
    }

    std::optional<Rational> try_inverse() const {
        if (is_zero()) return std::nullopt;
        return Rational(1 / v_, NoCanon{});
    }

    Rational abs() const { return Rational(::abs(v_), NoCanon{}); }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

  private:
    struct NoCanon {};
    Rational(mpq_class q, NoCanon) : v_(std::move(q)) {}
    template <class Expr>
    Rational(const Expr& e, NoCanon) : v_(e) {}

    mpq_class v_;
};

inline Rational operator*(long n, const Rational& r) { return Rational(n) * r; }

} // namespace ncalg
