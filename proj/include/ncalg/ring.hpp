#pragma once

#include <concepts>
#include <optional>
#include <string>

#include "ncalg/errors.hpp"

namespace ncalg {

/// Symbolic variable tag. Series arithmetic checks tags at runtime; a mismatch
/// is an error, never a silent coercion.
struct Var {
    char name{'?'};
    bool operator==(const Var&) const = default;
    std::string str() const { return std::string(1, name); }
};

namespace vars {
inline constexpr Var t{'t'};
inline constexpr Var u{'u'};
inline constexpr Var v{'v'};
inline constexpr Var x{'x'};
} // namespace vars

/// Minimal ring capability shared by the scalar algebra and the series rings.
/// zero_like/one_like carry the runtime shape (dimension, variables, orders)
/// that a static zero()/one() could not.
template <class R>
concept Ring = requires(const R a, const R b) {
    { a + b } -> std::same_as<R>;
    { a - b } -> std::same_as<R>;
    { a * b } -> std::same_as<R>;
    { -a } -> std::same_as<R>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.zero_like() } -> std::same_as<R>;
    { a.one_like() } -> std::same_as<R>;
    { a.try_inverse() } -> std::same_as<std::optional<R>>;
};

template <class R>
concept StarRing = Ring<R> && requires(const R a) {
    { a.star() } -> std::same_as<R>;
};

/// Ring with a derivation and the matching definite integral from 0.
template <class R>
concept DifferentialRing = Ring<R> && requires(const R a, Var w) {
    { a.derive(w) } -> std::same_as<R>;
    { a.integrate(w) } -> std::same_as<R>;
};

template <Ring R>
R ring_inverse(const R& x) {
    auto inv = x.try_inverse();
    if (!inv) throw NotInvertible();
    return *inv;
}

} // namespace ncalg
