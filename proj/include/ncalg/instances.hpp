#pragma once

// Deterministic seeded instance builders used by the test suites and the CLI.
// Every draw-until-valid loop is bounded and fully determined by the seed.

#include <cstdint>
#include <vector>

#include "ncalg/algebra.hpp"
#include "ncalg/diffop.hpp"
#include "ncalg/errors.hpp"
#include "ncalg/ncmatrix.hpp"
#include "ncalg/psdo.hpp"
#include "ncalg/series.hpp"
#include "ncalg/soliton.hpp"
#include "ncalg/toda.hpp"

namespace ncalg {

inline AlgebraElement random_invertible(SeededRng& rng, int dim, long bound) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        AlgebraElement x = rng.element(dim, bound);
        if (x.try_inverse()) return x;
    }
    throw Error("no invertible element drawn");
}

inline AlgebraElement random_skew(SeededRng& rng, int dim, long bound) {
    AlgebraElement k(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const Rational v(rng.int_in(-bound, bound));
            k.at(i, j) = v;
            k.at(j, i) = -v;
        }
    return k;
}

/// Cayley transform of a skew matrix: exactly orthogonal over the rationals.
inline AlgebraElement random_orthogonal(SeededRng& rng, int dim, long bound) {
    const AlgebraElement k = random_skew(rng, dim, bound);
    const AlgebraElement id = AlgebraElement::identity(dim);
    return (id - k) * (id + k).inverse();
}

inline TruncSeries1 random_poly1(SeededRng& rng, Var v, int degree, int order, int dim,
                                 long bound) {
    TruncSeries1 f(v, order, order, dim);
    for (int i = 0; i <= std::min(degree, order); ++i) f.set_coeff(i, rng.element(dim, bound));
    return f;
}

inline TruncSeries1 random_unit_poly1(SeededRng& rng, Var v, int degree, int order, int dim,
                                      long bound) {
    TruncSeries1 f = random_poly1(rng, v, degree, order, dim, bound);
    f.set_coeff(0, AlgebraElement::identity(dim));
    return f;
}

/// Polynomial family whose Wronski prefixes are all invertible at 0.
inline std::vector<TruncSeries1> random_kernel_family(SeededRng& rng, int n, Var v, int degree,
                                                      int order, int dim, long bound) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<TruncSeries1> f;
        f.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) f.push_back(random_poly1(rng, v, degree, order, dim, bound));
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i) {
            std::vector<TruncSeries1> prefix(f.begin(), f.begin() + i);
            ok = wronski(prefix, v)
                     .map([](const TruncSeries1& s) { return s.constant_term(); })
                     .try_inverse()
                     .has_value();
        }
        if (ok) return f;
    }
    throw Error("no nondegenerate kernel family drawn");
}

inline std::vector<AlgebraElement> random_generic_roots(SeededRng& rng, int n, int dim,
                                                        long bound) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<AlgebraElement> xs;
        xs.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) xs.push_back(rng.element(dim, bound));
        try {
            (void)vieta_y(xs);
            return xs;
        } catch (const DegeneratePrefix&) {
        }
    }
    throw Error("no generic root set drawn");
}

/// Polynomial initial data with matching invertible corners.
inline TodaInitial random_toda_initial(SeededRng& rng, int n, int degree, int u_order,
                                       int v_order, int dim, long bound) {
    TodaInitial init;
    for (int i = 0; i < n; ++i) {
        const AlgebraElement a = random_invertible(rng, dim, bound);
        TruncSeries1 eta = random_poly1(rng, vars::v, degree, v_order, dim, bound);
        TruncSeries1 psi = random_poly1(rng, vars::u, degree, u_order, dim, bound);
        eta.set_coeff(0, a);
        psi.set_coeff(0, a);
        init.eta.push_back(eta);
        init.psi.push_back(psi);
    }
    return init;
}

/// Half data for the symmetric systems. Type C: k free pairs. Type B: k free
/// pairs plus a middle pair of the exact unitary type a * exp(skew * var).
inline TodaInitial random_sym_initial(SeededRng& rng, TodaType type, int k, int degree,
                                      int u_order, int v_order, int dim, long bound) {
    if (type == TodaType::A) throw Error("symmetric data needs type B or C");
    TodaInitial init = random_toda_initial(rng, k, degree, u_order, v_order, dim, bound);
    if (type == TodaType::B) {
        const AlgebraElement a = random_orthogonal(rng, dim, bound);
        const AlgebraElement s1 = random_skew(rng, dim, bound);
        const AlgebraElement s2 = random_skew(rng, dim, bound);
        init.eta.push_back(
            TruncSeries1::monomial(vars::v, v_order, v_order, 1, s1).exp().left_mul(a));
        init.psi.push_back(
            TruncSeries1::monomial(vars::u, u_order, u_order, 1, s2).exp().left_mul(a));
    }
    return init;
}

/// Sum of `rank` separable products q_i(v) p_i(u), v-factor on the left: the
/// order that the recursion of the infinite system detects over a
/// noncommutative coefficient algebra.
inline TruncSeries2 random_rank_kernel(SeededRng& rng, int rank, int u_order, int v_order,
                                       int dim, long bound) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        TruncSeries2 f(vars::u, vars::v, u_order, v_order, u_order, v_order, dim);
        for (int i = 0; i < rank; ++i) {
            const TruncSeries1 p = random_poly1(rng, vars::u, u_order, u_order, dim, bound);
            const TruncSeries1 q = random_poly1(rng, vars::v, v_order, v_order, dim, bound);
            f = f + lift(q, vars::u, vars::v, u_order, u_order) *
                        lift(p, vars::u, vars::v, v_order, v_order);
        }
        try {
            if (kernel_rank_check(f, rank)) return f;
        } catch (const DegenerateData&) {
        } catch (const TruncationTooShallow&) {
        }
    }
    throw Error("no generic separable kernel drawn");
}

/// KdV-reduced soliton data (beta = -alpha) with a generic generator family.
inline SolitonSpec random_kdv_spec(SeededRng& rng, int count, int dim, long bound, int x_order,
                                   int t_order) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        SolitonSpec spec;
        spec.count = count;
        spec.x_order = x_order;
        spec.t_order = t_order;
        for (int s = 0; s < count; ++s) {
            const AlgebraElement alpha = random_invertible(rng, dim, bound);
            spec.alphas.push_back(alpha);
            spec.betas.push_back(-alpha);
            spec.amps.push_back(random_invertible(rng, dim, bound));
        }
        if (count == 0) return spec;
        const auto ys = soliton_generators(spec);
        bool ok = true;
        for (int i = 1; i <= count && ok; ++i) {
            std::vector<TruncSeries2> prefix(ys.begin(), ys.begin() + i);
            ok = wronski(prefix, vars::x)
                     .map([](const TruncSeries2& s) { return s.constant_term(); })
                     .try_inverse()
                     .has_value();
        }
        if (ok) return spec;
    }
    throw Error("no generic soliton data drawn");
}

/// Random hierarchy-shaped operator with polynomial tail coefficients.
inline PsDO<TruncSeries1> random_kp_operator(SeededRng& rng, int x_order, int dim, long bound,
                                             int floor) {
    TruncSeries1 proto(vars::x, x_order, x_order, dim);
    PsDO<TruncSeries1> l(vars::x, floor, 1, false, proto);
    l.set_coeff(1, proto.one_like());
    for (int k = -1; k >= floor; --k)
        l.set_coeff(k, random_poly1(rng, vars::x, x_order, x_order, dim, bound));
    return l;
}

/// Random reduced operator of the stated shape: monic order n, no subleading
/// term, polynomial lower coefficients.
inline PsDO<TruncSeries1> random_nkdv_operator(SeededRng& rng, int n, int x_order, int dim,
                                               long bound) {
    TruncSeries1 proto(vars::x, x_order, x_order, dim);
    PsDO<TruncSeries1> m(vars::x, 0, n, true, proto);
    m.set_coeff(n, proto.one_like());
    for (int k = n - 2; k >= 0; --k)
        m.set_coeff(k, random_poly1(rng, vars::x, x_order, x_order, dim, bound));
    return m;
}

} // namespace ncalg
