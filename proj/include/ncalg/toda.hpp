#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncalg/diffop.hpp"
#include "ncalg/errors.hpp"
#include "ncalg/ncmatrix.hpp"
#include "ncalg/series.hpp"

namespace ncalg {

// Convention for bivariate Toda data: var1 of every TruncSeries2 is the u
// direction (the outer derivative of the system), var2 is the v direction
// (the derivation used in Wronski matrices and Lax factors).

enum class TodaType { A, B, C };

inline std::string toda_type_name(TodaType t) {
    switch (t) {
        case TodaType::A: return "A";
        case TodaType::B: return "B";
        default: return "C";
    }
}

/// Initial data: eta_i(v) = phi_i(0,v), psi_i(u) = phi_i(u,0) with
/// eta_i(0) = psi_i(0) invertible.
struct TodaInitial {
    std::vector<TruncSeries1> eta; // series in v
    std::vector<TruncSeries1> psi; // series in u
};

struct TodaSolution {
    std::vector<TruncSeries2> phi;
    TodaType type = TodaType::A;
    int half = 0; // unknown count of the symmetric system (k, or k+1 for B)

    std::pair<int, int> reliable_orders() const {
        int n1 = phi[0].order1(), n2 = phi[0].order2();
        for (const auto& p : phi) {
            n1 = std::min(n1, p.order1());
            n2 = std::min(n2, p.order2());
        }
        return {n1, n2};
    }
};

struct DeltaTheta {
    NCMatrix<TruncSeries1> delta;
    NCMatrix<TruncSeries1> theta;
};

namespace detail {

inline void check_nonvacuous2(const TruncSeries2& f, const char* what) {
    if (f.empty()) throw TruncationTooShallow(std::string(what) + ": empty coefficient window");
}

} // namespace detail

/// Residuals of the length-n system: per unknown j, the u-derivative of the
/// logarithmic v-derivative minus the nearest-neighbor right-hand side. The
/// n = 1 degeneration keeps the left side and drops both missing neighbors.
inline std::vector<TruncSeries2> toda_residual_a(const std::vector<TruncSeries2>& phi) {
    if (phi.empty()) throw Error("empty solution vector");
    const int n = static_cast<int>(phi.size());
    const Var uu = phi[0].var1(), vv = phi[0].var2();
    std::vector<TruncSeries2> inv;
    inv.reserve(phi.size());
    for (const auto& p : phi) inv.push_back(p.inverse());
    std::vector<TruncSeries2> res;
    res.reserve(phi.size());
    for (int j = 0; j < n; ++j) {
        TruncSeries2 lhs = (phi[static_cast<size_t>(j)].derive(vv) * inv[static_cast<size_t>(j)])
                               .derive(uu);
        TruncSeries2 rhs = lhs.zero_like();
        if (j + 1 < n) rhs = rhs + phi[static_cast<size_t>(j + 1)] * inv[static_cast<size_t>(j)];
        if (j > 0) rhs = rhs - phi[static_cast<size_t>(j)] * inv[static_cast<size_t>(j - 1)];
        res.push_back(lhs - rhs);
    }
    return res;
}

/// Residuals of the C_k system in the unknowns phi_1..phi_k.
inline std::vector<TruncSeries2> toda_residual_c(const std::vector<TruncSeries2>& phi, int k) {
    if (static_cast<int>(phi.size()) < k || k < 1) throw Error("bad unknown count");
    const Var uu = phi[0].var1(), vv = phi[0].var2();
    std::vector<TruncSeries2> res;
    res.reserve(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        const TruncSeries2 invj = phi[static_cast<size_t>(j)].inverse();
        TruncSeries2 lhs = (phi[static_cast<size_t>(j)].derive(vv) * invj).derive(uu);
        TruncSeries2 rhs = lhs.zero_like();
        if (j + 1 < k)
            rhs = rhs + phi[static_cast<size_t>(j + 1)] * invj;
        else
            rhs = rhs + phi[static_cast<size_t>(j)].star().inverse() * invj;
        if (j > 0) rhs = rhs - phi[static_cast<size_t>(j)] * phi[static_cast<size_t>(j - 1)].inverse();
        res.push_back(lhs - rhs);
    }
    return res;
}

/// Residuals of the B_k system in the unknowns phi_1..phi_{k+1}; the middle
/// clause uses the star of the middle unknown literally as displayed.
inline std::vector<TruncSeries2> toda_residual_b(const std::vector<TruncSeries2>& phi, int k) {
    if (static_cast<int>(phi.size()) < k + 1 || k < 1) throw Error("bad unknown count");
    const Var uu = phi[0].var1(), vv = phi[0].var2();
    std::vector<TruncSeries2> res;
    res.reserve(static_cast<size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        const TruncSeries2 invj = phi[static_cast<size_t>(j)].inverse();
        TruncSeries2 lhs = (phi[static_cast<size_t>(j)].derive(vv) * invj).derive(uu);
        TruncSeries2 rhs = lhs.zero_like();
        if (j < k)
            rhs = rhs + phi[static_cast<size_t>(j + 1)] * invj;
        else
            rhs = rhs + phi[static_cast<size_t>(j - 1)].star().inverse() *
                            phi[static_cast<size_t>(j)].star();
        if (j > 0) rhs = rhs - phi[static_cast<size_t>(j)] * phi[static_cast<size_t>(j - 1)].inverse();
        res.push_back(lhs - rhs);
    }
    return res;
}

/// The lower triangular matrix of iterated integrals of the psi data,
/// produced as the unique series solution of Delta' = Delta Theta with
/// Delta(0) = diag(psi_i(0)); the identity is re-checked exactly before
/// returning. Diagonal convention: Delta_jj = psi_j, zero above the diagonal.
inline DeltaTheta toda_delta(const std::vector<TruncSeries1>& psi) {
    if (psi.empty()) throw Error("empty psi data");
    const int n = static_cast<int>(psi.size());
    const Var uu = psi[0].var();
    const TruncSeries1 proto = psi[0].zero_like();
    NCMatrix<TruncSeries1> theta(n, n, proto);
    for (int j = 0; j < n; ++j) {
        theta.at(j, j) = psi[static_cast<size_t>(j)].inverse() *
                         psi[static_cast<size_t>(j)].derive(uu);
        if (j + 1 < n) theta.at(j + 1, j) = proto.one_like();
    }
    NCMatrix<TruncSeries1> delta0(n, n, proto);
    for (int j = 0; j < n; ++j)
        delta0.at(j, j) = TruncSeries1::constant(uu, psi[0].order(), psi[0].cap(),
                                                 psi[static_cast<size_t>(j)].constant_term());
    NCMatrix<TruncSeries1> delta = delta0;
    for (int it = 0; it <= psi[0].order() + 1; ++it) {
        delta = delta0 +
                (delta * theta).map([&](const TruncSeries1& f) { return f.integrate(uu); });
    }
    const auto prod = delta * theta;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!equal_on_common(delta.at(i, j).derive(uu), prod.at(i, j)))
                throw Error("integral matrix does not satisfy its defining identity");
        }
    return {delta, theta};
}

namespace detail {

/// phi_i = trailing quasideterminant of the v-Wronskian of f^u_1..f^u_i.
inline std::vector<TruncSeries2> quasidet_chain(const std::vector<TruncSeries2>& fu, Var vv) {
    std::vector<TruncSeries2> phi;
    phi.reserve(fu.size());
    for (int i = 1; i <= static_cast<int>(fu.size()); ++i) {
        std::vector<TruncSeries2> prefix(fu.begin(), fu.begin() + i);
        auto q = quasidet(wronski(prefix, vv), i - 1, i - 1);
        if (!q) throw DegenerateData("undefined quasideterminant at index " + std::to_string(i));
        phi.push_back(*q);
    }
    return phi;
}

inline std::vector<TruncSeries2> toda_phi_from_fu(const std::vector<TruncSeries1>& f,
                                                  const NCMatrix<TruncSeries1>& delta, Var uu,
                                                  Var vv, int u_order, int u_cap, int v_order,
                                                  int v_cap) {
    const int n = static_cast<int>(f.size());
    std::vector<TruncSeries2> fu;
    fu.reserve(f.size());
    for (int i = 0; i < n; ++i) {
        TruncSeries2 acc(uu, vv, u_order, v_order, u_cap, v_cap, f[0].dim());
        for (int k = 0; k < n; ++k) {
            if (delta.at(k, i).is_zero()) continue;
            acc = acc + lift(f[static_cast<size_t>(k)], uu, vv, u_order, u_cap) *
                            lift(delta.at(k, i), uu, vv, v_order, v_cap);
        }
        fu.push_back(acc);
    }
    return quasidet_chain(fu, vv);
}

} // namespace detail

/// Explicit solution of the initial value problem for the length-n system:
/// normalize eta to g, build the kernel family by iterated integrals, push it
/// along the psi integral matrix, and take trailing quasideterminants.
inline TodaSolution toda_solve_a(const TodaInitial& init) {
    const int n = static_cast<int>(init.eta.size());
    if (n == 0 || init.psi.size() != init.eta.size()) throw Error("inconsistent initial data");
    const Var vv = init.eta[0].var(), uu = init.psi[0].var();
    if (vv == uu) throw VariableMismatch("initial data must use two distinct variables");
    std::vector<TruncSeries1> g;
    g.reserve(init.eta.size());
    for (int i = 0; i < n; ++i) {
        const auto& eta = init.eta[static_cast<size_t>(i)];
        const auto& psi = init.psi[static_cast<size_t>(i)];
        const AlgebraElement a = eta.constant_term();
        if (!(a == psi.constant_term()))
            throw DegenerateData("initial slices disagree at the corner, index " +
                                 std::to_string(i + 1));
        auto ainv = a.try_inverse();
        if (!ainv) throw DegenerateData("corner value is not invertible, index " +
                                        std::to_string(i + 1));
        g.push_back(eta.right_mul(*ainv));
    }
    const auto f = dop_kernel_from_factorization(g, vv);
    const auto dt = toda_delta(init.psi);
    TodaSolution sol;
    sol.phi = detail::toda_phi_from_fu(f, dt.delta, uu, vv, init.psi[0].order(),
                                       init.psi[0].cap(), init.eta[0].order(), init.eta[0].cap());
    sol.type = TodaType::A;
    sol.half = n;
    return sol;
}

/// Exact initial-slice fidelity: phi_i(u,0) = psi_i and phi_i(0,v) = eta_i on
/// the watermarked windows.
inline bool toda_check_initial(const TodaSolution& sol, const TodaInitial& init) {
    const Var uu = sol.phi[0].var1(), vv = sol.phi[0].var2();
    for (size_t i = 0; i < sol.phi.size(); ++i) {
        const auto& p = sol.phi[i];
        if (p.empty()) throw TruncationTooShallow("solution component has no coefficients");
        if (!equal_on_common(p.restrict_to_zero(vv), init.psi[i])) return false;
        if (!equal_on_common(p.restrict_to_zero(uu), init.eta[i])) return false;
    }
    return true;
}

/// Extends half initial data by the involution symmetry and solves the full
/// system: phi_{n+1-i} = (phi_i^*)^{-1}. Type C takes k pairs (n = 2k); type B
/// takes k+1 pairs (n = 2k+1) whose middle slice must be unitary-type,
/// star(data) * data = 1, checked exactly.
inline TodaSolution toda_solve_sym(const TodaInitial& half, TodaType type) {
    if (type == TodaType::A) throw Error("symmetric solver needs type B or C");
    const int given = static_cast<int>(half.eta.size());
    if (given == 0 || half.psi.size() != half.eta.size()) throw Error("inconsistent initial data");
    const int k = type == TodaType::C ? given : given - 1;
    if (k < 1) throw Error("type B needs the middle data");
    const int n = type == TodaType::C ? 2 * k : 2 * k + 1;
    if (type == TodaType::B) {
        const auto& em = half.eta.back();
        const auto& pm = half.psi.back();
        if (!(em.star() * em == em.one_like()) || !(pm.star() * pm == pm.one_like()))
            throw SymmetryViolated("middle initial slices are not unitary-type");
    }
    TodaInitial full = half;
    for (int j = given; j < n; ++j) {
        full.eta.push_back(half.eta[static_cast<size_t>(n - 1 - j)].star().inverse());
        full.psi.push_back(half.psi[static_cast<size_t>(n - 1 - j)].star().inverse());
    }
    TodaSolution sol = toda_solve_a(full);
    for (int j = 0; j < n; ++j) {
        const auto prod = sol.phi[static_cast<size_t>(n - 1 - j)] *
                          sol.phi[static_cast<size_t>(j)].star();
        detail::check_nonvacuous2(prod, "symmetry check");
        if (!(prod == prod.one_like())) throw SymmetryViolated("solution broke the involution symmetry");
    }
    sol.type = type;
    sol.half = given;
    return sol;
}

/// Closed-form solution of the nonabelian Liouville equation with
/// eta(0) = psi(0) = a: eta(v) [a^{-1} + F(v) a^* G(u)] psi(u) where F and G
/// are the displayed one-variable integrals.
inline TruncSeries2 liouville_solve(const TruncSeries1& eta, const TruncSeries1& psi,
                                    const AlgebraElement& a) {
    const Var vv = eta.var(), uu = psi.var();
    if (vv == uu) throw VariableMismatch("liouville data must use two distinct variables");
    if (!(eta.constant_term() == a) || !(psi.constant_term() == a))
        throw DegenerateData("corner value does not match the data");
    auto ainv = a.try_inverse();
    if (!ainv) throw NotInvertible("corner value is not invertible");
    const TruncSeries1 f = (eta.inverse() * eta.star().inverse()).integrate(vv);
    const TruncSeries1 g = (psi.star().inverse() * psi.inverse()).integrate(uu);
    const int nu = psi.order(), nv = eta.order();
    TruncSeries2 mid = lift(f, uu, vv, nu, psi.cap()).right_mul(a.star()) *
                       lift(g, uu, vv, nv, eta.cap());
    mid = mid + TruncSeries2::constant(uu, vv, nu, nv, psi.cap(), eta.cap(), *ainv);
    return lift(eta, uu, vv, nu, psi.cap()) * mid * lift(psi, uu, vv, nv, eta.cap());
}

/// Recursion of the infinite system: phi_i as the trailing quasideterminant of
/// the v-Wronskian of (f, df/du, ..., d^{i-1}f/du^{i-1}).
inline TruncSeries2 toda_infinite_step(const TruncSeries2& f, int i) {
    if (i < 1) throw Error("index must be positive");
    const Var uu = f.var1(), vv = f.var2();
    std::vector<TruncSeries2> rows;
    rows.reserve(static_cast<size_t>(i));
    rows.push_back(f);
    for (int r = 1; r < i; ++r) rows.push_back(rows.back().derive(uu));
    auto q = quasidet(wronski(rows, vv), i - 1, i - 1);
    if (!q) throw DegenerateData("mixed Wronski quasideterminant undefined at index " +
                                 std::to_string(i));
    return *q;
}

/// True iff the trailing quasideterminant of Y_{n+1}(f) vanishes on its whole
/// watermarked window, i.e. f behaves as a sum of n separable products.
inline bool kernel_rank_check(const TruncSeries2& f, int n) {
    const Var uu = f.var1(), vv = f.var2();
    std::vector<TruncSeries2> rows;
    rows.reserve(static_cast<size_t>(n) + 1);
    rows.push_back(f);
    for (int r = 1; r <= n; ++r) rows.push_back(rows.back().derive(uu));
    for (int m = 1; m <= n; ++m) {
        std::vector<TruncSeries2> prefix(rows.begin(), rows.begin() + m);
        if (!wronski(prefix, vv).try_inverse())
            throw DegenerateData("mixed Wronski matrix singular at index " + std::to_string(m));
    }
    auto q = quasidet(wronski(rows, vv), n, n);
    if (!q) throw DegenerateData("mixed Wronski quasideterminant undefined at index " +
                                 std::to_string(n + 1));
    detail::check_nonvacuous2(*q, "rank check");
    return q->is_zero();
}

/// Flow on the factorizations of one operator: normalize the kernel so its
/// Wronski matrix at 0 is the identity, push it along the one-parameter
/// subgroup of the nilpotent Jordan matrix, and read off phi. Verifies
/// Delta = e^{uJ} coefficientwise and that the recomposed operator does not
/// depend on u.
inline TodaSolution toda_flow_factorization(const std::vector<TruncSeries1>& kernel, Var uu,
                                            int u_order) {
    if (kernel.empty()) throw Error("empty kernel");
    const int n = static_cast<int>(kernel.size());
    const Var vv = kernel[0].var();
    if (vv == uu) throw VariableMismatch("flow variable must differ from the kernel variable");
    const int dim = kernel[0].dim();
    auto w0inv = wronski(kernel, vv)
                     .map([](const TruncSeries1& s) { return s.constant_term(); })
                     .try_inverse();
    if (!w0inv) throw DegenerateData("kernel Wronski matrix singular at 0");
    std::vector<TruncSeries1> f;
    f.reserve(kernel.size());
    for (int i = 0; i < n; ++i) {
        TruncSeries1 acc = kernel[0].zero_like();
        for (int k = 0; k < n; ++k)
            acc = acc + kernel[static_cast<size_t>(k)].right_mul(w0inv->at(k, i));
        f.push_back(acc);
    }
    std::vector<TruncSeries1> ones(static_cast<size_t>(n),
                                   TruncSeries1::one(uu, u_order, u_order, dim));
    const auto dt = toda_delta(ones);
    // with unit psi the integral matrix is the exponential of u J_n
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational inv_fact(1);
            for (int m = 2; m <= i - j; ++m) inv_fact = inv_fact * Rational(1, m);
            const TruncSeries1 expect =
                i >= j ? TruncSeries1::monomial(uu, u_order, u_order, i - j,
                                                AlgebraElement::identity(dim).scaled(inv_fact))
                       : TruncSeries1(uu, u_order, u_order, dim);
            if (!(dt.delta.at(i, j) == expect))
                throw Error("integral matrix of unit data is not the Jordan exponential");
        }
    TodaSolution sol;
    sol.phi = detail::toda_phi_from_fu(f, dt.delta, uu, vv, u_order, u_order, kernel[0].order(),
                                       kernel[0].cap());
    sol.type = TodaType::A;
    sol.half = n;
    // recomposed operator must be constant in u
    Factorization<TruncSeries2> fact{vv, {}};
    for (const auto& p : sol.phi) fact.b.push_back(p.derive(vv) * p.inverse());
    const auto l = fact.recompose();
    for (int i = 1; i <= l.order(); ++i) {
        const auto du = l.coeff(i).derive(uu);
        detail::check_nonvacuous2(du, "flow constancy check");
        if (!du.is_zero()) throw Error("recomposed operator depends on the flow parameter");
    }
    return sol;
}

/// Lax-form certificate: residuals of the operator identities
/// dL_i/du = -phi_{i+1} phi_i^{-1} L_{i-1} (i < n) and dL_n/du = 0, reported
/// coefficient by coefficient. An independent second certificate for solutions.
inline std::vector<std::vector<TruncSeries2>> toda_lax_residual(
    const std::vector<TruncSeries2>& phi) {
    if (phi.empty()) throw Error("empty solution vector");
    const int n = static_cast<int>(phi.size());
    const Var uu = phi[0].var1(), vv = phi[0].var2();
    std::vector<DiffOp<TruncSeries2>> l;
    l.reserve(phi.size() + 1);
    l.push_back(DiffOp<TruncSeries2>::identity(vv, phi[0]));
    for (int i = 0; i < n; ++i) {
        const TruncSeries2 b = phi[static_cast<size_t>(i)].derive(vv) *
                               phi[static_cast<size_t>(i)].inverse();
        l.push_back(dop_compose(DiffOp<TruncSeries2>::d_minus(vv, b), l.back()));
    }
    std::vector<std::vector<TruncSeries2>> out;
    out.reserve(phi.size());
    for (int i = 1; i <= n; ++i) {
        std::vector<TruncSeries2> res;
        res.reserve(static_cast<size_t>(i));
        for (int deg = i - 1; deg >= 0; --deg) {
            TruncSeries2 r = l[static_cast<size_t>(i)].coeff_of_degree(deg).derive(uu);
            if (i < n) {
                const TruncSeries2 factor = phi[static_cast<size_t>(i)] *
                                            phi[static_cast<size_t>(i - 1)].inverse();
                r = r + factor * l[static_cast<size_t>(i - 1)].coeff_of_degree(deg);
            }
            res.push_back(r);
        }
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace ncalg
