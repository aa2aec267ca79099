#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncalg/errors.hpp"
#include "ncalg/ncmatrix.hpp"
#include "ncalg/ring.hpp"
#include "ncalg/series.hpp"

namespace ncalg {

/// Polynomial in a derivation D with ring coefficients, written
/// a_0 D^n + a_1 D^{n-1} + ... + a_n (a_0 leading).
template <DifferentialRing S>
class DiffOp {
  public:
    DiffOp(Var dvar, std::vector<S> coeffs) : dvar_(dvar), a_(std::move(coeffs)) {
        if (a_.empty()) throw Error("operator needs at least one coefficient");
    }

    static DiffOp identity(Var dvar, const S& proto) { return DiffOp(dvar, {proto.one_like()}); }

    /// The bare derivation D.
    static DiffOp d(Var dvar, const S& proto) {
        return DiffOp(dvar, {proto.one_like(), proto.zero_like()});
    }

    /// D - b.
    static DiffOp d_minus(Var dvar, const S& b) { return DiffOp(dvar, {b.one_like(), -b}); }

    Var dvar() const { return dvar_; }
    int order() const { return static_cast<int>(a_.size()) - 1; }

    /// Coefficient of D^{order()-i}; index 0 is the leading coefficient.
    const S& coeff(int i) const { return a_[static_cast<size_t>(i)]; }

    /// Coefficient of D^deg.
    S coeff_of_degree(int deg) const {
        if (deg < 0 || deg > order()) return a_[0].zero_like();
        return a_[static_cast<size_t>(order() - deg)];
    }

    bool is_monic() const { return a_[0] == a_[0].one_like(); }

    S apply(const S& f) const {
        const int n = order();
        std::vector<S> der;
        der.reserve(static_cast<size_t>(n) + 1);
        der.push_back(f);
        for (int k = 1; k <= n; ++k) der.push_back(der.back().derive(dvar_));
        S acc = a_[0].zero_like();
        for (int i = 0; i <= n; ++i) acc = acc + a_[static_cast<size_t>(i)] * der[static_cast<size_t>(n - i)];
        return acc;
    }

    DiffOp operator+(const DiffOp& o) const { return combine(o, false); }
    DiffOp operator-(const DiffOp& o) const { return combine(o, true); }

    DiffOp left_mul(const S& c) const {
        std::vector<S> r;
        r.reserve(a_.size());
        for (const auto& ai : a_) r.push_back(c * ai);
        return DiffOp(dvar_, std::move(r));
    }

    bool operator==(const DiffOp& o) const { return dvar_ == o.dvar_ && a_ == o.a_; }

    /// Dump: `order=n` then the coefficient series a_0..a_n back to back.
    void dump(std::ostream& os) const {
        os << "order=" << order() << "\n";
        for (const auto& ai : a_) ai.dump(os);
    }

    std::string dump() const {
        std::ostringstream os;
        dump(os);
        return os.str();
    }

  private:
    DiffOp combine(const DiffOp& o, bool negate) const {
        if (!(dvar_ == o.dvar_)) throw VariableMismatch("operator derivation mismatch");
        const int n = std::max(order(), o.order());
        std::vector<S> r;
        r.reserve(static_cast<size_t>(n) + 1);
        for (int deg = n; deg >= 0; --deg) {
            S x = coeff_of_degree(deg);
            S y = o.coeff_of_degree(deg);
            r.push_back(negate ? x - y : x + y);
        }
        return DiffOp(dvar_, std::move(r));
    }

    Var dvar_;
    std::vector<S> a_;
};

/// Composition via the noncommutative Leibniz rule D o a = a D + Da:
/// apply(compose(L1, L2), f) = apply(L1, apply(L2, f)).
template <DifferentialRing S>
DiffOp<S> dop_compose(const DiffOp<S>& l1, const DiffOp<S>& l2) {
    if (!(l1.dvar() == l2.dvar())) throw VariableMismatch("operator derivation mismatch");
    const int n1 = l1.order(), n2 = l2.order();
    const int n = n1 + n2;
    std::vector<S> out(static_cast<size_t>(n) + 1, l1.coeff(0).zero_like());
    auto coeff_at_degree = [&](int deg) -> S& { return out[static_cast<size_t>(n - deg)]; };
    for (int j = 0; j <= n2; ++j) {
        // derivatives of l2's coefficient of degree q = n2 - j
        std::vector<S> der;
        der.reserve(static_cast<size_t>(n1) + 1);
        der.push_back(l2.coeff(j));
        for (int r = 1; r <= n1; ++r) der.push_back(der.back().derive(l1.dvar()));
        const int q = n2 - j;
        for (int i = 0; i <= n1; ++i) {
            const int p = n1 - i;
            const S& ai = l1.coeff(i);
            if (ai.is_zero()) continue;
            Rational binom(1);
            for (int r = 0; r <= p; ++r) {
                const S term = ai * der[static_cast<size_t>(r)].scaled(binom);
                coeff_at_degree(p + q - r) = coeff_at_degree(p + q - r) + term;
                binom *= Rational(p - r, r + 1);
            }
        }
    }
    return DiffOp<S>(l1.dvar(), std::move(out));
}

/// Unique monic operator of order n annihilating a nondegenerate family:
/// row-vector solve (a_n,...,a_1) = -(D^n f_1,...,D^n f_n) W^{-1}.
template <DifferentialRing S>
DiffOp<S> dop_from_kernel(const std::vector<S>& f, Var d) {
    if (f.empty()) throw Error("empty kernel");
    const int n = static_cast<int>(f.size());
    NCMatrix<S> w = wronski(f, d);
    auto winv = w.try_inverse();
    if (!winv) throw DegenerateKernel();
    std::vector<S> dn;
    dn.reserve(f.size());
    for (const auto& fj : f) {
        S cur = fj;
        for (int r = 0; r < n; ++r) cur = cur.derive(d);
        dn.push_back(cur);
    }
    std::vector<S> coeffs(static_cast<size_t>(n) + 1, f[0].zero_like());
    coeffs[0] = f[0].one_like();
    for (int k = 0; k < n; ++k) {
        S s = f[0].zero_like();
        for (int jj = 0; jj < n; ++jj) s = s + dn[static_cast<size_t>(jj)] * winv->at(jj, k);
        // s is -(a_{n-k}); slot for a_{n-k} is index n-k
        coeffs[static_cast<size_t>(n - k)] = -s;
    }
    return DiffOp<S>(d, std::move(coeffs));
}

/// Ordered factorization data: the operator is (D-b_n)...(D-b_1).
template <DifferentialRing S>
struct Factorization {
    Var dvar;
    std::vector<S> b; // b[0] = b_1 applied first

    DiffOp<S> recompose() const {
        if (b.empty()) throw Error("empty factorization");
        DiffOp<S> l = DiffOp<S>::d_minus(dvar, b[0]);
        for (size_t i = 1; i < b.size(); ++i) l = dop_compose(DiffOp<S>::d_minus(dvar, b[i]), l);
        return l;
    }
};

/// b_i = (D W_i) W_i^{-1} with W_i the trailing quasideterminant of the i-th
/// Wronski prefix. Fails with the first degenerate prefix length.
template <DifferentialRing S>
Factorization<S> dop_factorize(const std::vector<S>& f, Var d) {
    if (f.empty()) throw Error("empty kernel");
    Factorization<S> out{d, {}};
    std::vector<S> prefix;
    for (int i = 1; i <= static_cast<int>(f.size()); ++i) {
        prefix.assign(f.begin(), f.begin() + i);
        auto wq = quasidet(wronski(prefix, d), i - 1, i - 1);
        if (!wq) throw DegeneratePrefix(i);
        auto winv = wq->try_inverse();
        if (!winv) throw DegeneratePrefix(i);
        out.b.push_back(wq->derive(d) * *winv);
    }
    return out;
}

/// Kernel family of (D-(Dg_n)g_n^{-1})...(D-(Dg_1)g_1^{-1}) normalized so the
/// Wronski matrix at 0 is unit lower triangular. Computed by the recursion
/// f_j = g_1 * integral(g_1^{-1} * h) over the shifted factor list.
template <DifferentialRing S>
std::vector<S> dop_kernel_from_factorization(const std::vector<S>& g, Var d) {
    const int n = static_cast<int>(g.size());
    if (n == 0) throw Error("empty factor list");
    std::vector<S> ginv;
    ginv.reserve(g.size());
    for (const auto& gi : g) {
        if (!(gi.constant_term() == gi.constant_term().one_like())) throw ConstantTermNotOne();
        ginv.push_back(gi.inverse());
    }
    // cur[i] = j-step kernel element built from factors g_{i+1}, g_{i+2}, ...
    std::vector<S> cur = g;
    std::vector<S> out;
    out.reserve(g.size());
    out.push_back(cur[0]);
    for (int j = 2; j <= n; ++j) {
        std::vector<S> next;
        next.reserve(static_cast<size_t>(n - j + 1));
        for (int i = 0; i + j <= n; ++i)
            next.push_back(g[static_cast<size_t>(i)] *
                           (ginv[static_cast<size_t>(i)] * cur[static_cast<size_t>(i) + 1])
                               .integrate(d));
        cur = std::move(next);
        out.push_back(cur[0]);
    }
    return out;
}

/// Coefficients a_1..a_n of the monic polynomial with the given left roots:
/// y_i = |V(i)|_{ii} x_i |V(i)|_{ii}^{-1}, then the ordered expansion of
/// (x - y_n)...(x - y_1).
inline std::vector<AlgebraElement> vieta_y(const std::vector<AlgebraElement>& x) {
    std::vector<AlgebraElement> y;
    y.reserve(x.size());
    for (int i = 1; i <= static_cast<int>(x.size()); ++i) {
        std::vector<AlgebraElement> prefix(x.begin(), x.begin() + i);
        auto q = quasidet(vandermonde(prefix), i - 1, i - 1);
        if (!q) throw DegeneratePrefix(i);
        auto qinv = q->try_inverse();
        if (!qinv) throw DegeneratePrefix(i);
        y.push_back(*q * x[static_cast<size_t>(i - 1)] * *qinv);
    }
    return y;
}

inline std::vector<AlgebraElement> vieta_coeffs(const std::vector<AlgebraElement>& x) {
    if (x.empty()) throw Error("empty root list");
    const auto y = vieta_y(x);
    // c holds the coefficients of (x - y_i)...(x - y_1), leading first
    std::vector<AlgebraElement> c{x[0].one_like()};
    for (const auto& yi : y) {
        std::vector<AlgebraElement> next(c.size() + 1, x[0].zero_like());
        for (size_t r = 0; r < c.size(); ++r) next[r] += c[r];
        for (size_t r = 1; r <= c.size(); ++r) next[r] -= yi * c[r - 1];
        c = std::move(next);
    }
    return {c.begin() + 1, c.end()};
}

/// Cross-check route: factorize the constant-coefficient operator whose kernel
/// is e^{t x_i}; each factor must come out constant and equal to y_i.
inline std::vector<AlgebraElement> vieta_via_factorization(const std::vector<AlgebraElement>& x,
                                                           int series_order) {
    if (x.empty()) throw Error("empty root list");
    const int n = static_cast<int>(x.size());
    const int ord = std::max(series_order, n + 1);
    std::vector<TruncSeries1> f;
    f.reserve(x.size());
    for (const auto& xi : x)
        f.push_back(TruncSeries1::monomial(vars::t, ord, ord, 1, xi).exp());
    auto fact = dop_factorize(f, vars::t);
    std::vector<AlgebraElement> out;
    out.reserve(fact.b.size());
    for (const auto& bi : fact.b) {
        const AlgebraElement c = bi.constant_term();
        if (!(bi - TruncSeries1::constant(vars::t, bi.order(), bi.cap(), c)).is_zero())
            throw Error("factor of a constant-coefficient operator is not constant");
        out.push_back(c);
    }
    return out;
}

} // namespace ncalg
