#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "ncalg/diffop.hpp"
#include "ncalg/errors.hpp"
#include "ncalg/ring.hpp"
#include "ncalg/series.hpp"

namespace ncalg {

// Effective floor sentinel: an exactly-zero tail extends to minus infinity.
inline constexpr int kFloorNegInf = INT_MIN / 4;
inline constexpr int kFloorAuto = INT_MIN / 2;

/// Formal pseudodifferential operator: finitely many nonnegative powers of the
/// derivation and a truncated tail of negative powers, coefficients written on
/// the left. `kmin` is the tail watermark; with `exact_tail` set, everything
/// below kmin is exactly zero (differential operators), otherwise it is
/// unknown and every operation tracks the resulting reliable floor.
template <DifferentialRing S>
class PsDO {
  public:
    PsDO(Var dvar, int kmin, int kmax, bool exact_tail, const S& proto)
        : dvar_(dvar),
          kmin_(kmin),
          kmax_(kmax),
          exact_(exact_tail),
          proto_(proto.zero_like()),
          c_(static_cast<size_t>(kmax - kmin + 1), proto.zero_like()) {
        if (kmax < kmin) throw Error("empty operator order range");
    }

    static PsDO zero(Var dvar, const S& proto) { return PsDO(dvar, 0, 0, true, proto); }

    /// The bare derivation as an operator.
    static PsDO derivation(Var dvar, const S& proto) {
        PsDO p(dvar, 1, 1, true, proto);
        p.set_coeff(1, proto.one_like());
        return p;
    }

    static PsDO identity(Var dvar, const S& proto) {
        PsDO p(dvar, 0, 0, true, proto);
        p.set_coeff(0, proto.one_like());
        return p;
    }

    Var dvar() const { return dvar_; }
    int kmin() const { return kmin_; }
    int kmax() const { return kmax_; }
    bool exact_tail() const { return exact_; }
    const S& proto() const { return proto_; }

    /// Effective floor for reliability combination.
    int eff_floor() const { return exact_ ? kFloorNegInf : kmin_; }

    const S& stored(int k) const { return c_[static_cast<size_t>(k - kmin_)]; }

    S coeff(int k) const {
        if (k > kmax_) return proto_;
        if (k < kmin_) {
            if (exact_) return proto_;
            throw FloorTooShallow("coefficient below the reliable floor");
        }
        return stored(k);
    }

    void set_coeff(int k, const S& v) {
        if (k < kmin_ || k > kmax_) throw Error("order outside the stored range");
        c_[static_cast<size_t>(k - kmin_)] = v;
    }

    /// Grow the stored range downward (new orders zero-filled).
    void extend_down(int new_kmin) {
        if (new_kmin >= kmin_) return;
        std::vector<S> nc(static_cast<size_t>(kmax_ - new_kmin + 1), proto_);
        for (int k = kmin_; k <= kmax_; ++k) nc[static_cast<size_t>(k - new_kmin)] = stored(k);
        c_ = std::move(nc);
        kmin_ = new_kmin;
    }

    void set_exact_tail(bool e) { exact_ = e; }

    /// Highest order with a nonzero stored coefficient.
    std::optional<int> top_order() const {
        for (int k = kmax_; k >= kmin_; --k)
            if (!stored(k).is_zero()) return k;
        return std::nullopt;
    }

    bool is_zero_stored() const { return !top_order().has_value(); }

    PsDO operator-() const {
        PsDO r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    PsDO operator+(const PsDO& o) const { return combine(o, false); }
    PsDO operator-(const PsDO& o) const { return combine(o, true); }

    /// Drop zero coefficients at the top of the range (never below kmin+?);
    /// keeps at least one stored order.
    PsDO trimmed_top() const {
        int newmax = kmax_;
        while (newmax > kmin_ && stored(newmax).is_zero()) --newmax;
        PsDO r(dvar_, kmin_, newmax, exact_, proto_);
        for (int k = kmin_; k <= newmax; ++k) r.set_coeff(k, stored(k));
        return r;
    }

    /// Apply a coefficientwise transformation (e.g. a derivative in a second
    /// variable); shape and floor are preserved.
    template <class F>
    PsDO map_coeffs(F&& f) const {
        PsDO r = *this;
        for (auto& x : r.c_) x = f(x);
        return r;
    }

    /// Dump: `kmax=.. kmin=..` then the coefficient series from kmax down to
    /// kmin, back to back.
    void dump(std::ostream& os) const {
        os << "kmax=" << kmax_ << " kmin=" << kmin_ << "\n";
        for (int k = kmax_; k >= kmin_; --k) stored(k).dump(os);
    }

    std::string dump() const {
        std::ostringstream os;
        dump(os);
        return os.str();
    }

  private:
    PsDO combine(const PsDO& o, bool negate) const {
        if (!(dvar_ == o.dvar_)) throw VariableMismatch("operator derivation mismatch");
        const bool exact = exact_ && o.exact_;
        const int lo = exact ? std::min(kmin_, o.kmin_) : std::max(eff_floor(), o.eff_floor());
        const int hi = std::max(kmax_, o.kmax_);
        PsDO r(dvar_, lo, hi, exact, proto_);
        for (int k = lo; k <= hi; ++k) {
            S x = coeff(k);
            S y = o.coeff(k);
            r.set_coeff(k, negate ? x - y : x + y);
        }
        return r;
    }

    Var dvar_;
    int kmin_, kmax_;
    bool exact_;
    S proto_;
    std::vector<S> c_;
};

/// d^k o a = sum_i C(k,i) (D^i a) d^{k-i} with the generalized binomial, which
/// stays integral for negative k. Composition is truncated at the reliable
/// floor max(floor(P) + kmax(Q), floor(Q) + kmax(P)); both fully-differential
/// inputs compose exactly. `floor_request` may shallow the computation, and is
/// required when both tails are exact but P reaches negative orders.
template <DifferentialRing S>
PsDO<S> psdo_compose(const PsDO<S>& p, const PsDO<S>& q, int floor_request = kFloorAuto) {
    if (!(p.dvar() == q.dvar())) throw VariableMismatch("operator derivation mismatch");
    const bool exact_possible = p.exact_tail() && q.exact_tail() && p.kmin() >= 0;
    int floor_store;
    bool exact_result = false;
    if (exact_possible) {
        floor_store = q.kmin();
        if (floor_request != kFloorAuto) floor_store = std::max(floor_store, floor_request);
        exact_result = floor_store <= q.kmin();
    } else {
        const long reliable = std::max(static_cast<long>(p.eff_floor()) + q.kmax(),
                                       static_cast<long>(q.eff_floor()) + p.kmax());
        if (reliable <= kFloorNegInf) {
            // both tails exact but P dips below zero: the expansion is
            // infinite and needs an explicit depth
            floor_store = floor_request != kFloorAuto ? floor_request : p.kmin() + q.kmin();
        } else {
            floor_store = static_cast<int>(reliable);
            if (floor_request != kFloorAuto)
                floor_store = std::max(floor_store, floor_request);
        }
    }
    const int kmax = p.kmax() + q.kmax();
    if (kmax < floor_store) floor_store = kmax;
    PsDO<S> out(p.dvar(), floor_store, kmax, exact_result, p.proto());

    for (int l = q.kmin(); l <= q.kmax(); ++l) {
        const S& ql = q.stored(l);
        int max_i = 0;
        for (int k = p.kmin(); k <= p.kmax(); ++k) {
            int im = k + l - floor_store;
            if (k >= 0) im = std::min(im, k);
            max_i = std::max(max_i, im);
        }
        if (max_i < 0) continue;
        std::vector<S> der;
        der.reserve(static_cast<size_t>(max_i) + 1);
        der.push_back(ql);
        for (int i = 1; i <= max_i; ++i) der.push_back(der.back().derive(p.dvar()));
        for (int k = p.kmin(); k <= p.kmax(); ++k) {
            const S& pk = p.stored(k);
            if (pk.is_zero()) continue;
            int im = k + l - floor_store;
            if (k >= 0) im = std::min(im, k);
            if (im < 0) continue;
            Rational binom(1);
            for (int i = 0; i <= im; ++i) {
                if (!binom.is_zero()) {
                    const S term = pk * der[static_cast<size_t>(i)].scaled(binom);
                    out.set_coeff(k + l - i, out.coeff(k + l - i) + term);
                }
                binom = binom * Rational(k - i) * Rational(1, i + 1);
            }
        }
    }
    return out;
}

/// P = P_+ + P_- exactly: nonnegative orders and the negative tail.
template <DifferentialRing S>
std::pair<PsDO<S>, PsDO<S>> psdo_split(const PsDO<S>& p) {
    PsDO<S> plus =
        p.kmax() >= 0
            ? PsDO<S>(p.dvar(), std::max(p.kmin(), 0), p.kmax(), true, p.proto())
            : PsDO<S>::zero(p.dvar(), p.proto());
    if (p.kmax() >= 0)
        for (int k = std::max(p.kmin(), 0); k <= p.kmax(); ++k) plus.set_coeff(k, p.stored(k));
    PsDO<S> minus =
        p.kmin() <= -1
            ? PsDO<S>(p.dvar(), p.kmin(), std::min(p.kmax(), -1), p.exact_tail(), p.proto())
            : PsDO<S>(p.dvar(), -1, -1, p.exact_tail(), p.proto());
    if (p.kmin() <= -1)
        for (int k = p.kmin(); k <= std::min(p.kmax(), -1); ++k) minus.set_coeff(k, p.stored(k));
    return {plus, minus};
}

/// Repeated composition with per-step floors deep enough that the final result
/// is reliable down to `floor_final` (when reachable).
template <DifferentialRing S>
PsDO<S> psdo_power(const PsDO<S>& p, int m, int floor_final = kFloorAuto) {
    if (m < 1) throw Error("power must be positive");
    PsDO<S> acc = p;
    for (int j = 2; j <= m; ++j) {
        int step_floor = kFloorAuto;
        if (floor_final != kFloorAuto)
            step_floor = floor_final - (m - j) * std::max(p.kmax(), 0);
        acc = psdo_compose(acc, p, step_floor);
    }
    return acc;
}

template <DifferentialRing S>
PsDO<S> psdo_from_diffop(const DiffOp<S>& l) {
    PsDO<S> p(l.dvar(), 0, l.order(), true, l.coeff(0).zero_like());
    for (int deg = 0; deg <= l.order(); ++deg) p.set_coeff(deg, l.coeff_of_degree(deg));
    return p;
}

/// Reciprocal of a monic differential operator of order N, as a formal tail
/// starting at order -N, computed down to `floor` by defect correction; the
/// one-sided product identity is re-verified on the reliable window.
template <DifferentialRing S>
PsDO<S> psdo_inverse_monic(const PsDO<S>& p, int floor) {
    const int n = p.kmax();
    if (!p.exact_tail() || p.kmin() < 0 || n < 0) throw ShapeError("need a differential operator");
    if (p.coeff(n).empty() || !equal_on_common(p.coeff(n), p.coeff(n).one_like()))
        throw ShapeError("need a monic operator");
    if (floor > -n) throw FloorTooShallow("floor must reach the leading reciprocal order");
    PsDO<S> r(p.dvar(), -n, -n, true, p.proto());
    r.set_coeff(-n, p.proto().one_like());
    const PsDO<S> id = PsDO<S>::identity(p.dvar(), p.proto());
    for (int k = 1; -n - k >= floor; ++k) {
        const PsDO<S> defect = id - psdo_compose(p, r, -k);
        const S d = defect.coeff(-k);
        r.extend_down(-n - k);
        r.set_coeff(-n - k, d);
    }
    const PsDO<S> check = id - psdo_compose(p, r, floor + n);
    for (int k = check.kmax(); k >= floor + n; --k) {
        if (!check.coeff(k).is_zero())
            throw Error("monic reciprocal failed its defining identity");
    }
    r.set_exact_tail(false);
    return r;
}

/// KP right-hand side [B_m, L], B_m = (L^m)_+, for L of the hierarchy shape
/// (leading coefficient 1 at order one, no order-zero term). The commutator
/// must land at order <= -1; anything else is an internal arithmetic error.
template <DifferentialRing S>
PsDO<S> kp_rhs(const PsDO<S>& l, int m) {
    if (m < 1) throw Error("flow index must be positive");
    if (l.kmax() != 1 || l.coeff(1).empty() ||
        !equal_on_common(l.coeff(1), l.coeff(1).one_like()) || !l.coeff(0).is_zero())
        throw ShapeError("operator is not of the hierarchy shape");
    const PsDO<S> b = psdo_split(psdo_power(l, m)).first;
    const PsDO<S> comm = psdo_compose(b, l) - psdo_compose(l, b);
    if (comm.kmin() > -1)
        throw FloorTooShallow("commutator window has no negative orders left");
    for (int k = std::max(comm.kmin(), 0); k <= comm.kmax(); ++k)
        if (!comm.coeff(k).is_zero())
            throw TangencyViolation("KP flow left the hierarchy shape");
    PsDO<S> out(l.dvar(), comm.kmin(), -1, false, l.proto());
    for (int k = comm.kmin(); k <= -1; ++k) out.set_coeff(k, comm.coeff(k));
    return out;
}

inline bool nkdv_trivial_flow(int n, int m) { return m % n == 0; }

/// Shape check for reduced operators: monic of order n with no order n-1 term.
template <DifferentialRing S>
void require_nkdv_shape(const PsDO<S>& m_op, int n) {
    if (!m_op.exact_tail() || m_op.kmin() < 0 || m_op.kmax() != n)
        throw ShapeError("operator is not differential of the stated order");
    if (m_op.coeff(n).empty() || !equal_on_common(m_op.coeff(n), m_op.coeff(n).one_like()))
        throw ShapeError("operator is not monic");
    if (n >= 1 && !m_op.coeff(n - 1).is_zero())
        throw ShapeError("subleading coefficient must vanish");
}

/// n-th root with the hierarchy shape: the ansatz tail is solved coefficient
/// by coefficient so that L^n = M down to the requested floor.
template <DifferentialRing S>
PsDO<S> psdo_nth_root(const PsDO<S>& m_op, int floor) {
    const int n = m_op.kmax();
    require_nkdv_shape(m_op, n);
    if (n < 1) throw ShapeError("order must be at least one");
    if (floor > -1) throw FloorTooShallow("root tail needs at least one negative order");
    PsDO<S> l(m_op.dvar(), 0, 1, true, m_op.proto());
    l.set_coeff(1, m_op.proto().one_like());
    for (int i = 0; -1 - i >= floor; ++i) {
        const int target = n - 2 - i;
        const PsDO<S> power = psdo_power(l, n, target);
        const S defect = m_op.coeff(target) - power.coeff(target);
        l.extend_down(-1 - i);
        l.set_coeff(-1 - i, defect.scaled(Rational(1, n)));
    }
    l.set_exact_tail(false);
    return l;
}

/// Instance certificate for one hierarchy flow: the coefficientwise time
/// derivative of L must match [B_m, L] on the common reliable window. The
/// time direction is a second series variable of the coefficients.
template <DifferentialRing S>
bool kp_flow_matches_time_derivative(const PsDO<S>& l, int m, Var time) {
    const PsDO<S> lhs = l.map_coeffs([&](const S& c) { return c.derive(time); });
    const PsDO<S> rhs = kp_rhs(l, m);
    if (rhs.kmin() > -1) throw FloorTooShallow("flow certificate has no negative orders");
    if (lhs.coeff(-1).empty() || rhs.coeff(-1).empty())
        throw TruncationTooShallow("flow certificate window is empty at order -1");
    for (int k = rhs.kmin(); k <= std::max(l.kmax(), rhs.kmax()); ++k) {
        const S a = lhs.coeff(k);
        const S b = k <= rhs.kmax() ? rhs.coeff(k) : rhs.proto().zero_like();
        if (a.is_zero() && b.is_zero()) continue;
        // compare exactly on the common series window
        if (!(k >= lhs.kmin())) return false;
        if (!equal_on_common(a, b)) return false;
    }
    return true;
}

/// Reduced-hierarchy right-hand side [ (M^{m/n})_+, M ]; computed through the
/// differential side, hence exact, and checked to stay tangent to the shape
/// (order <= n-2).
template <DifferentialRing S>
PsDO<S> nkdv_rhs(const PsDO<S>& m_op, int m) {
    if (m < 1) throw Error("flow index must be positive");
    const int n = m_op.kmax();
    require_nkdv_shape(m_op, n);
    const PsDO<S> l = psdo_nth_root(m_op, -m - 1);
    const PsDO<S> lm = psdo_power(l, m);
    if (lm.kmin() > -1) throw FloorTooShallow("root power lost its negative window");
    const PsDO<S> b = psdo_split(lm).first;
    const PsDO<S> comm = psdo_compose(b, m_op) - psdo_compose(m_op, b);
    for (int k = std::max(n - 1, comm.kmin()); k <= comm.kmax(); ++k)
        if (!comm.coeff(k).is_zero())
            throw TangencyViolation("reduced flow left the shape");
    return comm.trimmed_top();
}

} // namespace ncalg
