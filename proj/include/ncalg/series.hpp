#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncalg/algebra.hpp"
#include "ncalg/errors.hpp"
#include "ncalg/ring.hpp"

namespace ncalg {

// Truncation discipline used by both series types: `order` is the reliability
// watermark. Coefficients of degree <= order are exact values of the represented
// element; nothing is stored or asserted beyond it. Differentiation lowers the
// watermark by one, integration raises it (capped), and binary operations meet
// at the componentwise minimum. An order of -1 means "no coefficient is known".

/// Truncated formal power series over the matrix algebra in one variable.
class TruncSeries1 {
  public:
    TruncSeries1(Var var, int order, int cap, int dim)
        : var_(var), order_(std::min(order, cap)), cap_(cap), dim_(dim) {
        if (order_ < -1) order_ = -1;
        c_.assign(static_cast<size_t>(order_ + 1), AlgebraElement::zero(dim));
    }

    static TruncSeries1 constant(Var var, int order, int cap, const AlgebraElement& value) {
        TruncSeries1 f(var, order, cap, value.dim());
        if (f.order_ >= 0) f.c_[0] = value;
        return f;
    }

    static TruncSeries1 one(Var var, int order, int cap, int dim) {
        return constant(var, order, cap, AlgebraElement::identity(dim));
    }

    /// value * var^degree
    static TruncSeries1 monomial(Var var, int order, int cap, int degree,
                                 const AlgebraElement& value) {
        TruncSeries1 f(var, order, cap, value.dim());
        if (degree <= f.order_) f.c_[static_cast<size_t>(degree)] = value;
        return f;
    }

    Var var() const { return var_; }
    int order() const { return order_; }
    int cap() const { return cap_; }
    int dim() const { return dim_; }
    bool empty() const { return order_ < 0; }

    const AlgebraElement& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    AlgebraElement coeff_or_zero(int i) const {
        if (i < 0 || i > order_) return AlgebraElement::zero(dim_);
        return c_[static_cast<size_t>(i)];
    }
    void set_coeff(int i, const AlgebraElement& v) {
        if (i < 0 || i > order_) throw Error("coefficient index out of range");
        c_[static_cast<size_t>(i)] = v;
    }

    AlgebraElement constant_term() const {
        if (empty()) throw Error("constant term of an empty series");
        return c_[0];
    }

    TruncSeries1 zero_like() const { return TruncSeries1(var_, order_, cap_, dim_); }
    TruncSeries1 one_like() const { return one(var_, order_, cap_, dim_); }

    bool is_zero() const {
        for (const auto& a : c_)
            if (!a.is_zero()) return false;
        return true;
    }

    TruncSeries1 truncated(int new_order) const {
        TruncSeries1 r(var_, std::min(order_, new_order), cap_, dim_);
        for (int i = 0; i <= r.order_; ++i) r.c_[static_cast<size_t>(i)] = coeff(i);
        return r;
    }

    TruncSeries1 operator-() const {
        TruncSeries1 r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    TruncSeries1 operator+(const TruncSeries1& o) const {
        check_compat(o);
        TruncSeries1 r(var_, std::min(order_, o.order_), std::min(cap_, o.cap_), dim_);
        for (int i = 0; i <= r.order_; ++i) r.c_[static_cast<size_t>(i)] = coeff(i) + o.coeff(i);
        return r;
    }

    TruncSeries1 operator-(const TruncSeries1& o) const { return *this + (-o); }

    /// Truncated Cauchy product; coefficient multiplication in A is order-sensitive.
    TruncSeries1 operator*(const TruncSeries1& o) const {
        check_compat(o);
        TruncSeries1 r(var_, std::min(order_, o.order_), std::min(cap_, o.cap_), dim_);
        for (int i = 0; i <= r.order_; ++i) {
            const AlgebraElement& a = coeff(i);
            if (a.is_zero()) continue;
            for (int j = 0; i + j <= r.order_; ++j)
                r.c_[static_cast<size_t>(i + j)] += a * o.coeff(j);
        }
        return r;
    }

    bool operator==(const TruncSeries1& o) const {
        return var_ == o.var_ && order_ == o.order_ && dim_ == o.dim_ && c_ == o.c_;
    }
    bool operator!=(const TruncSeries1& o) const { return !(*this == o); }

    TruncSeries1 left_mul(const AlgebraElement& a) const {
        TruncSeries1 r = *this;
        for (auto& cc : r.c_) cc = a * cc;
        return r;
    }
    TruncSeries1 right_mul(const AlgebraElement& a) const {
        TruncSeries1 r = *this;
        for (auto& cc : r.c_) cc = cc * a;
        return r;
    }
    TruncSeries1 scaled(const Rational& q) const {
        TruncSeries1 r = *this;
        for (auto& cc : r.c_) cc = cc.scaled(q);
        return r;
    }

    TruncSeries1 derive(Var w) const {
        check_var(w);
        TruncSeries1 r(var_, order_ - 1, cap_, dim_);
        for (int i = 0; i <= r.order_; ++i)
            r.c_[static_cast<size_t>(i)] = coeff(i + 1).scaled(Rational(i + 1));
        return r;
    }

    /// Definite integral from 0: a_i t^i -> a_i t^{i+1}/(i+1). Raises the
    /// watermark by one, capped.
    TruncSeries1 integrate(Var w) const {
        check_var(w);
        TruncSeries1 r(var_, std::min(order_ + 1, cap_), cap_, dim_);
        for (int i = 1; i <= r.order_; ++i)
            r.c_[static_cast<size_t>(i)] = coeff_or_zero(i - 1).scaled(Rational(1, i));
        return r;
    }

    TruncSeries1 star() const {
        TruncSeries1 r = *this;
        for (auto& cc : r.c_) cc = cc.star();
        return r;
    }

    /// Order-by-order right-sided recurrence for f^{-1}; requires an invertible
    /// constant term. The construction forces f*g = 1; g*f = 1 is re-checked.
    std::optional<TruncSeries1> try_inverse() const {
        if (empty()) return *this;
        auto c0inv = c_[0].try_inverse();
        if (!c0inv) return std::nullopt;
        TruncSeries1 g(var_, order_, cap_, dim_);
        g.c_[0] = *c0inv;
        for (int i = 1; i <= order_; ++i) {
            AlgebraElement s(dim_);
            for (int k = 1; k <= i; ++k) s += coeff(k) * g.coeff(i - k);
            g.c_[static_cast<size_t>(i)] = -(*c0inv * s);
        }
        if (!(g * *this == one_like())) return std::nullopt;
        return g;
    }

    TruncSeries1 inverse() const { return ring_inverse(*this); }

    /// exp(p) for p with zero constant term; the truncated sum is finite.
    TruncSeries1 exp() const {
        if (empty()) return *this;
        if (!c_[0].is_zero()) throw NonzeroConstantTerm();
        TruncSeries1 acc = one_like();
        TruncSeries1 term = one_like();
        for (int k = 1; k <= order_; ++k) {
            term = (term * *this).scaled(Rational(1, k));
            if (term.is_zero()) break;
            acc = acc + term;
        }
        return acc;
    }

    /// Horner evaluation in double precision; approximate by design.
    std::vector<double> eval(double t) const {
        std::vector<double> acc(static_cast<size_t>(dim_) * dim_, 0.0);
        for (int i = order_; i >= 0; --i) {
            const auto ci = coeff(i).to_doubles();
            for (size_t k = 0; k < acc.size(); ++k) acc[k] = acc[k] * t + ci[k];
        }
        return acc;
    }

    /// Dump format: header `vars=t orders=8 dim=2`, then `i : <matrix literal>`
    /// for each nonzero coefficient.
    void dump(std::ostream& os) const {
        os << "vars=" << var_.str() << " orders=" << order_ << " dim=" << dim_ << "\n";
        for (int i = 0; i <= order_; ++i)
            if (!coeff(i).is_zero()) os << i << " : " << coeff(i).literal() << "\n";
    }

    std::string dump() const {
        std::ostringstream os;
        dump(os);
        return os.str();
    }

    static TruncSeries1 parse(std::istream& is);
    static TruncSeries1 parse(const std::string& text) {
        std::istringstream is(text);
        return parse(is);
    }

  private:
    void check_var(Var w) const {
        if (!(w == var_))
            throw VariableMismatch("series in " + var_.str() + ", requested " + w.str());
    }
    void check_compat(const TruncSeries1& o) const {
        if (!(var_ == o.var_))
            throw VariableMismatch("series variables " + var_.str() + " vs " + o.var_.str());
        if (dim_ != o.dim_) throw Error("series dimension mismatch");
    }

    Var var_;
    int order_;
    int cap_;
    int dim_;
    std::vector<AlgebraElement> c_;
};

inline TruncSeries1 operator*(const AlgebraElement& a, const TruncSeries1& f) {
    return f.left_mul(a);
}
inline TruncSeries1 operator*(const TruncSeries1& f, const AlgebraElement& a) {
    return f.right_mul(a);
}

static_assert(Ring<TruncSeries1>);
static_assert(StarRing<TruncSeries1>);
static_assert(DifferentialRing<TruncSeries1>);

/// Truncated formal power series over the matrix algebra in an ordered pair of
/// variables, with independent per-variable truncation orders.
class TruncSeries2 {
  public:
    TruncSeries2(Var v1, Var v2, int n1, int n2, int cap1, int cap2, int dim)
        : v1_(v1),
          v2_(v2),
          n1_(std::min(n1, cap1)),
          n2_(std::min(n2, cap2)),
          cap1_(cap1),
          cap2_(cap2),
          dim_(dim) {
        if (v1 == v2) throw VariableMismatch("bivariate series needs distinct variables");
        // partial knowledge in only one variable is not representable; an
        // empty order in either variable empties the series
        if (n1_ < 0 || n2_ < 0) n1_ = n2_ = -1;
        c_.assign(static_cast<size_t>(n1_ + 1) * static_cast<size_t>(n2_ + 1),
                  AlgebraElement::zero(dim));
    }

    static TruncSeries2 constant(Var v1, Var v2, int n1, int n2, int cap1, int cap2,
                                 const AlgebraElement& value) {
        TruncSeries2 f(v1, v2, n1, n2, cap1, cap2, value.dim());
        if (!f.empty()) f.at(0, 0) = value;
        return f;
    }

    static TruncSeries2 one(Var v1, Var v2, int n1, int n2, int cap1, int cap2, int dim) {
        return constant(v1, v2, n1, n2, cap1, cap2, AlgebraElement::identity(dim));
    }

    Var var1() const { return v1_; }
    Var var2() const { return v2_; }
    int order1() const { return n1_; }
    int order2() const { return n2_; }
    int cap1() const { return cap1_; }
    int cap2() const { return cap2_; }
    int dim() const { return dim_; }
    bool empty() const { return n1_ < 0 || n2_ < 0; }

    AlgebraElement& at(int i, int j) {
        return c_[static_cast<size_t>(i) * static_cast<size_t>(n2_ + 1) + j];
    }
    const AlgebraElement& at(int i, int j) const {
        return c_[static_cast<size_t>(i) * static_cast<size_t>(n2_ + 1) + j];
    }
    AlgebraElement coeff_or_zero(int i, int j) const {
        if (i < 0 || j < 0 || i > n1_ || j > n2_) return AlgebraElement::zero(dim_);
        return at(i, j);
    }
    void set_coeff(int i, int j, const AlgebraElement& v) {
        if (i < 0 || j < 0 || i > n1_ || j > n2_) throw Error("coefficient index out of range");
        at(i, j) = v;
    }

    AlgebraElement constant_term() const {
        if (empty()) throw Error("constant term of an empty series");
        return at(0, 0);
    }

    TruncSeries2 zero_like() const { return TruncSeries2(v1_, v2_, n1_, n2_, cap1_, cap2_, dim_); }
    TruncSeries2 one_like() const { return one(v1_, v2_, n1_, n2_, cap1_, cap2_, dim_); }

    bool is_zero() const {
        for (const auto& a : c_)
            if (!a.is_zero()) return false;
        return true;
    }

    TruncSeries2 truncated(int m1, int m2) const {
        TruncSeries2 r(v1_, v2_, std::min(n1_, m1), std::min(n2_, m2), cap1_, cap2_, dim_);
        for (int i = 0; i <= r.n1_; ++i)
            for (int j = 0; j <= r.n2_; ++j) r.at(i, j) = at(i, j);
        return r;
    }

    TruncSeries2 operator-() const {
        TruncSeries2 r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    TruncSeries2 operator+(const TruncSeries2& o) const {
        check_compat(o);
        TruncSeries2 r(v1_, v2_, std::min(n1_, o.n1_), std::min(n2_, o.n2_),
                       std::min(cap1_, o.cap1_), std::min(cap2_, o.cap2_), dim_);
        for (int i = 0; i <= r.n1_; ++i)
            for (int j = 0; j <= r.n2_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
        return r;
    }

    TruncSeries2 operator-(const TruncSeries2& o) const { return *this + (-o); }

    TruncSeries2 operator*(const TruncSeries2& o) const {
        check_compat(o);
        TruncSeries2 r(v1_, v2_, std::min(n1_, o.n1_), std::min(n2_, o.n2_),
                       std::min(cap1_, o.cap1_), std::min(cap2_, o.cap2_), dim_);
        for (int i1 = 0; i1 <= std::min(n1_, r.n1_); ++i1)
            for (int j1 = 0; j1 <= std::min(n2_, r.n2_); ++j1) {
                const AlgebraElement& a = at(i1, j1);
                if (a.is_zero()) continue;
                for (int i2 = 0; i1 + i2 <= r.n1_; ++i2)
                    for (int j2 = 0; j1 + j2 <= r.n2_; ++j2)
                        r.at(i1 + i2, j1 + j2) += a * o.at(i2, j2);
            }
        return r;
    }

    bool operator==(const TruncSeries2& o) const {
        return v1_ == o.v1_ && v2_ == o.v2_ && n1_ == o.n1_ && n2_ == o.n2_ && dim_ == o.dim_ &&
               c_ == o.c_;
    }
    bool operator!=(const TruncSeries2& o) const { return !(*this == o); }

    TruncSeries2 left_mul(const AlgebraElement& a) const {
        TruncSeries2 r = *this;
        for (auto& cc : r.c_) cc = a * cc;
        return r;
    }
    TruncSeries2 right_mul(const AlgebraElement& a) const {
        TruncSeries2 r = *this;
        for (auto& cc : r.c_) cc = cc * a;
        return r;
    }
    TruncSeries2 scaled(const Rational& q) const {
        TruncSeries2 r = *this;
        for (auto& cc : r.c_) cc = cc.scaled(q);
        return r;
    }

    TruncSeries2 derive(Var w) const {
        const bool first = w == v1_;
        if (!first && !(w == v2_)) throw VariableMismatch("no variable " + w.str());
        TruncSeries2 r(v1_, v2_, n1_ - (first ? 1 : 0), n2_ - (first ? 0 : 1), cap1_, cap2_, dim_);
        for (int i = 0; i <= r.n1_; ++i)
            for (int j = 0; j <= r.n2_; ++j)
                r.at(i, j) = first ? at(i + 1, j).scaled(Rational(i + 1))
                                   : at(i, j + 1).scaled(Rational(j + 1));
        return r;
    }

    TruncSeries2 integrate(Var w) const {
        const bool first = w == v1_;
        if (!first && !(w == v2_)) throw VariableMismatch("no variable " + w.str());
        if (empty()) return *this;
        TruncSeries2 r(v1_, v2_, first ? std::min(n1_ + 1, cap1_) : n1_,
                       first ? n2_ : std::min(n2_ + 1, cap2_), cap1_, cap2_, dim_);
        for (int i = first ? 1 : 0; i <= r.n1_; ++i)
            for (int j = first ? 0 : 1; j <= r.n2_; ++j)
                r.at(i, j) = first ? coeff_or_zero(i - 1, j).scaled(Rational(1, i))
                                   : coeff_or_zero(i, j - 1).scaled(Rational(1, j));
        return r;
    }

    TruncSeries2 star() const {
        TruncSeries2 r = *this;
        for (auto& cc : r.c_) cc = cc.star();
        return r;
    }

    std::optional<TruncSeries2> try_inverse() const {
        if (empty()) return *this;
        auto c0inv = at(0, 0).try_inverse();
        if (!c0inv) return std::nullopt;
        TruncSeries2 g(v1_, v2_, n1_, n2_, cap1_, cap2_, dim_);
        for (int i = 0; i <= n1_; ++i)
            for (int j = 0; j <= n2_; ++j) {
                if (i == 0 && j == 0) {
                    g.at(0, 0) = *c0inv;
                    continue;
                }
                AlgebraElement s(dim_);
                for (int k = 0; k <= i; ++k)
                    for (int l = 0; l <= j; ++l) {
                        if (k == 0 && l == 0) continue;
                        s += at(k, l) * g.at(i - k, j - l);
                    }
                g.at(i, j) = -(*c0inv * s);
            }
        if (!(g * *this == one_like())) return std::nullopt;
        return g;
    }

    TruncSeries2 inverse() const { return ring_inverse(*this); }

    TruncSeries2 exp() const {
        if (empty()) return *this;
        if (!at(0, 0).is_zero()) throw NonzeroConstantTerm();
        TruncSeries2 acc = one_like();
        TruncSeries2 term = one_like();
        for (int k = 1; k <= n1_ + n2_; ++k) {
            term = (term * *this).scaled(Rational(1, k));
            if (term.is_zero()) break;
            acc = acc + term;
        }
        return acc;
    }

    /// Zero-degree slice in `w`; the result lives in the other variable.
    TruncSeries1 restrict_to_zero(Var w) const {
        const bool first = w == v1_;
        if (!first && !(w == v2_)) throw VariableMismatch("no variable " + w.str());
        if (empty()) return TruncSeries1(first ? v2_ : v1_, -1, first ? cap2_ : cap1_, dim_);
        TruncSeries1 r(first ? v2_ : v1_, first ? n2_ : n1_, first ? cap2_ : cap1_, dim_);
        for (int i = 0; i <= r.order(); ++i) r.set_coeff(i, first ? at(0, i) : at(i, 0));
        return r;
    }

    std::vector<double> eval(double a, double b) const {
        std::vector<double> acc(static_cast<size_t>(dim_) * dim_, 0.0);
        for (int i = n1_; i >= 0; --i) {
            std::vector<double> row(acc.size(), 0.0);
            for (int j = n2_; j >= 0; --j) {
                const auto cij = at(i, j).to_doubles();
                for (size_t k = 0; k < row.size(); ++k) row[k] = row[k] * b + cij[k];
            }
            for (size_t k = 0; k < acc.size(); ++k) acc[k] = acc[k] * a + row[k];
        }
        return acc;
    }

    /// Header `vars=u,v orders=6,6 dim=2`, then `i j : <matrix literal>` lines.
    void dump(std::ostream& os) const {
        os << "vars=" << v1_.str() << "," << v2_.str() << " orders=" << n1_ << "," << n2_
           << " dim=" << dim_ << "\n";
        for (int i = 0; i <= n1_; ++i)
            for (int j = 0; j <= n2_; ++j)
                if (!at(i, j).is_zero()) os << i << " " << j << " : " << at(i, j).literal() << "\n";
    }

    std::string dump() const {
        std::ostringstream os;
        dump(os);
        return os.str();
    }

    static TruncSeries2 parse(std::istream& is);
    static TruncSeries2 parse(const std::string& text) {
        std::istringstream is(text);
        return parse(is);
    }

  private:
    void check_compat(const TruncSeries2& o) const {
        if (!(v1_ == o.v1_) || !(v2_ == o.v2_))
            throw VariableMismatch("bivariate variable mismatch");
        if (dim_ != o.dim_) throw Error("series dimension mismatch");
    }

    Var v1_, v2_;
    int n1_, n2_;
    int cap1_, cap2_;
    int dim_;
    std::vector<AlgebraElement> c_;
};

inline TruncSeries2 operator*(const AlgebraElement& a, const TruncSeries2& f) {
    return f.left_mul(a);
}
inline TruncSeries2 operator*(const TruncSeries2& f, const AlgebraElement& a) {
    return f.right_mul(a);
}

static_assert(Ring<TruncSeries2>);
static_assert(StarRing<TruncSeries2>);
static_assert(DifferentialRing<TruncSeries2>);

/// Embed a univariate series as a bivariate one, exact (hence full cap) in the
/// missing variable. f's variable must be one of (v1, v2).
inline TruncSeries2 lift(const TruncSeries1& f, Var v1, Var v2, int other_order, int other_cap) {
    const bool first = f.var() == v1;
    if (!first && !(f.var() == v2)) throw VariableMismatch("lift: variable not in target pair");
    TruncSeries2 r(v1, v2, first ? f.order() : other_order, first ? other_order : f.order(),
                   first ? f.cap() : other_cap, first ? other_cap : f.cap(), f.dim());
    if (r.empty()) return r;
    for (int i = 0; i <= f.order(); ++i)
        if (first)
            r.set_coeff(i, 0, f.coeff(i));
        else
            r.set_coeff(0, i, f.coeff(i));
    return r;
}

/// Truncate both to their common reliable window and compare exactly.
inline bool equal_on_common(const TruncSeries1& a, const TruncSeries1& b) {
    const int n = std::min(a.order(), b.order());
    return a.truncated(n) == b.truncated(n);
}

inline bool equal_on_common(const TruncSeries2& a, const TruncSeries2& b) {
    const int n1 = std::min(a.order1(), b.order1());
    const int n2 = std::min(a.order2(), b.order2());
    return a.truncated(n1, n2) == b.truncated(n1, n2);
}

namespace detail {

inline std::string next_nonempty_line(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    throw ParseError("unexpected end of input");
}

inline bool peek_coefficient_line(std::istream& is, std::string& line) {
    std::streampos pos = is.tellg();
    while (std::getline(is, line)) {
        const auto at = line.find_first_not_of(" \t\r");
        if (at == std::string::npos) {
            pos = is.tellg();
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(line[at]))) return true;
        is.clear();
        is.seekg(pos);
        return false;
    }
    is.clear();
    return false;
}

struct SeriesHeader {
    std::vector<Var> vars;
    std::vector<int> orders;
    int dim;
};

inline SeriesHeader parse_series_header(const std::string& line) {
    std::istringstream is(line);
    std::string vtok, otok, dtok;
    if (!(is >> vtok >> otok >> dtok) || vtok.rfind("vars=", 0) != 0 ||
        otok.rfind("orders=", 0) != 0 || dtok.rfind("dim=", 0) != 0)
        throw ParseError("bad series header: " + line);
    SeriesHeader h{};
    for (char c : vtok.substr(5))
        if (c != ',') h.vars.push_back(Var{c});
    std::string os = otok.substr(7);
    for (size_t p = 0; p < os.size();) {
        size_t q = os.find(',', p);
        if (q == std::string::npos) q = os.size();
        h.orders.push_back(std::stoi(os.substr(p, q - p)));
        p = q + 1;
    }
    h.dim = std::stoi(dtok.substr(4));
    if (h.vars.size() != h.orders.size() || h.vars.empty() || h.vars.size() > 2 || h.dim < 1)
        throw ParseError("bad series header: " + line);
    return h;
}

} // namespace detail

inline TruncSeries1 TruncSeries1::parse(std::istream& is) {
    const auto h = detail::parse_series_header(detail::next_nonempty_line(is));
    if (h.vars.size() != 1) throw ParseError("expected a univariate series header");
    TruncSeries1 f(h.vars[0], h.orders[0], h.orders[0], h.dim);
    std::string line;
    while (detail::peek_coefficient_line(is, line)) {
        std::istringstream ls(line);
        int i = 0;
        std::string colon;
        if (!(ls >> i >> colon) || colon != ":") throw ParseError("bad coefficient line: " + line);
        std::string rest;
        std::getline(ls, rest);
        f.set_coeff(i, AlgebraElement::parse(rest));
    }
    return f;
}

inline TruncSeries2 TruncSeries2::parse(std::istream& is) {
    const auto h = detail::parse_series_header(detail::next_nonempty_line(is));
    if (h.vars.size() != 2) throw ParseError("expected a bivariate series header");
    TruncSeries2 f(h.vars[0], h.vars[1], h.orders[0], h.orders[1], h.orders[0], h.orders[1], h.dim);
    std::string line;
    while (detail::peek_coefficient_line(is, line)) {
        std::istringstream ls(line);
        int i = 0, j = 0;
        std::string colon;
        if (!(ls >> i >> j >> colon) || colon != ":")
            throw ParseError("bad coefficient line: " + line);
        std::string rest;
        std::getline(ls, rest);
        f.set_coeff(i, j, AlgebraElement::parse(rest));
    }
    return f;
}

} // namespace ncalg
