#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ncalg/errors.hpp"
#include "ncalg/rational.hpp"
#include "ncalg/ring.hpp"

namespace ncalg {

/// Element of the concrete noncommutative star-algebra: a d x d matrix of
/// exact rationals. The involution is the transpose. All arithmetic is exact;
/// no floating point enters this type.
class AlgebraElement {
  public:
    explicit AlgebraElement(int dim) : dim_(dim), e_(static_cast<size_t>(dim) * dim) {
        if (dim < 1) throw Error("dimension must be positive");
    }

    static AlgebraElement zero(int dim) { return AlgebraElement(dim); }

    static AlgebraElement identity(int dim) {
        AlgebraElement r(dim);
        for (int i = 0; i < dim; ++i) r.at(i, i) = Rational(1);
        return r;
    }

    static AlgebraElement scalar(int dim, const Rational& c) {
        AlgebraElement r(dim);
        for (int i = 0; i < dim; ++i) r.at(i, i) = c;
        return r;
    }

    int dim() const { return dim_; }

    Rational& at(int i, int j) { return e_[static_cast<size_t>(i) * dim_ + j]; }
    const Rational& at(int i, int j) const { return e_[static_cast<size_t>(i) * dim_ + j]; }

    AlgebraElement zero_like() const { return AlgebraElement(dim_); }
    AlgebraElement one_like() const { return identity(dim_); }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_identity() const { return *this == identity(dim_); }

    AlgebraElement operator-() const {
        AlgebraElement r(dim_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
        return r;
    }

    AlgebraElement operator+(const AlgebraElement& o) const {
        check_dim(o);
        AlgebraElement r(dim_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
        return r;
    }

    AlgebraElement operator-(const AlgebraElement& o) const {
        check_dim(o);
        AlgebraElement r(dim_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
        return r;
    }

    AlgebraElement operator*(const AlgebraElement& o) const {
        check_dim(o);
        AlgebraElement r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < dim_; ++k) {
                const Rational& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < dim_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    AlgebraElement& operator+=(const AlgebraElement& o) { return *this = *this + o; }
    AlgebraElement& operator-=(const AlgebraElement& o) { return *this = *this - o; }

    bool operator==(const AlgebraElement& o) const { return dim_ == o.dim_ && e_ == o.e_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    /// Involution: transpose. star(x*y) = star(y)*star(x), star(star(x)) = x.
    AlgebraElement star() const {
        AlgebraElement r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    AlgebraElement scaled(const Rational& c) const {
        AlgebraElement r(dim_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * c;
        return r;
    }

    AlgebraElement pow(int k) const {
        if (k < 0) throw Error("negative matrix power");
        AlgebraElement r = identity(dim_);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    /// Exact Gauss-Jordan inverse; empty when the determinant vanishes.
    std::optional<AlgebraElement> try_inverse() const {
        const int n = dim_;
        std::vector<Rational> a(e_);
        AlgebraElement inv = identity(n);
        auto A = [&](int i, int j) -> Rational& { return a[static_cast<size_t>(i) * n + j]; };
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!A(r, col).is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return std::nullopt;
            if (piv != col) {
                for (int j = 0; j < n; ++j) {
                    std::swap(A(piv, j), A(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            }
            const Rational d = A(col, col);
            for (int j = 0; j < n; ++j) {
                A(col, j) = A(col, j) / d;
                inv.at(col, j) = inv.at(col, j) / d;
            }
            for (int r = 0; r < n; ++r) {
                if (r == col || A(r, col).is_zero()) continue;
                const Rational f = A(r, col);
                for (int j = 0; j < n; ++j) {
                    A(r, j) -= f * A(col, j);
                    inv.at(r, j) -= f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    AlgebraElement inverse() const {
        auto r = try_inverse();
        if (!r) throw NotInvertible("matrix over the rationals is singular");
        return *r;
    }

    Rational det() const {
        const int n = dim_;
        std::vector<Rational> a(e_);
        auto A = [&](int i, int j) -> Rational& { return a[static_cast<size_t>(i) * n + j]; };
        Rational d(1);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!A(r, col).is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return Rational(0);
            if (piv != col) {
                for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(col, j));
                d = -d;
            }
            d *= A(col, col);
            for (int r = col + 1; r < n; ++r) {
                if (A(r, col).is_zero()) continue;
                const Rational f = A(r, col) / A(col, col);
                for (int j = col; j < n; ++j) A(r, j) -= f * A(col, j);
            }
        }
        return d;
    }

    int max_numerator_digits() const {
        int m = 0;
        for (const auto& x : e_) m = std::max(m, x.numerator_digits());
        return m;
    }

    std::vector<double> to_doubles() const {
        std::vector<double> r(e_.size());
        for (size_t k = 0; k < e_.size(); ++k) r[k] = e_[k].to_double();
        return r;
    }

    /// Matrix literal: `d; r11 r12 ... ; r21 ... ;` with rationals as p/q or p.
    std::string literal() const {
        std::ostringstream os;
        os << dim_ << ";";
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) os << " " << at(i, j).str();
            os << " ;";
        }
        return os.str();
    }

    static AlgebraElement parse(const std::string& text) {
        std::vector<std::string> tok = tokenize(text);
        size_t p = 0;
        return parse_tokens(tok, p);
    }

    static AlgebraElement parse_tokens(const std::vector<std::string>& tok, size_t& p) {
        auto need = [&](const char* what) -> const std::string& {
            if (p >= tok.size()) throw ParseError(std::string("matrix literal: missing ") + what);
            return tok[p++];
        };
        int d = 0;
        try {
            d = std::stoi(need("dimension"));
        } catch (const std::exception&) {
            throw ParseError("matrix literal: bad dimension");
        }
        if (d < 1) throw ParseError("matrix literal: bad dimension");
        if (need("';'") != ";") throw ParseError("matrix literal: expected ';' after dimension");
        AlgebraElement r(d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) r.at(i, j) = Rational::parse(need("entry"));
            if (need("';'") != ";") throw ParseError("matrix literal: expected row terminator");
        }
        return r;
    }

    static std::vector<std::string> tokenize(const std::string& text) {
        std::vector<std::string> tok;
        std::string cur;
        for (char c : text) {
            if (c == ';') {
                if (!cur.empty()) tok.push_back(std::exchange(cur, {}));
                tok.emplace_back(";");
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) tok.push_back(std::exchange(cur, {}));
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) tok.push_back(cur);
        return tok;
    }

  private:
    void check_dim(const AlgebraElement& o) const {
        if (dim_ != o.dim_) throw Error("dimension mismatch");
    }

    int dim_;
    std::vector<Rational> e_;
};

inline AlgebraElement operator*(const Rational& c, const AlgebraElement& x) { return x.scaled(c); }
inline AlgebraElement operator*(const AlgebraElement& x, const Rational& c) { return x.scaled(c); }

static_assert(Ring<AlgebraElement>);
static_assert(StarRing<AlgebraElement>);

/// Deterministic generator for test instances. Raw engine draws are reduced by
/// modulus so sequences are identical across standard library implementations.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    std::int64_t int_in(std::int64_t lo, std::int64_t hi) {
        if (lo >= hi) return lo;
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    AlgebraElement element(int dim, long bound) {
        AlgebraElement r(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) r.at(i, j) = Rational(int_in(-bound, bound));
        return r;
    }

  private:
    std::mt19937_64 eng_;
};

/// Entries are integers in [-bound, bound]; identical output for identical seeds.
inline AlgebraElement random_element(std::uint64_t seed, int dim, long bound) {
    SeededRng rng(seed);
    return rng.element(dim, bound);
}

} // namespace ncalg
