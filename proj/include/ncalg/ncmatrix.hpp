#pragma once

#include <optional>
#include <ostream>
#include <sstream>
#include <type_traits>
#include <vector>

#include "ncalg/algebra.hpp"
#include "ncalg/errors.hpp"
#include "ncalg/ring.hpp"

namespace ncalg {

/// Rectangular matrix over a noncommutative ring. All entries must come from
/// the same ring instance (same dimension, variables, orders).
template <Ring R>
class NCMatrix {
  public:
    NCMatrix(int rows, int cols, const R& proto)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, proto.zero_like()) {
        if (rows < 1 || cols < 1) throw Error("matrix dimensions must be positive");
    }

    static NCMatrix identity(int n, const R& proto) {
        NCMatrix m(n, n, proto);
        for (int i = 0; i < n; ++i) m.at(i, i) = proto.one_like();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    R& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const R& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    const R& proto() const { return e_[0]; }

    bool operator==(const NCMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    NCMatrix operator+(const NCMatrix& o) const {
        check_same_shape(o);
        NCMatrix r = *this;
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
        return r;
    }

    NCMatrix operator-(const NCMatrix& o) const {
        check_same_shape(o);
        NCMatrix r = *this;
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
        return r;
    }

    NCMatrix operator*(const NCMatrix& o) const {
        if (cols_ != o.rows_) throw Error("matrix shape mismatch");
        NCMatrix r(rows_, o.cols_, proto());
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const R& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
            }
        return r;
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    template <class F>
    auto map(F&& f) const {
        using T = std::decay_t<std::invoke_result_t<F&, const R&>>;
        NCMatrix<T> r(rows_, cols_, f(e_[0]).zero_like());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(i, j) = f(at(i, j));
        return r;
    }

    NCMatrix submatrix_removing(int i, int j) const {
        NCMatrix r(rows_ - 1, cols_ - 1, proto());
        for (int a = 0, ra = 0; a < rows_; ++a) {
            if (a == i) continue;
            for (int b = 0, rb = 0; b < cols_; ++b) {
                if (b == j) continue;
                r.at(ra, rb) = at(a, b);
                ++rb;
            }
            ++ra;
        }
        return r;
    }

    /// Gauss-Jordan over the ring. Every row operation multiplies from the
    /// left; a pivot must be ring-invertible and is picked as the first
    /// invertible candidate scanning the remaining rows in index order.
    std::optional<NCMatrix> try_inverse() const {
        if (rows_ != cols_) throw Error("inverse of a non-square matrix");
        const int n = rows_;
        NCMatrix a = *this;
        NCMatrix inv = identity(n, proto());
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            std::optional<R> pinv;
            for (int r = col; r < n; ++r) {
                pinv = a.at(r, col).try_inverse();
                if (pinv) {
                    piv = r;
                    break;
                }
            }
            if (piv < 0) return std::nullopt;
            if (piv != col) {
                for (int j = 0; j < n; ++j) {
                    std::swap(a.at(piv, j), a.at(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            }
            for (int j = 0; j < n; ++j) {
                a.at(col, j) = *pinv * a.at(col, j);
                inv.at(col, j) = *pinv * inv.at(col, j);
            }
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                const R f = a.at(r, col);
                if (f.is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    a.at(r, j) = a.at(r, j) - f * a.at(col, j);
                    inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

    NCMatrix inverse() const {
        auto r = try_inverse();
        if (!r) throw NotInvertible("matrix is not invertible over its ring");
        return *r;
    }

    /// Matrix-of-series dump: outer `entry (r,c):` framing around entry dumps.
    void dump(std::ostream& os) const {
        os << "rows=" << rows_ << " cols=" << cols_ << "\n";
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                os << "entry (" << i << "," << j << "):\n";
                at(i, j).dump(os);
            }
    }

    std::string dump() const {
        std::ostringstream os;
        dump(os);
        return os.str();
    }

  private:
    void check_same_shape(const NCMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
    }

    int rows_, cols_;
    std::vector<R> e_;
};

/// Quasideterminant at position (i, j), zero-based: the (i,j) entry minus
/// (row i without j) * inverse(complement) * (column j without i). Empty when
/// the complement submatrix is not invertible over the ring.
template <Ring R>
std::optional<R> quasidet(const NCMatrix<R>& x, int i, int j) {
    if (x.rows() != x.cols()) throw Error("quasideterminant of a non-square matrix");
    const int m = x.rows();
    if (i < 0 || j < 0 || i >= m || j >= m) throw Error("quasideterminant index out of range");
    if (m == 1) return x.at(0, 0);
    auto inv = x.submatrix_removing(i, j).try_inverse();
    if (!inv) return std::nullopt;
    R acc = x.proto().zero_like();
    // row * inverse * column, accumulated left to right
    std::vector<R> rowinv;
    rowinv.reserve(static_cast<size_t>(m - 1));
    for (int c = 0; c < m - 1; ++c) {
        R s = x.proto().zero_like();
        for (int b = 0, ib = 0; b < m; ++b) {
            if (b == j) continue;
            s = s + x.at(i, b) * inv->at(ib, c);
            ++ib;
        }
        rowinv.push_back(s);
    }
    for (int a = 0, ia = 0; a < m; ++a) {
        if (a == i) continue;
        acc = acc + rowinv[static_cast<size_t>(ia)] * x.at(a, j);
        ++ia;
    }
    return x.at(i, j) - acc;
}

/// Wronski matrix: row r holds the r-th derivatives of f_1..f_m.
template <DifferentialRing S>
NCMatrix<S> wronski(const std::vector<S>& f, Var d) {
    if (f.empty()) throw Error("wronski of an empty family");
    NCMatrix<S> w(static_cast<int>(f.size()), static_cast<int>(f.size()), f[0]);
    for (int j = 0; j < w.cols(); ++j) {
        S cur = f[static_cast<size_t>(j)];
        for (int r = 0; r < w.rows(); ++r) {
            w.at(r, j) = cur;
            if (r + 1 < w.rows()) cur = cur.derive(d);
        }
    }
    return w;
}

/// Vandermonde matrix V_{ r j } = x_j^r (zero-based rows).
inline NCMatrix<AlgebraElement> vandermonde(const std::vector<AlgebraElement>& x) {
    if (x.empty()) throw Error("vandermonde of an empty family");
    NCMatrix<AlgebraElement> v(static_cast<int>(x.size()), static_cast<int>(x.size()), x[0]);
    for (int j = 0; j < v.cols(); ++j) {
        AlgebraElement cur = x[static_cast<size_t>(j)].one_like();
        for (int r = 0; r < v.rows(); ++r) {
            v.at(r, j) = cur;
            if (r + 1 < v.rows()) cur = cur * x[static_cast<size_t>(j)];
        }
    }
    return v;
}

/// Classical determinant by cofactor expansion. Only meaningful when the
/// entries commute (d = 1 coefficient algebra); used by the commutative
/// degeneration checks.
template <Ring R>
R commutative_det(const NCMatrix<R>& x) {
    if (x.rows() != x.cols()) throw Error("determinant of a non-square matrix");
    const int n = x.rows();
    if (n == 1) return x.at(0, 0);
    R acc = x.proto().zero_like();
    for (int j = 0; j < n; ++j) {
        if (x.at(0, j).is_zero()) continue;
        R term = x.at(0, j) * commutative_det(x.submatrix_removing(0, j));
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace ncalg
