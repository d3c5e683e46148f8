#include "hbops/exactnum.hpp"

#include "hbops/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hbops {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) throw ParseError("empty rational literal");

    auto decimal = s.find('.');
    if (decimal != std::string::npos && s.find('/') == std::string::npos) {
        bool negative = s[0] == '-';
        std::string body = (s[0] == '-' || s[0] == '+') ? s.substr(1) : s;
        decimal = body.find('.');
        std::string digits = body.substr(0, decimal) + body.substr(decimal + 1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw ParseError("malformed rational literal '" + s + "'");
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, body.size() - decimal - 1);
        Rational r(num, den);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }

    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("malformed rational literal '" + s + "'");
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

double to_double(const Rational& r) { return r.get_d(); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("non-finite double");
    Rational r(x);
    r.canonicalize();
    return r;
}

Rational approximate(double x, long max_den) {
    if (!std::isfinite(x)) throw DomainError("non-finite double");
    // Convergents of the continued fraction, stopped before max_den.
    bool negative = x < 0;
    double y = std::fabs(x);
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(y);
        mpz_class ai(a);
        mpz_class p2 = ai * p1 + p0;
        mpz_class q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = y - a;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

RationalVector zeros(std::size_t n) { return RationalVector(n, Rational(0)); }

RationalVector unit_vector(std::size_t n, std::size_t i) {
    RationalVector v = zeros(n);
    v.at(i) = 1;
    return v;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DomainError("dot: dimension mismatch");
    Rational s = 0;
    Rational t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0 || sgn(b[i]) == 0) continue;
        mpq_mul(t.get_mpq_t(), a[i].get_mpq_t(), b[i].get_mpq_t());
        s += t;
    }
    return s;
}

RationalVector add(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DomainError("add: dimension mismatch");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RationalVector sub(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DomainError("sub: dimension mismatch");
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RationalVector scaled(std::span<const Rational> a, const Rational& s) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

RationalVector negated(std::span<const Rational> a) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

void axpy(RationalVector& a, const Rational& s, std::span<const Rational> b) {
    if (a.size() != b.size()) throw DomainError("axpy: dimension mismatch");
    if (sgn(s) == 0) return;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(b[i]) != 0) a[i] += s * b[i];
}

bool is_zero(std::span<const Rational> a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::vector<double> to_doubles(std::span<const Rational> a) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].get_d();
    return r;
}

bool lex_less(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void canonicalize(std::vector<RationalVector>& vs) {
    std::sort(vs.begin(), vs.end(), lex_less);
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

std::string to_string(std::span<const Rational> v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(v[i]);
    os << ')';
    return os.str();
}

// ---- RationalMatrix ----------------------------------------------------

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DomainError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
    RationalMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw DomainError("from_rows: ragged rows");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
    if (rows.empty()) throw DomainError("from_rows: no rows and no column count");
    return from_rows(rows, rows.front().size());
}

RationalMatrix RationalMatrix::from_columns(const std::vector<RationalVector>& cols, std::size_t rows) {
    RationalMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw DomainError("from_columns: ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalVector RationalMatrix::row_vector(std::size_t i) const {
    auto r = row(i);
    return RationalVector(r.begin(), r.end());
}

RationalVector RationalMatrix::column(std::size_t j) const {
    RationalVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<RationalVector> RationalMatrix::row_list() const {
    std::vector<RationalVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalVector RationalMatrix::apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw DomainError("apply: dimension mismatch");
    RationalVector r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) r[i] = dot(row(i), v);
    return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
    if (cols_ != other.rows_) throw DomainError("matrix product: shape mismatch");
    RationalMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                if (sgn(other(k, j)) != 0) r(i, j) += a * other(k, j);
        }
    return r;
}

RationalMatrix RationalMatrix::scaled(const Rational& s) const {
    RationalMatrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
}

// ---- elimination -------------------------------------------------------

std::size_t rank(const RationalMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;

    // Integer copy: scale each row by the lcm of its denominators.
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    }

    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

std::size_t rank(const std::vector<RationalVector>& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    return rank(RationalMatrix::from_rows(rows, cols));
}

RowEchelon rref(const RationalMatrix& m) {
    RowEchelon out{m, {}};
    RationalMatrix& a = out.reduced;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && sgn(a(p, c)) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(a(r, j)) != 0) a(i, j) -= f * a(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
    RowEchelon e = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v = zeros(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

RationalMatrix inverse(const RationalMatrix& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n) throw DomainError("inverse: matrix not square");
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw DomainError("inverse: singular matrix");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

RationalVector solve(const RationalMatrix& m, std::span<const Rational> b) {
    const std::size_t n = m.rows();
    if (m.cols() != n || b.size() != n) throw DomainError("solve: shape mismatch");
    RationalMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    RowEchelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw DomainError("solve: singular matrix");
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = e.reduced(i, n);
    return x;
}

std::vector<RationalVector> complete_basis_annihilating(
    std::span<const Rational> x0, const std::vector<RationalVector>& given) {
    const std::size_t n = x0.size();
    if (given.empty()) throw DomainError("complete_basis_annihilating: empty functional list");
    for (const auto& g : given)
        if (g.size() != n) throw DomainError("complete_basis_annihilating: dimension mismatch");
    if (dot(given[0], x0) != 1) throw DomainError("complete_basis_annihilating: x0*(x0) != 1");
    for (std::size_t i = 1; i < given.size(); ++i)
        if (sgn(dot(given[i], x0)) != 0)
            throw DomainError("complete_basis_annihilating: given functional does not vanish at x0");
    if (rank(given, n) != given.size())
        throw DomainError("complete_basis_annihilating: given functionals are dependent");

    std::vector<RationalVector> basis = given;
    for (std::size_t j = 0; j < n && basis.size() < n; ++j) {
        RationalVector v = unit_vector(n, j);
        axpy(v, -x0[j], given[0]);
        basis.push_back(v);
        if (rank(basis, n) != basis.size()) basis.pop_back();
    }
    if (basis.size() != n) throw InternalError("complete_basis_annihilating: completion failed");
    return basis;
}

std::vector<RationalVector> biorthogonal_vectors(const std::vector<RationalVector>& functional_basis) {
    if (functional_basis.empty()) return {};
    const std::size_t n = functional_basis.front().size();
    if (functional_basis.size() != n) throw DomainError("biorthogonal_vectors: basis is not square");
    RationalMatrix f = RationalMatrix::from_rows(functional_basis, n);
    RationalMatrix inv = inverse(f);
    std::vector<RationalVector> out;
    out.reserve(n);
    for (std::size_t j = 0; j < n; ++j) out.push_back(inv.column(j));
    return out;
}

} // namespace hbops
