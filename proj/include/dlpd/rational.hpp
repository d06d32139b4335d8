#ifndef DLPD_RATIONAL_HPP
#define DLPD_RATIONAL_HPP

#include "dlpd/errors.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dlpd {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Vec = std::vector<Rational>;

inline Rational frac(long num, long den = 1) { return Rational(num, den); }

/// Canonical text form "p/q" with q >= 1; integers are written "p/1".
inline std::string to_string(const Rational& r)
{
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
    return os.str();
}

/// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text)
{
    auto bad = [&] { return UsageError("malformed rational '" + std::string(text) + "'"); };
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
        throw bad();
    if (num.front() == '+')
        num.remove_prefix(1);
    Integer d{std::string(den)};
    if (d == 0)
        throw bad();
    return Rational(Integer{std::string(num)}, d);
}

inline std::string to_string(std::span<const Rational> v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + to_string(v[i]);
    return out + ")";
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline Vec axpy(const Rational& c, std::span<const Rational> x, std::span<const Rational> y)
{
    Vec out(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] += c * x[i];
    return out;
}

inline Vec scaled(const Rational& c, std::span<const Rational> x)
{
    Vec out(x.begin(), x.end());
    for (auto& v : out)
        v *= c;
    return out;
}

inline bool is_zero(std::span<const Rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

/// Dense square-or-rectangular matrix over the rationals, row-major.
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows)
    {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j)
                m(i, j) = rows[i][j];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Vec column(std::size_t j) const
    {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    Vec apply(std::span<const Rational> x) const
    {
        if (x.size() != cols_)
            throw UsageError("dimension mismatch: matrix has " + std::to_string(cols_) + " columns, vector has " +
                             std::to_string(x.size()) + " entries");
        Vec y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            y[i] = dot(row(i), x);
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
            {
                const Rational& aik = a(i, k);
                if (aik == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0)
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    const std::vector<Rational>& data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Row-reduces in place; returns the pivot column of each nonzero row.
inline std::vector<std::size_t> row_reduce(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c)
    {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            if (i == r || m(i, c) == 0)
                continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank_of(const std::vector<Vec>& vectors)
{
    if (vectors.empty())
        return 0;
    Matrix m = Matrix::from_rows(vectors);
    return row_reduce(m).size();
}

/// True iff v lies in the rational span of `basis`.
inline bool in_span(const std::vector<Vec>& basis, const Vec& v)
{
    if (is_zero(v))
        return true;
    std::vector<Vec> extended = basis;
    extended.push_back(v);
    return rank_of(extended) == rank_of(basis);
}

/// Solves A y = b; returns nothing when inconsistent, the unique solution when
/// A has full column rank, and nothing-unique otherwise unless `allow_free`.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b, bool allow_free = false)
{
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt;
    if (!allow_free && pivots.size() != a.cols())
        return std::nullopt;
    Vec y(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        y[pivots[r]] = aug(r, a.cols());
    return y;
}

/// Multiplies by the positive lcm of denominators and divides by the gcd of
/// numerators: the primitive integer vector on the same ray.
inline Vec primitive_integer(std::span<const Rational> v)
{
    Integer l = 1;
    for (const auto& r : v)
        l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(r)));
    Vec out(v.begin(), v.end());
    Integer g = 0;
    for (auto& r : out)
    {
        r *= l;
        g = boost::multiprecision::gcd(g, Integer(boost::multiprecision::numerator(r)));
    }
    if (g > 1)
        for (auto& r : out)
            r /= g;
    return out;
}

struct VecHash
{
    std::size_t operator()(const Vec& v) const noexcept
    {
        std::size_t h = v.size();
        for (const auto& r : v)
        {
            std::size_t e = std::hash<std::string>{}(to_string(r));
            h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace dlpd

#endif // DLPD_RATIONAL_HPP
