#ifndef DLPD_GFFLAG_HPP
#define DLPD_GFFLAG_HPP

// Brute-force finite-field models for GL_n: GF(p^k) arithmetic, flags in
// canonical form, relative position, Deligne-Lusztig and Drinfeld point
// counts, and semistability of filtered spaces.
//
// A field element is the integer whose base-p digits are the coefficients
// of its polynomial representative (digit i is the coefficient of x^i).

#include "dlpd/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace dlpd {

using FElem = std::uint32_t;
using FVec = std::vector<FElem>;
using Perm = std::vector<int>;

struct GfCaps
{
    std::uint64_t field_order = 1u << 16;
    std::uint64_t flags = 1000000;
    // Limits for the exhaustive rational-subspace search.
    int max_n = 4;
    long max_q = 3;
    int max_e = 3;
};

namespace detail {

inline bool is_prime(long p)
{
    if (p < 2)
        return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > UINT64_MAX / a)
        return UINT64_MAX;
    return a * b;
}

inline std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r = sat_mul(r, b);
    return r;
}

// Polynomials over GF(p), coefficients low degree first, no trailing zeros.
using Poly = std::vector<int>;

inline void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline int inv_mod(int a, int p)
{
    int r = 1;
    for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
        if (e & 1)
            r = r * b % p;
    return r;
}

inline Poly poly_mod(Poly a, const Poly& m, int p)
{
    trim(a);
    const int lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size())
    {
        const int c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

inline Poly poly_of(std::uint64_t code, int k, int p)
{
    Poly a(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i, code /= static_cast<std::uint64_t>(p))
        a[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(p));
    return a;
}

inline bool irreducible(const Poly& f, int p)
{
    const int k = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= k; ++d)
        for (std::uint64_t code = 0; code < ipow(static_cast<std::uint64_t>(p), d); ++code)
        {
            Poly g = poly_of(code, d, p);
            g.push_back(1);
            if (poly_mod(f, g, p).empty())
                return false;
        }
    return true;
}

} // namespace detail

class Field
{
public:
    int p() const noexcept { return p_; }
    int k() const noexcept { return k_; }
    FElem order() const noexcept { return order_; }
    /// Monic modulus, coefficients low degree first.
    const std::vector<int>& modulus() const noexcept { return modulus_; }
    /// The primitive element whose powers index the multiplicative group.
    FElem generator() const noexcept { return exp_[1 % exp_.size()]; }

    std::string modulus_string() const
    {
        std::string s;
        for (int i = k_; i >= 0; --i)
        {
            const int c = modulus_[static_cast<std::size_t>(i)];
            if (c == 0)
                continue;
            if (!s.empty())
                s += "+";
            if (c != 1 || i == 0)
                s += std::to_string(c);
            if (i > 0)
                s += i == 1 ? "x" : "x^" + std::to_string(i);
        }
        return s;
    }

    FElem add(FElem a, FElem b) const
    {
        if (p_ == 2)
            return a ^ b;
        FElem r = 0;
        for (FElem place = 1; a || b; place *= static_cast<FElem>(p_), a /= p_, b /= p_)
            r += (a % p_ + b % p_) % p_ * place;
        return r;
    }

    FElem neg(FElem a) const
    {
        if (p_ == 2)
            return a;
        FElem r = 0;
        for (FElem place = 1; a; place *= static_cast<FElem>(p_), a /= p_)
            r += (p_ - a % p_) % p_ * place;
        return r;
    }

    FElem sub(FElem a, FElem b) const { return add(a, neg(b)); }

    FElem mul(FElem a, FElem b) const
    {
        if (a == 0 || b == 0)
            return 0;
        return exp_[(log_[a] + log_[b]) % (order_ - 1)];
    }

    FElem inv(FElem a) const
    {
        if (a == 0)
            throw UsageError("division by zero in GF(" + std::to_string(order_) + ")");
        return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
    }

    FElem div(FElem a, FElem b) const { return mul(a, inv(b)); }

    FElem pow(FElem a, std::uint64_t e) const
    {
        if (e == 0)
            return 1;
        if (a == 0)
            return 0;
        return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % (order_ - 1))) % (order_ - 1))];
    }

    /// Elements with x^q = x, ascending.
    std::vector<FElem> subfield(long q) const
    {
        check_subfield(q);
        std::vector<FElem> out;
        for (FElem x = 0; x < order_; ++x)
            if (pow(x, static_cast<std::uint64_t>(q)) == x)
                out.push_back(x);
        return out;
    }

    /// Throws unless q = p^m with m dividing k.
    void check_subfield(long q) const
    {
        long m = 0, rest = q;
        while (rest > 1 && rest % p_ == 0)
        {
            rest /= p_;
            ++m;
        }
        if (q < 2 || rest != 1 || k_ % m != 0)
            throw UsageError("q = " + std::to_string(q) + " is not the order of a subfield of GF(" +
                             std::to_string(p_) + "^" + std::to_string(k_) + ")");
    }

private:
    friend std::shared_ptr<const Field> field_build(long p, int k, std::uint64_t cap);

    // Multiplication by polynomial arithmetic; only used to build the tables.
    FElem slow_mul(FElem a, FElem b) const
    {
        detail::Poly pa = detail::poly_of(a, k_, p_), pb = detail::poly_of(b, k_, p_);
        detail::Poly prod(static_cast<std::size_t>(2 * k_));
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j)
                prod[static_cast<std::size_t>(i + j)] += pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(j)];
        for (auto& c : prod)
            c %= p_;
        detail::Poly r = detail::poly_mod(prod, modulus_, p_);
        FElem out = 0;
        for (std::size_t i = r.size(); i-- > 0;)
            out = out * static_cast<FElem>(p_) + static_cast<FElem>(r[i]);
        return out;
    }

    int p_ = 2;
    int k_ = 1;
    FElem order_ = 2;
    std::vector<int> modulus_;
    std::vector<FElem> exp_;
    std::vector<FElem> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^k) with the lexicographically smallest monic irreducible modulus,
/// coefficients compared from x^{k-1} down to the constant term.
inline FieldPtr field_build(long p, int k, std::uint64_t cap = GfCaps{}.field_order)
{
    if (!detail::is_prime(p))
        throw UsageError(std::to_string(p) + " is not prime");
    if (k < 1)
        throw UsageError("extension degree must be >= 1");
    const std::uint64_t order = detail::ipow(static_cast<std::uint64_t>(p), k);
    if (order > cap)
        throw CapacityError("GF(" + std::to_string(p) + "^" + std::to_string(k) + ") exceeds field cap " +
                                std::to_string(cap),
                            order);
    auto f = std::make_shared<Field>();
    f->p_ = static_cast<int>(p);
    f->k_ = k;
    f->order_ = static_cast<FElem>(order);
    for (std::uint64_t code = 0; code < order; ++code)
    {
        detail::Poly m = detail::poly_of(code, k, f->p_);
        m.push_back(1);
        if (detail::irreducible(m, f->p_))
        {
            f->modulus_ = m;
            break;
        }
    }
    const std::size_t units = static_cast<std::size_t>(order - 1);
    for (FElem g = 1; g < order; ++g)
    {
        std::vector<FElem> powers{1};
        FElem x = g;
        while (x != 1)
        {
            powers.push_back(x);
            x = f->slow_mul(x, g);
        }
        if (powers.size() == units)
        {
            f->exp_ = std::move(powers);
            break;
        }
    }
    f->log_.assign(static_cast<std::size_t>(order), 0);
    for (std::size_t i = 0; i < units; ++i)
        f->log_[f->exp_[i]] = static_cast<FElem>(i);
    return f;
}

/// (p, m) with q = p^m, or a usage error.
inline std::pair<long, int> prime_power(long q)
{
    for (long p = 2; p <= q; ++p)
        if (q % p == 0)
        {
            int m = 0;
            long rest = q;
            while (rest % p == 0)
            {
                rest /= p;
                ++m;
            }
            if (rest != 1 || !detail::is_prime(p))
                break;
            return {p, m};
        }
    throw UsageError("q = " + std::to_string(q) + " is not a prime power");
}

/// GF(q^e).
inline FieldPtr field_of_order(long q, int e, std::uint64_t cap = GfCaps{}.field_order)
{
    if (e < 1)
        throw UsageError("e must be >= 1");
    auto [p, m] = prime_power(q);
    return field_build(p, m * e, cap);
}

/// Entrywise x -> x^q.
inline FVec frobenius(const Field& f, const FVec& v, long q)
{
    f.check_subfield(q);
    FVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = f.pow(v[i], static_cast<std::uint64_t>(q));
    return out;
}

/// Rank of a list of vectors.
inline std::size_t rank_of(const Field& f, std::vector<FVec> rows)
{
    std::size_t rank = 0;
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < n && rank < rows.size(); ++c)
    {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[rank], rows[piv]);
        const FElem inv = f.inv(rows[rank][c]);
        for (auto& x : rows[rank])
            x = f.mul(x, inv);
        for (std::size_t r = rank + 1; r < rows.size(); ++r)
            if (const FElem c0 = rows[r][c]; c0 != 0)
                for (std::size_t j = c; j < n; ++j)
                    rows[r][j] = f.sub(rows[r][j], f.mul(c0, rows[rank][j]));
        ++rank;
    }
    return rank;
}

/// Number of b-dimensional subspaces of an m-dimensional space over GF(Q).
inline std::uint64_t gaussian_binomial(std::uint64_t Q, int m, int b)
{
    if (b < 0 || b > m)
        return 0;
    // [m, b] = [m-1, b-1] + Q^b [m-1, b], saturating.
    std::vector<std::uint64_t> row(static_cast<std::size_t>(b) + 1);
    row[0] = 1;
    for (int i = 1; i <= m; ++i)
        for (int j = std::min(i, b); j >= 1; --j)
        {
            const std::uint64_t add = detail::sat_mul(detail::ipow(Q, j), row[static_cast<std::size_t>(j)]);
            const std::uint64_t sum = row[static_cast<std::size_t>(j) - 1] + add;
            row[static_cast<std::size_t>(j)] = sum < add ? UINT64_MAX : sum;
        }
    return row[static_cast<std::size_t>(b)];
}

/// All b-dimensional subspaces of K^m with reduced echelon bases whose
/// entries lie in `scalars` (a subfield, ascending, starting 0, 1).
inline std::vector<std::vector<FVec>> enumerate_subspaces(int m, int b, const std::vector<FElem>& scalars)
{
    std::vector<std::vector<FVec>> out;
    if (b < 0 || b > m)
        return out;
    std::vector<int> pivots(static_cast<std::size_t>(b));
    auto emit = [&] {
        std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, column)
        for (std::size_t r = 0; r < pivots.size(); ++r)
            for (int c = pivots[r] + 1; c < m; ++c)
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                    free.emplace_back(r, static_cast<std::size_t>(c));
        std::vector<std::size_t> digit(free.size());
        while (true)
        {
            std::vector<FVec> basis(pivots.size(), FVec(static_cast<std::size_t>(m)));
            for (std::size_t r = 0; r < pivots.size(); ++r)
                basis[r][static_cast<std::size_t>(pivots[r])] = 1;
            for (std::size_t i = 0; i < free.size(); ++i)
                basis[free[i].first][free[i].second] = scalars[digit[i]];
            out.push_back(std::move(basis));
            std::size_t i = free.size();
            while (i > 0 && ++digit[i - 1] == scalars.size())
                digit[--i] = 0;
            if (i == 0)
                break;
        }
    };
    std::function<void(int, int)> choose = [&](int r, int from) {
        if (r == b)
        {
            emit();
            return;
        }
        for (int c = from; c <= m - (b - r); ++c)
        {
            pivots[static_cast<std::size_t>(r)] = c;
            choose(r + 1, c + 1);
        }
    };
    choose(0, 0);
    return out;
}

/// 0 < d_1 < ... < d_r < n; complete when r = n - 1.
using FlagType = std::vector<int>;

inline FlagType complete_type(int n)
{
    FlagType t(static_cast<std::size_t>(std::max(n - 1, 0)));
    std::iota(t.begin(), t.end(), 1);
    return t;
}

inline void validate_type(int n, const FlagType& type)
{
    if (n < 1)
        throw UsageError("n must be >= 1");
    for (std::size_t i = 0; i < type.size(); ++i)
        if (type[i] <= (i ? type[i - 1] : 0) || type[i] >= n)
            throw UsageError("flag type must satisfy 0 < d_1 < ... < d_r < n");
}

/// cols[0 .. d_i) spans the i-th subspace; the columns of each step are the
/// reduced echelon basis of its part vanishing on all earlier pivot rows.
struct Flag
{
    FieldPtr field;
    int n = 0;
    FlagType type;
    std::vector<FVec> cols;

    bool operator==(const Flag& o) const { return n == o.n && type == o.type && cols == o.cols; }
    bool operator<(const Flag& o) const { return cols < o.cols; }
    bool complete() const { return static_cast<int>(type.size()) == n - 1; }

    /// Field-element indices, one row per basis column.
    std::vector<FVec> matrix() const { return cols; }
};

/// The canonical form of the flag spanned step by step by `cols`.
inline Flag canonical_flag(const FieldPtr& field, int n, const FlagType& type, std::vector<FVec> cols)
{
    validate_type(n, type);
    const Field& f = *field;
    const std::size_t total = type.empty() ? 0 : static_cast<std::size_t>(type.back());
    if (cols.size() != total)
        throw UsageError("flag needs " + std::to_string(total) + " basis vectors, got " + std::to_string(cols.size()));
    for (const auto& c : cols)
        if (c.size() != static_cast<std::size_t>(n))
            throw UsageError("flag basis vectors must have length n");
    std::vector<FVec> out;
    std::vector<std::size_t> pivots;
    for (int d : type)
    {
        std::vector<FVec> pool(cols.begin(), cols.begin() + d);
        if (rank_of(f, pool) != static_cast<std::size_t>(d))
            throw UsageError("flag basis is not adapted to its type");
        // Eliminate the earlier pivot rows.
        for (std::size_t p : pivots)
        {
            auto it = std::find_if(pool.begin(), pool.end(), [&](const FVec& v) { return v[p] != 0; });
            FVec piv = *it;
            pool.erase(it);
            const FElem inv = f.inv(piv[p]);
            for (auto& x : piv)
                x = f.mul(x, inv);
            for (auto& v : pool)
                if (const FElem c = v[p]; c != 0)
                    for (std::size_t j = 0; j < v.size(); ++j)
                        v[j] = f.sub(v[j], f.mul(c, piv[j]));
        }
        // Reduced echelon form of the remaining block.
        std::vector<FVec> block;
        for (std::size_t c = 0; c < static_cast<std::size_t>(n) && !pool.empty(); ++c)
        {
            auto it = std::find_if(pool.begin(), pool.end(), [&](const FVec& v) { return v[c] != 0; });
            if (it == pool.end())
                continue;
            FVec piv = *it;
            pool.erase(it);
            const FElem inv = f.inv(piv[c]);
            for (auto& x : piv)
                x = f.mul(x, inv);
            for (auto* set : {&pool, &block})
                for (auto& v : *set)
                    if (const FElem k = v[c]; k != 0)
                        for (std::size_t j = 0; j < v.size(); ++j)
                            v[j] = f.sub(v[j], f.mul(k, piv[j]));
            block.push_back(std::move(piv));
            pivots.push_back(c);
        }
        std::sort(block.begin(), block.end(), [](const FVec& a, const FVec& b) {
            return std::find_if(a.begin(), a.end(), [](FElem x) { return x != 0; }) - a.begin() <
                   std::find_if(b.begin(), b.end(), [](FElem x) { return x != 0; }) - b.begin();
        });
        for (auto& v : block)
            out.push_back(std::move(v));
    }
    return Flag{field, n, type, std::move(out)};
}

inline std::uint64_t flag_count(std::uint64_t Q, int n, const FlagType& type)
{
    std::uint64_t c = 1;
    int prev = 0;
    for (int d : type)
    {
        c = detail::sat_mul(c, gaussian_binomial(Q, n - prev, d - prev));
        prev = d;
    }
    return c;
}

/// Every flag of the given type over `field`, each in canonical form.
inline std::vector<Flag> enumerate_flags(int n, const FieldPtr& field, const FlagType& type,
                                         std::uint64_t cap = GfCaps{}.flags)
{
    validate_type(n, type);
    const std::uint64_t count = flag_count(field->order(), n, type);
    if (count > cap)
        throw CapacityError("flag enumeration exceeds cap " + std::to_string(cap), count);
    std::vector<FElem> all(field->order());
    std::iota(all.begin(), all.end(), FElem{0});
    std::vector<Flag> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<FVec> cols;
    std::vector<bool> used(static_cast<std::size_t>(n));
    std::map<std::pair<int, int>, std::vector<std::vector<FVec>>> cache;
    std::function<void(std::size_t, int)> rec = [&](std::size_t step, int prev) {
        if (step == type.size())
        {
            out.push_back(Flag{field, n, type, cols});
            return;
        }
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < used.size(); ++r)
            if (!used[r])
                rows.push_back(r);
        const int m = n - prev, b = type[step] - prev;
        auto& subs = cache[{m, b}];
        if (subs.empty())
            subs = enumerate_subspaces(m, b, all);
        for (const auto& basis : subs)
        {
            std::vector<std::size_t> new_pivots;
            for (const auto& v : basis)
            {
                FVec col(static_cast<std::size_t>(n));
                for (std::size_t i = 0; i < v.size(); ++i)
                    col[rows[i]] = v[i];
                const auto lead = static_cast<std::size_t>(std::find(v.begin(), v.end(), FElem{1}) - v.begin());
                new_pivots.push_back(rows[lead]);
                cols.push_back(std::move(col));
            }
            for (auto r : new_pivots)
                used[r] = true;
            rec(step + 1, type[step]);
            for (auto r : new_pivots)
                used[r] = false;
            cols.resize(cols.size() - basis.size());
        }
    };
    rec(0, 0);
    return out;
}

inline Flag frobenius(const Flag& fl, long q)
{
    std::vector<FVec> cols;
    for (const auto& c : fl.cols)
        cols.push_back(frobenius(*fl.field, c, q));
    return canonical_flag(fl.field, fl.n, fl.type, std::move(cols));
}

/// The permutation w with w(j) = i where d_ij = 1 (0-based), d the
/// second difference of r_ij = dim(F_i cap G_j).
inline Perm relative_position(const Flag& f, const Flag& g)
{
    if (!f.complete() || !g.complete() || f.n != g.n || f.field->order() != g.field->order())
        throw UsageError("relative position needs two complete flags of the same size and field");
    const int n = f.n;
    auto r = [&](int i, int j) -> int {
        if (i == 0 || j == 0)
            return 0;
        if (i == n)
            return j;
        if (j == n)
            return i;
        std::vector<FVec> rows(f.cols.begin(), f.cols.begin() + i);
        rows.insert(rows.end(), g.cols.begin(), g.cols.begin() + j);
        return i + j - static_cast<int>(rank_of(*f.field, rows));
    };
    std::vector<std::vector<int>> rr(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(n + 1)));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            rr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r(i, j);
    Perm w(static_cast<std::size_t>(n), -1);
    std::vector<int> row_hits(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
        {
            auto R = [&](int a, int b) { return rr[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
            const int d = R(i, j) - R(i - 1, j) - R(i, j - 1) + R(i - 1, j - 1);
            if (d == 1)
            {
                if (w[static_cast<std::size_t>(j - 1)] != -1)
                    throw InternalError("rank matrix is not a permutation matrix");
                w[static_cast<std::size_t>(j - 1)] = i - 1;
                ++row_hits[static_cast<std::size_t>(i - 1)];
            }
            else if (d != 0)
                throw InternalError("rank matrix is not a permutation matrix");
        }
    for (int j = 0; j < n; ++j)
        if (w[static_cast<std::size_t>(j)] == -1 || row_hits[static_cast<std::size_t>(j)] != 1)
            throw InternalError("rank matrix is not a permutation matrix");
    return w;
}

inline Perm inverse_perm(const Perm& w)
{
    Perm inv(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        inv[static_cast<std::size_t>(w[j])] = static_cast<int>(j);
    return inv;
}

/// s_1 s_2 ... s_{n-1} acting right to left: j -> j+1, n-1 -> 0.
inline Perm coxeter_perm(int n)
{
    Perm c(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        c[static_cast<std::size_t>(j)] = (j + 1) % n;
    return c;
}

/// Number of complete flags f over GF(q^e) with inv(f, F f) = w, for every w.
inline std::map<Perm, std::uint64_t> dl_point_histogram(int n, long q, int e, const GfCaps& caps = {})
{
    auto field = field_of_order(q, e, caps.field_order);
    std::map<Perm, std::uint64_t> hist;
    for (const auto& f : enumerate_flags(n, field, complete_type(n), caps.flags))
        ++hist[relative_position(f, frobenius(f, q))];
    return hist;
}

inline std::uint64_t dl_point_count(int n, long q, int e, const Perm& w, const GfCaps& caps = {})
{
    Perm sorted = w;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(w.size()) != n || sorted[static_cast<std::size_t>(i)] != i)
            throw UsageError("w is not a permutation of 0.." + std::to_string(n - 1));
    auto field = field_of_order(q, e, caps.field_order);
    std::uint64_t count = 0;
    for (const auto& f : enumerate_flags(n, field, complete_type(n), caps.flags))
        count += relative_position(f, frobenius(f, q)) == w;
    return count;
}

/// Points of P^{n-1}(GF(q^e)) on no GF(q)-rational hyperplane.
inline std::uint64_t omega_point_count(int n, long q, int e, const GfCaps& caps = {})
{
    if (n < 1)
        throw UsageError("n must be >= 1");
    auto field = field_of_order(q, e, caps.field_order);
    const Field& f = *field;
    const std::uint64_t points = gaussian_binomial(f.order(), n, 1);
    if (points > caps.flags)
        throw CapacityError("projective space exceeds cap " + std::to_string(caps.flags), points);
    std::vector<FElem> all(f.order());
    std::iota(all.begin(), all.end(), FElem{0});
    const auto hyperplanes = enumerate_subspaces(n, 1, f.subfield(q));
    std::uint64_t count = 0;
    for (const auto& pt : enumerate_subspaces(n, 1, all))
    {
        bool on_some = false;
        for (const auto& h : hyperplanes)
        {
            FElem s = 0;
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
                s = f.add(s, f.mul(h[0][i], pt[0][i]));
            if (s == 0)
            {
                on_some = true;
                break;
            }
        }
        count += !on_some;
    }
    return count;
}

/// t copies of weakly decreasing integer vectors of a common length n.
struct Cochar
{
    std::vector<std::vector<int>> nu;

    int t() const { return static_cast<int>(nu.size()); }
    int n() const { return nu.empty() ? 0 : static_cast<int>(nu.front().size()); }

    void validate() const
    {
        if (nu.empty() || nu.front().empty())
            throw UsageError("cocharacter needs at least one nonempty factor");
        for (const auto& v : nu)
        {
            if (v.size() != nu.front().size())
                throw UsageError("cocharacter factors must have equal length");
            if (!std::is_sorted(v.rbegin(), v.rend()))
                throw UsageError("cocharacter entries must be weakly decreasing");
        }
    }

    bool scalar(std::size_t i) const
    {
        return std::adjacent_find(nu[i].begin(), nu[i].end(), std::not_equal_to<>()) == nu[i].end();
    }
};

/// Partial sums of the multiplicities of the distinct entries, except the last.
inline FlagType jump_type(const std::vector<int>& nu)
{
    FlagType t;
    for (std::size_t i = 1; i < nu.size(); ++i)
        if (nu[i] != nu[i - 1])
            t.push_back(static_cast<int>(i));
    return t;
}

namespace detail {

inline void check_semistable_caps(int n, long q, const Field& f, const GfCaps& caps)
{
    int e = 0;
    for (long r = 1; r < static_cast<long>(f.order()); r *= q)
        ++e;
    std::uint64_t subspaces = 0;
    for (int b = 1; b < n; ++b)
        subspaces += gaussian_binomial(static_cast<std::uint64_t>(q), n, b);
    if (n > caps.max_n || q > caps.max_q || e > caps.max_e)
        throw CapacityError("semistability search beyond n <= " + std::to_string(caps.max_n) + ", q <= " +
                                std::to_string(caps.max_q) + ", e <= " + std::to_string(caps.max_e),
                            subspaces);
}

/// deg(U) of the filtration induced by nu on U, given dims of U cap V_i.
inline long degree(const std::vector<int>& nu, const FlagType& type, const std::vector<std::size_t>& cap_dims,
                   std::size_t dim_u)
{
    long deg = 0;
    std::size_t prev = 0;
    for (std::size_t i = 0; i <= type.size(); ++i)
    {
        const std::size_t here = i < type.size() ? cap_dims[i] : dim_u;
        const int weight = nu[i < type.size() ? static_cast<std::size_t>(type[i]) - 1 : nu.size() - 1];
        deg += static_cast<long>(here - prev) * weight;
        prev = here;
    }
    return deg;
}

inline bool semistable_against(const std::vector<int>& nu, const Flag& fl,
                               const std::vector<std::vector<FVec>>& rational)
{
    const Field& f = *fl.field;
    const long n = static_cast<long>(nu.size());
    const long total = std::accumulate(nu.begin(), nu.end(), 0L);
    for (const auto& u : rational)
    {
        std::vector<std::size_t> caps_dims;
        for (int d : fl.type)
        {
            std::vector<FVec> rows = u;
            rows.insert(rows.end(), fl.cols.begin(), fl.cols.begin() + d);
            caps_dims.push_back(u.size() + static_cast<std::size_t>(d) - rank_of(f, rows));
        }
        const long deg = degree(nu, fl.type, caps_dims, u.size());
        // mu(U) <= mu(V)  <=>  deg(U) * n <= deg(V) * dim U
        if (deg * n > total * static_cast<long>(u.size()))
            return false;
    }
    return true;
}

inline std::vector<std::vector<FVec>> rational_subspaces(int n, const Field& f, long q)
{
    std::vector<std::vector<FVec>> out;
    const auto sub = f.subfield(q);
    for (int b = 1; b < n; ++b)
        for (auto& s : enumerate_subspaces(n, b, sub))
            out.push_back(std::move(s));
    return out;
}

} // namespace detail

/// Every nonzero GF(q)-rational subspace U has slope deg(U)/dim(U) at most
/// the total slope, deg measured through the jumps of the filtration of nu.
inline bool semistable(const Cochar& nu, const Flag& fl, long q, const GfCaps& caps = {})
{
    nu.validate();
    if (nu.t() != 1)
        throw UsageError("semistable takes a single factor");
    if (nu.n() != fl.n || jump_type(nu.nu[0]) != fl.type)
        throw UsageError("flag type does not match the jumps of nu");
    detail::check_semistable_caps(fl.n, q, *fl.field, caps);
    return detail::semistable_against(nu.nu[0], fl, detail::rational_subspaces(fl.n, *fl.field, q));
}

/// Semistable flags of nu's type over GF(q^e).
inline std::uint64_t period_point_count(const Cochar& nu, long q, int e, const GfCaps& caps = {})
{
    nu.validate();
    if (nu.t() != 1)
        throw UsageError("period_point_count takes a single factor");
    const int n = nu.n();
    auto field = field_of_order(q, e, caps.field_order);
    detail::check_semistable_caps(n, q, *field, caps);
    const auto rational = detail::rational_subspaces(n, *field, q);
    const FlagType type = jump_type(nu.nu[0]);
    std::uint64_t count = 0;
    for (const auto& fl : enumerate_flags(n, field, type, caps.flags))
        count += detail::semistable_against(nu.nu[0], fl, rational);
    return count;
}

} // namespace dlpd

#endif // DLPD_GFFLAG_HPP
