#ifndef DLPD_FEASLIN_HPP
#define DLPD_FEASLIN_HPP

// Exact decision of homogeneous strict systems A x > 0.
//
// By homogeneity A x > 0 is solvable iff A x >= 1 is; otherwise Gordan's
// alternative gives y >= 0, y != 0 with y^T A = 0. Both are found by the
// first phase of the simplex method over the rationals with Bland's rule.

#include "dlpd/errors.hpp"
#include "dlpd/rational.hpp"
#include "dlpd/rootsys.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dlpd {

struct StrictSystem
{
    std::vector<LinearForm> forms;
    std::size_t dim = 0;

    void validate() const
    {
        for (const auto& f : forms)
        {
            if (f.coeffs.size() != dim)
                throw UsageError("form '" + f.label + "' has " + std::to_string(f.coeffs.size()) +
                                 " coefficients, system dimension is " + std::to_string(dim));
            if (is_zero(f.coeffs))
                throw UsageError("form '" + f.label + "' is zero");
        }
    }

    bool satisfied_by(std::span<const Rational> x) const
    {
        return std::all_of(forms.begin(), forms.end(), [&](const LinearForm& f) { return f(x) > 0; });
    }

    /// y >= 0, y != 0 and y^T A = 0.
    bool certified_by(std::span<const Rational> y) const
    {
        if (y.size() != forms.size() || is_zero(y))
            return false;
        if (std::any_of(y.begin(), y.end(), [](const Rational& c) { return c < 0; }))
            return false;
        Vec sum(dim);
        for (std::size_t i = 0; i < forms.size(); ++i)
            sum = axpy(y[i], forms[i].coeffs, sum);
        return is_zero(sum);
    }
};

struct FeasibilityResult
{
    bool feasible = false;
    std::optional<Vec> witness;
    std::optional<Vec> certificate;
};

namespace detail {

/// A basic solution z >= 0 of M z = b, or nothing when none exists.
inline std::optional<Vec> phase_one(const Matrix& m, const Vec& b)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    const std::size_t width = cols + rows + 1;
    const std::size_t rhs = width - 1;
    Matrix t(rows + 1, width);
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i)
    {
        const int sign = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < cols; ++j)
            t(i, j) = sign * m(i, j);
        t(i, cols + i) = 1;
        t(i, rhs) = sign * b[i];
        basis[i] = cols + i;
    }
    // Reduced costs of "minimise the sum of artificials".
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i)
            t(rows, j) -= t(i, j);
    for (std::size_t i = 0; i < rows; ++i)
        t(rows, rhs) -= t(i, rhs);

    while (true)
    {
        std::size_t enter = width;
        for (std::size_t j = 0; j < rhs; ++j)
            if (t(rows, j) < 0)
            {
                enter = j;
                break;
            }
        if (enter == width)
            break;
        std::size_t leave = rows;
        Rational best;
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (t(i, enter) <= 0)
                continue;
            Rational ratio = t(i, rhs) / t(i, enter);
            if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave]))
            {
                leave = i;
                best = ratio;
            }
        }
        if (leave == rows)
            throw InternalError("phase-one objective unbounded");
        const Rational piv = t(leave, enter);
        for (std::size_t j = 0; j < width; ++j)
            t(leave, j) /= piv;
        for (std::size_t i = 0; i <= rows; ++i)
        {
            if (i == leave || t(i, enter) == 0)
                continue;
            const Rational f = t(i, enter);
            for (std::size_t j = 0; j < width; ++j)
                if (t(leave, j) != 0)
                    t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
    }
    if (t(rows, rhs) != 0)
        return std::nullopt;
    Vec z(cols);
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < cols)
            z[basis[i]] = t(i, rhs);
    return z;
}

inline std::optional<Vec> find_witness(const StrictSystem& sys)
{
    // A(u - v) - s = 1 with u, v, s >= 0.
    const std::size_t m = sys.forms.size(), n = sys.dim;
    Matrix a(m, 2 * n + m);
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            a(i, j) = sys.forms[i].coeffs[j];
            a(i, n + j) = -sys.forms[i].coeffs[j];
        }
        a(i, 2 * n + i) = -1;
    }
    auto z = phase_one(a, Vec(m, Rational(1)));
    if (!z)
        return std::nullopt;
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j)
        x[j] = (*z)[j] - (*z)[n + j];
    return x;
}

inline std::optional<Vec> find_certificate(const StrictSystem& sys)
{
    // A^T y = 0, sum y = 1, y >= 0.
    const std::size_t m = sys.forms.size(), n = sys.dim;
    Matrix a(n + 1, m);
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            a(j, i) = sys.forms[i].coeffs[j];
        a(n, i) = 1;
    }
    Vec b(n + 1);
    b[n] = 1;
    return phase_one(a, b);
}

} // namespace detail

/// Witness as a primitive integer vector, certificate as a primitive
/// non-negative integer vector; both verified before returning.
inline FeasibilityResult strict_feasible(const StrictSystem& sys)
{
    sys.validate();
    FeasibilityResult r;
    if (sys.forms.empty())
    {
        r.feasible = true;
        r.witness = Vec(sys.dim);
        return r;
    }
    if (auto x = detail::find_witness(sys))
    {
        Vec w = primitive_integer(*x);
        if (!sys.satisfied_by(w))
            throw InternalError("simplex witness fails re-substitution");
        r.feasible = true;
        r.witness = std::move(w);
        return r;
    }
    auto y = detail::find_certificate(sys);
    if (!y)
        throw InternalError("neither witness nor certificate found");
    Vec c = primitive_integer(*y);
    if (!sys.certified_by(c))
        throw InternalError("simplex certificate fails verification");
    r.certificate = std::move(c);
    return r;
}

/// Checks a result against its system: the witness strictly satisfies every
/// form, or the certificate is a non-negative nonzero dependency.
inline bool verify(const StrictSystem& sys, const FeasibilityResult& r)
{
    if (r.feasible)
        return r.witness && !r.certificate && sys.satisfied_by(*r.witness);
    return r.certificate && !r.witness && sys.certified_by(*r.certificate);
}

} // namespace dlpd

#endif // DLPD_FEASLIN_HPP
