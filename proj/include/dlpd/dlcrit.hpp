#ifndef DLPD_DLCRIT_HPP
#define DLPD_DLCRIT_HPP

// The Deligne-Lusztig criterion for split groups as a strict linear system.
//
// For w and q we look for x with (q x - w x, alpha) > 0 for every simple
// alpha, using (w x, alpha) = (x, w^-1 alpha). Mode full_D adds alpha(x) > 0
// for the inversions of w; mode chamber_C adds alpha(x) > 0 for the simple
// roots instead. Positivity is always read against the Bourbaki system of
// the same type; elements of a paper5 presentation are moved there as
// matrices, unchanged.

#include "dlpd/conjclass.hpp"
#include "dlpd/errors.hpp"
#include "dlpd/feaslin.hpp"
#include "dlpd/rootsys.hpp"
#include "dlpd/weyl.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace dlpd {

enum class CriterionMode { full_D, chamber_C };

inline std::string mode_name(CriterionMode m) { return m == CriterionMode::full_D ? "full_D" : "chamber_C"; }

inline CriterionMode parse_mode(const std::string& s)
{
    if (s == "full_D")
        return CriterionMode::full_D;
    if (s == "chamber_C")
        return CriterionMode::chamber_C;
    throw UsageError("unknown mode '" + s + "' (expected full_D|chamber_C)");
}

/// w as an element of the Bourbaki system of its type.
inline WeylElem criterion_frame(const WeylElem& w)
{
    const RootSystem& rs = w.system();
    if (rs.profile() == Profile::bourbaki)
        return w;
    return WeylElem(build_root_system(rs.kind(), rs.rank()), w.matrix(), w.word());
}

inline StrictSystem build_criterion_system(const WeylElem& w_in, long q, CriterionMode mode)
{
    if (q < 2)
        throw UsageError("q must be >= 2");
    const WeylElem w = criterion_frame(w_in);
    const RootSystem& rs = w.system();
    StrictSystem sys{{}, rs.ambient_dim()};
    if (mode == CriterionMode::full_D)
    {
        for (const auto& a : w.inversion_set())
            sys.forms.push_back({a, "inv " + to_string(a)});
    }
    else
    {
        for (std::size_t i = 0; i < rs.bourbaki_simple_roots().size(); ++i)
            sys.forms.push_back({rs.bourbaki_simple_roots()[i], "alpha_" + std::to_string(rs.bourbaki_labels()[i])});
    }
    const Matrix winv = w.matrix().transpose();
    for (std::size_t i = 0; i < rs.bourbaki_simple_roots().size(); ++i)
    {
        const Vec& a = rs.bourbaki_simple_roots()[i];
        Vec f = axpy(-1, winv.apply(a), scaled(Rational(q), a));
        sys.forms.push_back({std::move(f), "(qx-wx, alpha_" + std::to_string(rs.bourbaki_labels()[i]) + ")"});
    }
    return sys;
}

struct CriterionReport
{
    WeylElem w;
    long q;
    CriterionMode mode;
    FeasibilityResult result;
    StrictSystem forms_used;
};

namespace detail {

/// Types whose roots live in the sum-zero hyperplane of the ambient space.
inline bool centred_type(const RootSystem& rs) { return rs.kind() == Kind::A || rs.kind() == Kind::G2; }

inline Vec centred(const Vec& x)
{
    Rational mean = 0;
    for (const auto& v : x)
        mean += v;
    mean /= static_cast<long>(x.size());
    Vec out = x;
    for (auto& v : out)
        v -= mean;
    return out;
}

} // namespace detail

inline CriterionReport check_dl_criterion(const WeylElem& w_in, long q, CriterionMode mode)
{
    const WeylElem w = criterion_frame(w_in);
    StrictSystem sys = build_criterion_system(w, q, mode);
    FeasibilityResult res = strict_feasible(sys);
    if (res.feasible && detail::centred_type(w.system()))
    {
        Vec c = primitive_integer(detail::centred(*res.witness));
        if (!sys.satisfied_by(c))
            throw InternalError("centred witness fails re-substitution");
        res.witness = std::move(c);
    }
    if (!verify(sys, res))
        throw InternalError("criterion result fails verification");
    if (mode == CriterionMode::chamber_C && res.feasible &&
        !build_criterion_system(w, q, CriterionMode::full_D).satisfied_by(*res.witness))
        throw InternalError("chamber_C witness is not a full_D witness");
    return {w, q, mode, std::move(res), std::move(sys)};
}

namespace detail {

/// The first dyadic rational round(mid * 2^k) / 2^k strictly inside (lo, hi).
inline Rational dyadic_inside(const Rational& lo, const Rational& hi)
{
    if (!(lo < hi))
        throw InternalError("empty recipe interval (" + to_string(lo) + ", " + to_string(hi) + ")");
    const Rational mid = (lo + hi) / 2;
    Integer scale = 1;
    for (int k = 0; k < 4096; ++k, scale *= 2)
    {
        Rational t = mid * Rational(scale) + Rational(1, 2);
        Integer fl = boost::multiprecision::numerator(t) / boost::multiprecision::denominator(t);
        if (boost::multiprecision::numerator(t) < 0 && fl * boost::multiprecision::denominator(t) != boost::multiprecision::numerator(t))
            fl -= 1;
        Rational c(fl, scale);
        if (lo < c && c < hi)
            return c;
    }
    throw InternalError("no dyadic point found in recipe interval");
}

/// One cycle of the block decomposition on coordinates m..n (1-based):
/// e_j -> e_{j+1} for m <= j < n and e_n -> sigma e_m. A twisted block has
/// m = 1 and e_1 -> -e_2 instead of e_1 -> e_2.
struct RecipeBlock
{
    int m;
    int n;
    int sigma;
    bool twisted = false;
};

inline std::vector<RecipeBlock> recipe_blocks(const GPDatum& d)
{
    std::vector<RecipeBlock> blocks;
    std::size_t first = 0;
    if (d.kind == Kind::D)
    {
        int parity = 1;
        for (int e : d.eps)
            parity *= e;
        if (d.delta == Delta::one)
            blocks.push_back({1, 1, parity});
        else
        {
            const int flip = d.delta == Delta::tprime ? -1 : 1;
            const int head = parity * flip;
            const int close = d.eps[0] * flip;
            const int n1 = d.block(0).second;
            blocks.push_back({1, n1, close, head < 0});
            first = 1;
        }
    }
    for (std::size_t i = first; i < d.lambda.size(); ++i)
    {
        auto [m, n] = d.block(i);
        blocks.push_back({m, n, d.kind == Kind::A ? 1 : d.eps[i]});
    }
    return blocks;
}

} // namespace detail

/// Block-by-block construction of an x in the Bourbaki chamber with
/// q x - w x in the chamber, for w = gp_element(d). Blocks are filled left to
/// right: an arithmetic progression inside each block, a drop b before the
/// next one; the step a and the drop b are dyadic points of open intervals
/// that keep every simple-root inequality strict. The result is checked
/// exactly; types A are returned centred.
inline Vec gp_witness(const GPDatum& d, long q, const RootSystemPtr& bourbaki = nullptr,
                      const RootSystemPtr& p5 = nullptr)
{
    using detail::dyadic_inside;
    d.validate();
    if (q < 2)
        throw UsageError("q must be >= 2");
    const auto blocks = detail::recipe_blocks(d);
    Vec x(static_cast<std::size_t>(d.ell));
    auto X = [&](int i) -> Rational& { return x[static_cast<std::size_t>(i - 1)]; };
    Rational p;  // (w x) at the last coordinate of the previous block
    for (std::size_t k = 0; k < blocks.size(); ++k)
    {
        const auto& bl = blocks[k];
        const int m = bl.m, n = bl.n;
        if (bl.twisted)
        {
            X(2) = 1;
            if (n > 2)
            {
                Rational a = dyadic_inside(0, X(2) / (n - 1));
                for (int i = 3; i <= n; ++i)
                    X(i) = X(2) - (i - 2) * a;
            }
            X(1) = 4 * X(2);
            p = n > 2 ? X(n - 1) : -X(1);
            continue;
        }
        Rational b;
        if (k == 0)
            X(m) = 1;
        else
        {
            const Rational xn = X(m - 1);
            Rational lo = (xn + p) / 3;
            if (lo < 0)
                lo = 0;
            b = dyadic_inside(lo, xn);
            X(m) = xn - b;
        }
        if (n > m)
        {
            Rational hi = X(m) / (n - m + 1);
            if (k > 0 && bl.sigma > 0)
            {
                Rational lim = (b + X(m - 1) - p) / (n - m);
                if (lim < hi)
                    hi = lim;
            }
            Rational a = dyadic_inside(0, hi);
            for (int i = 1; i <= n - m; ++i)
                X(m + i) = X(m) - i * a;
            p = X(n - 1);
        }
        else
            p = bl.sigma * X(n);
    }
    if (d.kind == Kind::A)
        x = detail::centred(x);

    auto rs = bourbaki ? bourbaki : build_root_system(d.kind, d.kind == Kind::A ? d.ell - 1 : d.ell);
    const WeylElem w(rs, gp_element(d, p5).matrix());
    if (!build_criterion_system(w, q, CriterionMode::chamber_C).satisfied_by(x))
        throw InternalError("recipe witness for " + format_datum(d) + " fails the chamber criterion at q = " +
                            std::to_string(q) + ": " + to_string(x));
    return x;
}

struct GPReport
{
    GPDatum datum;
    std::string method;  // "recipe" or "lp"
    CriterionReport report;
};

struct GPScan
{
    Kind kind;
    int ell;
    long q;
    std::vector<GPReport> reports;
    bool all_pass = true;
};

/// Number of data gp_enumerate(kind, ell) returns.
inline std::uint64_t gp_count(Kind kind, int ell)
{
    const int n = kind == Kind::D ? ell - 1 : ell;
    std::uint64_t c = 1;
    for (int i = 1; i < n; ++i)
        c *= kind == Kind::A ? 2 : 3;
    if (kind != Kind::A)
        c *= 2;
    if (kind == Kind::D)
        c *= 3;
    return c;
}

/// chamber_C reports for every datum: the recipe witness when it verifies,
/// the exact LP otherwise.
inline GPScan scan_gp(Kind kind, int ell, long q, std::uint64_t cap = 100000, unsigned jobs = 1)
{
    if (kind != Kind::A && kind != Kind::B && kind != Kind::D)
        throw UsageError("gp scans exist for types A, B, D only");
    if (q < 2)
        throw UsageError("q must be >= 2");
    const std::uint64_t count = gp_count(kind, ell);
    if (count > cap)
        throw CapacityError("gp scan of " + kind_name(kind) + std::to_string(ell) + " exceeds cap " +
                                std::to_string(cap),
                            count);
    const auto data = gp_enumerate(kind, ell);
    const auto p5 = data.front().system();
    const auto bb = build_root_system(kind, kind == Kind::A ? ell - 1 : ell);
    std::vector<std::optional<GPReport>> out(data.size());
    auto work = [&](std::size_t i) {
        const GPDatum& d = data[i];
        const WeylElem g = gp_element(d, p5);
        const WeylElem w(bb, g.matrix(), g.word());
        StrictSystem sys = build_criterion_system(w, q, CriterionMode::chamber_C);
        try
        {
            Vec x = gp_witness(d, q, bb, p5);
            FeasibilityResult res{true, x, std::nullopt};
            out[i] = GPReport{d, "recipe", {w, q, CriterionMode::chamber_C, std::move(res), std::move(sys)}};
        }
        catch (const InternalError&)
        {
            out[i] = GPReport{d, "lp", check_dl_criterion(w, q, CriterionMode::chamber_C)};
        }
    };
    if (jobs <= 1)
        for (std::size_t i = 0; i < data.size(); ++i)
            work(i);
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < data.size(); i = next++)
                    work(i);
            });
        for (auto& t : pool)
            t.join();
    }
    GPScan scan{kind, ell, q, {}, true};
    for (auto& r : out)
    {
        scan.all_pass = scan.all_pass && r->report.result.feasible;
        scan.reports.push_back(std::move(*r));
    }
    return scan;
}

} // namespace dlpd

#endif // DLPD_DLCRIT_HPP
