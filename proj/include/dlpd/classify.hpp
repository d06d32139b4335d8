#ifndef DLPD_CLASSIFY_HPP
#define DLPD_CLASSIFY_HPP

// When can a Deligne-Lusztig variety X(w) of a split group, or of a t-fold
// restriction of scalars of one, be a period domain X(N)^ss? Necessary
// conditions evaluated as numbers: dim equality, l(w) <= r0 from the
// vanishing and non-vanishing of cohomology, the rank chain
// r0 <= r t1 <= dim X(N) and the Coxeter condition.

#include "dlpd/conjclass.hpp"
#include "dlpd/errors.hpp"
#include "dlpd/gfflag.hpp"
#include "dlpd/rootsys.hpp"
#include "dlpd/weyl.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dlpd {

/// Res_{F_{q^t}/F_q} of the split adjoint group of the given type.
struct GroupSpec
{
    Kind kind = Kind::A;
    int rank = 1;
    int t = 1;

    void validate() const
    {
        if (t < 1)
            throw UsageError("t must be >= 1");
        RootSystem::validate(kind, rank, Profile::bourbaki);
    }

    RootSystemPtr base() const { return build_root_system(kind, rank); }
    RootSystemPtr system() const { return RootSystem::power(base(), t); }

    std::string name() const
    {
        std::string s = kind == Kind::A ? "PGL" + std::to_string(rank + 1) : base()->name();
        return t == 1 ? s : "Res" + std::to_string(t) + "(" + s + ")";
    }
};

enum class Outcome { excluded, drinfeld };
enum class Side { lower, upper };

inline std::string side_name(Side s) { return s == Side::lower ? "lower" : "upper"; }

struct Chain
{
    std::size_t length = 0;  // l(w) = dim X(w)
    int r0 = 0;
    int rt1 = 0;
    std::size_t dim = 0;  // dim X(N)
    int t1 = 0;
};

struct Verdict
{
    Outcome outcome = Outcome::excluded;
    std::string reason;                 // first failing check
    std::vector<std::string> failures;  // every failing check, in order
    int n = 0;
    Side side = Side::lower;
    Chain chain;

    bool drinfeld() const { return outcome == Outcome::drinfeld; }

    std::string label() const
    {
        if (drinfeld())
            return "DrinfeldCase(" + std::to_string(n) + ", " + side_name(side) + ")";
        return "Excluded(" + reason + ")";
    }
};

namespace detail {

inline void check_nu(const GroupSpec& spec, const Cochar& nu)
{
    const auto base = spec.base();
    if (nu.t() != spec.t)
        throw UsageError("nu has " + std::to_string(nu.t()) + " factors, group has t = " + std::to_string(spec.t));
    for (const auto& v : nu.nu)
    {
        if (v.size() != base->ambient_dim())
            throw UsageError("nu factor has length " + std::to_string(v.size()) + ", expected " +
                             std::to_string(base->ambient_dim()));
        Vec x(v.begin(), v.end());
        for (const auto& a : base->bourbaki_simple_roots())
            if (dot(a, x) < 0)
                throw UsageError("nu factor " + to_string(x) + " is not dominant");
    }
}

inline void check_w(const GroupSpec& spec, const WeylElem& w)
{
    const RootSystem& rs = w.system();
    if (rs.kind() != spec.kind || rs.rank() != spec.rank || rs.factors() != spec.t)
        throw UsageError("w lives in " + rs.name() + ", not in the Weyl group of " + spec.name());
}

inline std::set<int> moved_nodes(const RootSystem& base, const std::vector<int>& nu)
{
    Vec x(nu.begin(), nu.end());
    std::set<int> nodes;
    for (std::size_t j = 0; j < base.bourbaki_simple_roots().size(); ++j)
        if (dot(base.bourbaki_simple_roots()[j], x) != 0)
            nodes.insert(base.bourbaki_labels()[j]);
    return nodes;
}

inline bool scalar_factor(const RootSystem& base, const std::vector<int>& nu) { return moved_nodes(base, nu).empty(); }

/// (x, y^(n-1)) -> lower, (x^(n-1), y) -> upper, with x > y.
inline std::optional<Side> drinfeld_shape(const std::vector<int>& nu)
{
    const std::size_t n = nu.size();
    if (n < 2)
        return std::nullopt;
    auto constant = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from + 1; i < to; ++i)
            if (nu[i] != nu[from])
                return false;
        return true;
    };
    if (nu[0] > nu[1] && constant(1, n))
        return Side::lower;
    if (nu[n - 2] > nu[n - 1] && constant(0, n - 1))
        return Side::upper;
    return std::nullopt;
}

} // namespace detail

/// Sum over factors of |Phi+| - |Phi+_M|, M the Levi fixing nu_i.
inline std::size_t pd_dimension(const GroupSpec& spec, const Cochar& nu)
{
    spec.validate();
    detail::check_nu(spec, nu);
    const auto base = spec.base();
    std::size_t dim = 0;
    for (const auto& v : nu.nu)
        dim += parabolic_dim(*base, detail::moved_nodes(*base, v));
    return dim;
}

/// l(w) = |S| of the base and a reduced word meets every F-orbit of simple
/// reflections (one orbit per base node under the rotation) exactly once.
inline bool res_coxeter_check(const GroupSpec& spec, const WeylElem& w)
{
    spec.validate();
    detail::check_w(spec, w);
    if (w.length() != static_cast<std::size_t>(spec.rank))
        return false;
    const int stride = w.system().label_stride();
    std::map<int, int> hits;
    for (int l : reduced_word(w))
        ++hits[l % stride];
    for (int node = 1; node <= spec.rank; ++node)
        if (hits[node] != 1)
            return false;
    return true;
}

namespace detail {

inline Verdict assemble_verdict(const GroupSpec& spec, std::size_t length, bool coxeter, const Cochar& nu,
                                std::size_t dim)
{
    const auto base = spec.base();
    Verdict v;
    v.n = spec.rank + 1;
    int t1 = 0;
    std::optional<std::size_t> nonscalar;
    for (std::size_t i = 0; i < nu.nu.size(); ++i)
        if (!scalar_factor(*base, nu.nu[i]))
        {
            ++t1;
            nonscalar = i;
        }
    v.chain = {length, spec.rank, spec.rank * t1, dim, t1};
    const Chain& c = v.chain;
    auto fail = [&](std::string why) { v.failures.push_back(std::move(why)); };

    if (c.length != c.dim)
        fail("dimension: l(w) = " + std::to_string(c.length) + " != dim X(N) = " + std::to_string(c.dim));
    if (c.length > static_cast<std::size_t>(c.r0))
        fail("cohomology: l(w) = " + std::to_string(c.length) + " > r0 = " + std::to_string(c.r0));
    if (t1 == 0)
        fail("trivial N: every factor of nu is scalar");
    else
    {
        if (c.r0 < c.rt1)
            fail("rank chain: r0 = " + std::to_string(c.r0) + " < r*t1 = " + std::to_string(c.rt1));
        if (c.dim > static_cast<std::size_t>(c.rt1))
            fail("rank chain: dim X(N) = " + std::to_string(c.dim) + " > r*t1 = " + std::to_string(c.rt1));
        if (spec.kind != Kind::A)
            fail("shape: " + base->name() + " is not of type A");
        else if (t1 == 1)
        {
            if (auto side = drinfeld_shape(nu.nu[*nonscalar]))
                v.side = *side;
            else
                fail("shape: nu is not (x, y^(n-1)) or (x^(n-1), y)");
        }
    }
    if (!coxeter)
        fail("coxeter: some F-orbit of simple reflections is not met exactly once");

    if (v.failures.empty())
        v.outcome = Outcome::drinfeld;
    else
        v.reason = v.failures.front();
    return v;
}

} // namespace detail

inline Verdict theorem_verdict(const GroupSpec& spec, const WeylElem& w, const Cochar& nu)
{
    spec.validate();
    detail::check_w(spec, w);
    const std::size_t dim = pd_dimension(spec, nu);
    return detail::assemble_verdict(spec, w.length(), res_coxeter_check(spec, w), nu, dim);
}

struct ScanEntry
{
    GroupSpec spec;
    WeylElem w;
    Cochar nu;
    Verdict verdict;
    // DL and period-domain point counts agree for e = 1..3 (t = 1 only).
    std::optional<bool> counts_agree;
};

struct ClassificationScan
{
    std::uint64_t scanned = 0;
    std::vector<ScanEntry> survivors;
};

namespace detail {

inline void weakly_decreasing(int n, int bound, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == n)
    {
        out.push_back(cur);
        return;
    }
    const int top = cur.empty() ? bound : cur.back();
    for (int x = top; x >= 0; --x)
    {
        cur.push_back(x);
        weakly_decreasing(n, bound, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// Every nu in [0, bound]^n weakly decreasing, largest first.
inline std::vector<std::vector<int>> bounded_cochars(int n, int bound)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    detail::weakly_decreasing(n, bound, cur, out);
    return out;
}

/// PGL_n for 2 <= n <= n_max and its restrictions of scalars of degree
/// t <= t_max: every w of the product Weyl group against every t-tuple of
/// nu with entries in [0, nu_bound]. Survivors carry a point-count check at q.
inline ClassificationScan classification_scan(int n_max, int t_max, long q, int nu_bound,
                                              std::uint64_t cap = 1000000, const GfCaps& caps = {})
{
    if (n_max < 2 || t_max < 1 || nu_bound < 0)
        throw UsageError("classification scan needs n_max >= 2, t_max >= 1, nu_bound >= 0");
    prime_power(q);
    std::uint64_t predicted = 0;
    for (int n = 2; n <= n_max; ++n)
    {
        const std::uint64_t per_factor =
            detail::sat_mul(RootSystem::predicted_order(Kind::A, n - 1), bounded_cochars(n, nu_bound).size());
        for (int t = 1; t <= t_max; ++t)
            predicted += detail::ipow(per_factor, t);
    }
    if (predicted > cap)
        throw CapacityError("classification scan exceeds cap " + std::to_string(cap), predicted);

    ClassificationScan scan;
    std::map<std::pair<Perm, int>, std::uint64_t> dl_cache;
    std::map<std::pair<std::vector<int>, int>, std::uint64_t> pd_cache;
    for (int n = 2; n <= n_max; ++n)
    {
        const auto factor_nus = bounded_cochars(n, nu_bound);
        for (int t = 1; t <= t_max; ++t)
        {
            const GroupSpec spec{Kind::A, n - 1, t};
            const auto rs = spec.system();
            const auto group = enumerate_group(rs, cap);
            std::vector<Cochar> nus;
            std::vector<std::size_t> digit(static_cast<std::size_t>(t));
            while (true)
            {
                Cochar nu;
                for (auto d : digit)
                    nu.nu.push_back(factor_nus[d]);
                nus.push_back(std::move(nu));
                std::size_t i = digit.size();
                while (i > 0 && ++digit[i - 1] == factor_nus.size())
                    digit[--i] = 0;
                if (i == 0)
                    break;
            }
            std::vector<std::size_t> dims;
            for (const auto& nu : nus)
                dims.push_back(pd_dimension(spec, nu));
            for (const auto& w : group)
            {
                const std::size_t len = w.length();
                const bool cox = res_coxeter_check(spec, w);
                for (std::size_t k = 0; k < nus.size(); ++k)
                {
                    ++scan.scanned;
                    Verdict v = detail::assemble_verdict(spec, len, cox, nus[k], dims[k]);
                    if (!v.drinfeld())
                        continue;
                    ScanEntry entry{spec, w, nus[k], std::move(v), std::nullopt};
                    if (t == 1)
                    {
                        try
                        {
                            bool agree = true;
                            const Perm perm = to_permutation(w);
                            for (int e = 1; e <= 3; ++e)
                            {
                                auto [it1, fresh1] = dl_cache.try_emplace({perm, e}, 0);
                                if (fresh1)
                                    it1->second = dl_point_count(n, q, e, perm, caps);
                                auto [it2, fresh2] = pd_cache.try_emplace({nus[k].nu[0], e}, 0);
                                if (fresh2)
                                    it2->second = period_point_count(nus[k], q, e, caps);
                                agree = agree && it1->second == it2->second;
                            }
                            entry.counts_agree = agree;
                        }
                        catch (const CapacityError&)
                        {
                        }
                    }
                    scan.survivors.push_back(std::move(entry));
                }
            }
        }
    }
    return scan;
}

} // namespace dlpd

#endif // DLPD_CLASSIFY_HPP
