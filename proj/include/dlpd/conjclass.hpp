#ifndef DLPD_CONJCLASS_HPP
#define DLPD_CONJCLASS_HPP

// Cyclic shifts w -> s w F(s), reduction to minimal length, and the signed
// block elements delta * w_{lambda,eps} of types A, B and D.

#include "dlpd/errors.hpp"
#include "dlpd/rootsys.hpp"
#include "dlpd/weyl.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dlpd {

/// An automorphism of (W, S) induced by an ambient permutation P:
/// F(w) = P w P^-1. Identity for split groups; for a t-fold product the
/// rotation sends copy c to copy c+1 (mod t).
class Frobenius
{
public:
    static Frobenius identity() { return Frobenius(); }

    static Frobenius rotation(const RootSystem& rs)
    {
        Frobenius f;
        f.t_ = rs.factors();
        f.stride_ = rs.label_stride();
        if (f.t_ == 1)
            return f;
        const std::size_t d = rs.ambient_dim() / static_cast<std::size_t>(f.t_);
        f.p_ = Matrix(rs.ambient_dim(), rs.ambient_dim());
        for (int c = 0; c < f.t_; ++c)
        {
            const std::size_t from = static_cast<std::size_t>(c) * d;
            const std::size_t to = static_cast<std::size_t>((c + 1) % f.t_) * d;
            for (std::size_t j = 0; j < d; ++j)
                (*f.p_)(to + j, from + j) = 1;
        }
        return f;
    }

    bool is_identity() const noexcept { return !p_; }

    WeylElem operator()(const WeylElem& w) const
    {
        if (!p_)
            return w;
        if (p_->rows() != w.system().ambient_dim())
            throw UsageError("Frobenius and element live on different spaces");
        std::optional<Word> word;
        if (w.word())
        {
            word = Word{};
            for (int l : *w.word())
                word->push_back(label(l));
        }
        return {w.system_ptr(), *p_ * w.matrix() * p_->transpose(), std::move(word)};
    }

    /// Image of a product label.
    int label(int l) const noexcept
    {
        if (!p_)
            return l;
        return ((l / stride_ + 1) % t_) * stride_ + l % stride_;
    }

private:
    std::optional<Matrix> p_;
    int t_ = 1;
    int stride_ = 1;
};

namespace detail {

inline std::vector<WeylElem> bourbaki_generators(const RootSystemPtr& rs)
{
    std::vector<WeylElem> gens;
    for (std::size_t i = 0; i < rs->bourbaki_simple_roots().size(); ++i)
        gens.emplace_back(rs, reflection_matrix(rs->bourbaki_simple_roots()[i]), Word{rs->bourbaki_labels()[i]});
    return gens;
}

} // namespace detail

/// s w F(s) when it is no longer than w.
inline std::optional<WeylElem> cyclic_shift_step(const WeylElem& w, const WeylElem& s, const Frobenius& f)
{
    WeylElem next(w.system_ptr(), s.matrix() * w.matrix() * f(s).matrix());
    if (next.length() > w.length())
        return std::nullopt;
    return next;
}

struct ReductionStep
{
    int generator;  // Bourbaki node label
    WeylElem from;
    WeylElem to;
};

struct ReductionChain
{
    WeylElem start;
    std::vector<ReductionStep> steps;
    WeylElem terminal;

    /// x with terminal = x * start * F(x)^-1.
    WeylElem conjugator() const
    {
        const auto& rs = start.system_ptr();
        WeylElem x = WeylElem::identity(rs);
        for (const auto& st : steps)
        {
            const auto pos = std::find(rs->bourbaki_labels().begin(), rs->bourbaki_labels().end(), st.generator) -
                             rs->bourbaki_labels().begin();
            x = WeylElem(rs, reflection_matrix(rs->bourbaki_simple_roots()[static_cast<std::size_t>(pos)])) * x;
        }
        return x;
    }
};

/// Breadth-first search over cyclic shifts by the Bourbaki simple reflections,
/// tried in label order. Equal-length shifts are explored level by level; the
/// first strictly shorter element found starts the next level. The terminal is
/// the first element of the last level.
inline ReductionChain reduce_to_minimal(const WeylElem& w, const Frobenius& f)
{
    const auto& rs = w.system_ptr();
    const auto gens = detail::bourbaki_generators(rs);
    ReductionChain chain{w, {}, w};
    WeylElem level_start = w;
    while (true)
    {
        struct Node
        {
            WeylElem elem;
            std::ptrdiff_t parent;
            int gen;
        };
        std::vector<Node> nodes{{level_start, -1, 0}};
        std::unordered_set<WeylKey, WeylKeyHash> seen{level_start.key()};
        const std::size_t len = level_start.length();
        std::optional<std::pair<std::size_t, std::size_t>> drop;  // (node, generator)
        std::optional<WeylElem> shorter;
        for (std::size_t head = 0; head < nodes.size() && !drop; ++head)
            for (std::size_t g = 0; g < gens.size(); ++g)
            {
                auto next = cyclic_shift_step(nodes[head].elem, gens[g], f);
                if (!next)
                    continue;
                if (next->length() < len)
                {
                    drop = {head, g};
                    shorter = std::move(next);
                    break;
                }
                if (seen.insert(next->key()).second)
                    nodes.push_back({std::move(*next), static_cast<std::ptrdiff_t>(head), static_cast<int>(g)});
            }
        if (!drop)
            break;
        std::vector<std::size_t> path;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(drop->first); i > 0; i = nodes[static_cast<std::size_t>(i)].parent)
            path.push_back(static_cast<std::size_t>(i));
        for (auto it = path.rbegin(); it != path.rend(); ++it)
        {
            const Node& n = nodes[*it];
            chain.steps.push_back({rs->bourbaki_labels()[static_cast<std::size_t>(n.gen)],
                                   nodes[static_cast<std::size_t>(n.parent)].elem, n.elem});
        }
        chain.steps.push_back({rs->bourbaki_labels()[drop->second], nodes[drop->first].elem, *shorter});
        level_start = *shorter;
    }
    chain.terminal = level_start;
    return chain;
}

/// All elements reachable from w by cyclic shifts of non-increasing length.
inline std::vector<WeylElem> shift_closure(const WeylElem& w, const Frobenius& f)
{
    const auto gens = detail::bourbaki_generators(w.system_ptr());
    std::vector<WeylElem> out{w};
    std::unordered_set<WeylKey, WeylKeyHash> seen{w.key()};
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const auto& g : gens)
            if (auto next = cyclic_shift_step(out[head], g, f); next && seen.insert(next->key()).second)
                out.push_back(std::move(*next));
    return out;
}

/// The F-conjugacy class {x w F(x)^-1 : x in group}.
inline std::vector<WeylElem> f_conjugacy_class(const WeylElem& w, const Frobenius& f,
                                               const std::vector<WeylElem>& group)
{
    std::vector<WeylElem> out;
    std::unordered_set<WeylKey, WeylKeyHash> seen;
    for (const auto& x : group)
    {
        WeylElem y(w.system_ptr(), x.matrix() * w.matrix() * f(x).matrix().transpose());
        if (seen.insert(y.key()).second)
            out.push_back(std::move(y));
    }
    return out;
}

inline std::size_t min_length_bruteforce(const WeylElem& w, const Frobenius& f, const std::vector<WeylElem>& group)
{
    std::size_t best = w.length();
    for (const auto& y : f_conjugacy_class(w, f, group))
        best = std::min(best, y.length());
    return best;
}

inline std::size_t min_length_bruteforce(const WeylElem& w, const Frobenius& f, std::uint64_t cap = 100000)
{
    return min_length_bruteforce(w, f, enumerate_group(w.system_ptr(), cap));
}

enum class Delta { one, s1, tprime };

inline std::string delta_name(Delta d)
{
    switch (d)
    {
    case Delta::one: return "1";
    case Delta::s1: return "s1";
    case Delta::tprime: return "tp";
    }
    return "?";
}

/// (lambda, eps, delta) naming delta * w_{lambda,eps}. `ell` is the number
/// of coordinates: A_{ell-1}, B_ell or D_ell. lambda is a composition of ell
/// (A, B) or ell-1 (D).
struct GPDatum
{
    Kind kind = Kind::A;
    int ell = 2;
    std::vector<int> lambda;
    std::vector<int> eps;
    Delta delta = Delta::one;

    friend bool operator==(const GPDatum&, const GPDatum&) = default;

    /// First and last coordinate (1-based) of block i.
    std::pair<int, int> block(std::size_t i) const
    {
        int before = 0;
        for (std::size_t j = 0; j < i; ++j)
            before += lambda[j];
        const int shift = kind == Kind::D ? 1 : 0;
        return {before + 1 + shift, before + lambda[i] + shift};
    }

    void validate() const
    {
        if (kind != Kind::A && kind != Kind::B && kind != Kind::D)
            throw UsageError("signed block data exist for types A, B, D only");
        const int min_ell = kind == Kind::D ? 4 : 2;
        if (ell < min_ell)
            throw UsageError("ell = " + std::to_string(ell) + " too small for type " + kind_name(kind));
        if (lambda.empty() || lambda.size() != eps.size())
            throw UsageError("lambda and eps must be nonempty and of equal length");
        int sum = 0;
        for (int x : lambda)
        {
            if (x < 1)
                throw UsageError("lambda parts must be >= 1");
            sum += x;
        }
        const int want = kind == Kind::D ? ell - 1 : ell;
        if (sum != want)
            throw UsageError("lambda must sum to " + std::to_string(want));
        for (int s : eps)
            if (s != 1 && s != -1)
                throw UsageError("eps entries must be +1 or -1");
        if (delta != Delta::one && kind != Kind::D)
            throw UsageError("delta other than 1 needs type D");
    }

    /// The Weyl system the element lives in (profile paper5).
    RootSystemPtr system() const
    {
        return build_root_system(kind, kind == Kind::A ? ell - 1 : ell, Profile::paper5);
    }
};

inline std::string format_datum(const GPDatum& d)
{
    std::string out = "lambda=";
    for (std::size_t i = 0; i < d.lambda.size(); ++i)
        out += (i ? "," : "") + std::to_string(d.lambda[i]);
    out += " eps=";
    for (std::size_t i = 0; i < d.eps.size(); ++i)
        out += std::string(i ? "," : "") + (d.eps[i] > 0 ? "+" : "-");
    return out + " delta=" + delta_name(d.delta);
}

/// Parses "lambda=2,1 eps=+,- delta=1|s1|tp"; eps defaults to all '+',
/// delta to 1.
inline GPDatum parse_datum(Kind kind, int ell, const std::string& text)
{
    GPDatum d;
    d.kind = kind;
    d.ell = ell;
    std::istringstream in(text);
    std::string tok;
    bool have_eps = false;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s)
        {
            if (c == ',')
            {
                parts.push_back(cur);
                cur.clear();
            }
            else
                cur += c;
        }
        parts.push_back(cur);
        return parts;
    };
    while (in >> tok)
    {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw UsageError("malformed datum field '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "lambda")
        {
            for (const auto& p : split(val))
            {
                auto k = detail::parse_index(p);
                if (!k)
                    throw UsageError("malformed lambda part '" + p + "'");
                d.lambda.push_back(*k);
            }
        }
        else if (key == "eps")
        {
            have_eps = true;
            for (const auto& p : split(val))
            {
                if (p == "+" || p == "+1" || p == "1")
                    d.eps.push_back(1);
                else if (p == "-" || p == "-1")
                    d.eps.push_back(-1);
                else
                    throw UsageError("malformed sign '" + p + "'");
            }
        }
        else if (key == "delta")
        {
            if (val == "1")
                d.delta = Delta::one;
            else if (val == "s1")
                d.delta = Delta::s1;
            else if (val == "tp")
                d.delta = Delta::tprime;
            else
                throw UsageError("delta must be 1, s1 or tp");
        }
        else
            throw UsageError("unknown datum field '" + key + "'");
    }
    if (!have_eps)
        d.eps.assign(d.lambda.size(), 1);
    d.validate();
    return d;
}

/// Word of w_{lambda_i, eps_i} in the paper5 labels. For D the sign change
/// uses s'_{m_i-2}, which negates e_1 and e_{m_i}.
inline Word gp_block_word(const RootSystem& rs, const GPDatum& d, std::size_t i)
{
    auto [m, n] = d.block(i);
    Word w;
    if (d.eps[i] < 0 && d.kind != Kind::A)
        w = sprime_word(rs, d.kind == Kind::D ? m - 2 : m - 1);
    for (int j = m; j < n; ++j)
        w.push_back(j);
    return w;
}

/// `rs` may supply d.system() prebuilt.
inline WeylElem gp_element(const GPDatum& d, RootSystemPtr rs = nullptr)
{
    d.validate();
    if (!rs)
        rs = d.system();
    Word word;
    if (d.delta == Delta::s1)
        word.push_back(1);
    else if (d.delta == Delta::tprime)
        word.push_back(0);
    std::vector<WeylElem> blocks;
    for (std::size_t i = 0; i < d.lambda.size(); ++i)
    {
        Word b = gp_block_word(*rs, d, i);
        blocks.push_back(from_word(rs, b));
        word.insert(word.end(), b.begin(), b.end());
    }
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (!(blocks[i] * blocks[j] == blocks[j] * blocks[i]))
                throw InternalError("blocks of " + format_datum(d) + " do not commute");
    return from_word(rs, word);
}

namespace detail {

/// Compositions of n ordered by number of parts, then lexicographically descending.
inline std::vector<std::vector<int>> compositions(int n)
{
    std::vector<std::vector<std::vector<int>>> by_parts(static_cast<std::size_t>(n) + 1);
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask)
    {
        std::vector<int> c;
        int run = 1;
        for (int i = 0; i < n - 1; ++i)
        {
            if (mask & (1u << i))
            {
                c.push_back(run);
                run = 1;
            }
            else
                ++run;
        }
        c.push_back(run);
        by_parts[c.size()].push_back(c);
    }
    std::vector<std::vector<int>> out;
    for (auto& group : by_parts)
    {
        std::sort(group.begin(), group.end(), std::greater<>());
        out.insert(out.end(), group.begin(), group.end());
    }
    return out;
}

} // namespace detail

/// Every (lambda, eps[, delta]). Type A keeps only eps = (+,...,+). For D all
/// three deltas are emitted for every (lambda, eps).
inline std::vector<GPDatum> gp_enumerate(Kind kind, int ell)
{
    GPDatum probe{kind, ell, {kind == Kind::D ? ell - 1 : ell}, {1}, Delta::one};
    probe.validate();
    std::vector<GPDatum> out;
    for (const auto& lam : detail::compositions(kind == Kind::D ? ell - 1 : ell))
    {
        const std::size_t k = lam.size();
        const unsigned signs = kind == Kind::A ? 1u : (1u << k);
        for (unsigned mask = 0; mask < signs; ++mask)
        {
            std::vector<int> eps(k);
            for (std::size_t i = 0; i < k; ++i)
                eps[i] = (mask >> i) & 1u ? -1 : 1;
            if (kind == Kind::D)
                for (Delta d : {Delta::one, Delta::s1, Delta::tprime})
                    out.push_back({kind, ell, lam, eps, d});
            else
                out.push_back({kind, ell, lam, eps, Delta::one});
        }
    }
    return out;
}

} // namespace dlpd

#endif // DLPD_CONJCLASS_HPP
