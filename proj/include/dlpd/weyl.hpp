#ifndef DLPD_WEYL_HPP
#define DLPD_WEYL_HPP

// Weyl group elements as exact orthogonal matrices.
//
// Products act right to left: from_word(rs, {a, b}) is s_a * s_b, and s_b is
// applied to a vector first.

#include "dlpd/errors.hpp"
#include "dlpd/rational.hpp"
#include "dlpd/rootsys.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace dlpd {

/// Generator labels in the numbering of RootSystem::labels().
using Word = std::vector<int>;

/// Signed indices (+-(i+1) into positive_roots()) of the images of the
/// Bourbaki simple roots. Determines the element.
using WeylKey = std::vector<int>;

struct WeylKeyHash
{
    std::size_t operator()(const WeylKey& k) const noexcept
    {
        std::size_t h = k.size();
        for (int v : k)
            h ^= std::hash<int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

inline Matrix reflection_matrix(const Vec& alpha)
{
    const std::size_t n = alpha.size();
    Matrix m = Matrix::identity(n);
    const Rational nn = dot(alpha, alpha);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) -= 2 * alpha[i] * alpha[j] / nn;
    return m;
}

class WeylElem
{
public:
    WeylElem(RootSystemPtr rs, Matrix m, std::optional<Word> word = std::nullopt)
        : rs_(std::move(rs)), m_(std::move(m)), word_(std::move(word))
    {}

    static WeylElem identity(const RootSystemPtr& rs)
    {
        return {rs, Matrix::identity(rs->ambient_dim()), Word{}};
    }

    /// The generator with the given presentation label.
    static WeylElem generator(const RootSystemPtr& rs, int label)
    {
        return {rs, reflection_matrix(rs->simple_roots()[rs->generator_position(label)]), Word{label}};
    }

    /// Reflection in an arbitrary root; carries no word.
    static WeylElem reflection(const RootSystemPtr& rs, const Vec& root)
    {
        if (!rs->find_root(root))
            throw UsageError("not a root of " + rs->name() + ": " + to_string(root));
        return {rs, reflection_matrix(root)};
    }

    const RootSystem& system() const noexcept { return *rs_; }
    const RootSystemPtr& system_ptr() const noexcept { return rs_; }
    const Matrix& matrix() const noexcept { return m_; }
    const std::optional<Word>& word() const noexcept { return word_; }

    Vec act(std::span<const Rational> x) const { return m_.apply(x); }

    WeylElem inverse() const
    {
        std::optional<Word> w;
        if (word_)
            w = Word(word_->rbegin(), word_->rend());
        return {rs_, m_.transpose(), std::move(w)};
    }

    friend WeylElem operator*(const WeylElem& a, const WeylElem& b)
    {
        std::optional<Word> w;
        if (a.word_ && b.word_)
        {
            w = *a.word_;
            w->insert(w->end(), b.word_->begin(), b.word_->end());
        }
        return {a.rs_, a.m_ * b.m_, std::move(w)};
    }

    friend bool operator==(const WeylElem& a, const WeylElem& b) { return a.m_ == b.m_; }

    /// Positive roots sent to negative roots.
    std::vector<Vec> inversion_set() const
    {
        const Vec u = m_.transpose().apply(rs_->height_functional());
        std::vector<Vec> out;
        for (const auto& a : rs_->positive_roots())
            if (dot(u, a) < 0)
                out.push_back(a);
        return out;
    }

    std::size_t length() const
    {
        const Vec u = m_.transpose().apply(rs_->height_functional());
        std::size_t n = 0;
        for (const auto& a : rs_->positive_roots())
            if (dot(u, a) < 0)
                ++n;
        return n;
    }

    WeylKey key() const
    {
        WeylKey k;
        k.reserve(rs_->bourbaki_simple_roots().size());
        for (const auto& a : rs_->bourbaki_simple_roots())
        {
            auto hit = rs_->find_root(m_.apply(a));
            if (!hit)
                throw InternalError("matrix does not preserve the root system");
            k.push_back(hit->second ? static_cast<int>(hit->first) + 1 : -static_cast<int>(hit->first) - 1);
        }
        return k;
    }

    /// The same matrix viewed in another presentation of the same ambient space.
    WeylElem rebased(const RootSystemPtr& rs) const
    {
        if (rs->ambient_dim() != rs_->ambient_dim())
            throw UsageError("cannot move an element between ambient spaces of different dimension");
        return {rs, m_};
    }

private:
    RootSystemPtr rs_;
    Matrix m_;
    std::optional<Word> word_;
};

inline WeylElem from_word(const RootSystemPtr& rs, const Word& word)
{
    Matrix m = Matrix::identity(rs->ambient_dim());
    for (int label : word)
        m = m * reflection_matrix(rs->simple_roots()[rs->generator_position(label)]);
    return {rs, std::move(m), word};
}

/// Expansion of s'_k in the presentation's labels (0 is t resp. t').
inline Word sprime_word(const RootSystem& rs, int k)
{
    if (rs.factors() != 1)
        throw UsageError("s' is defined on a simple factor only");
    if (rs.kind() == Kind::A)
    {
        if (k < 0 || k > rs.rank())
            throw UsageError("sp" + std::to_string(k) + " out of range for " + rs.name());
        return {};
    }
    if (rs.profile() != Profile::paper5 || (rs.kind() != Kind::B && rs.kind() != Kind::D))
        throw UsageError("sp<k> needs type A, or type B/D with profile paper5");
    const int l = rs.rank();
    Word w;
    if (rs.kind() == Kind::B)
    {
        if (k < 0 || k > l - 1)
            throw UsageError("sp" + std::to_string(k) + " out of range for " + rs.name());
        for (int i = k; i >= 1; --i)
            w.push_back(i);
        w.push_back(0);
        for (int i = 1; i <= k; ++i)
            w.push_back(i);
        return w;
    }
    if (k < 0 || k > l - 2)
        throw UsageError("sp" + std::to_string(k) + " out of range for " + rs.name());
    for (int i = k + 1; i >= 2; --i)
        w.push_back(i);
    w.push_back(0);
    w.push_back(1);
    for (int i = 2; i <= k + 1; ++i)
        w.push_back(i);
    return w;
}

namespace detail {

inline std::optional<int> parse_index(const std::string& s)
{
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        return std::nullopt;
    return std::stoi(s);
}

} // namespace detail

/// Parses whitespace-separated tokens over a simple factor:
///   s<k>   generator k (k >= 1)
///   t      s_{e1}, type B under paper5
///   tp     t' = s_{e1+e2}, type D under paper5
///   sp<k>  s'_k, expanded to its defining word
inline Word parse_word(const RootSystem& rs, const std::string& text)
{
    std::istringstream in(text);
    std::string tok;
    Word out;
    const bool p5 = rs.profile() == Profile::paper5;
    while (in >> tok)
    {
        if (tok == "t" || tok == "tp")
        {
            const Kind want = tok == "t" ? Kind::B : Kind::D;
            if (!p5 || rs.kind() != want)
                throw UsageError("letter '" + tok + "' needs type " + kind_name(want) + " with profile paper5");
            out.push_back(0);
        }
        else if (tok.rfind("sp", 0) == 0)
        {
            auto k = detail::parse_index(tok.substr(2));
            if (!k)
                throw UsageError("malformed letter '" + tok + "'");
            Word w = sprime_word(rs, *k);
            out.insert(out.end(), w.begin(), w.end());
        }
        else if (tok.size() > 1 && tok[0] == 's')
        {
            auto k = detail::parse_index(tok.substr(1));
            if (!k || *k < 1 || !rs.has_label(*k))
                throw UsageError("unknown letter '" + tok + "' for " + rs.name());
            out.push_back(*k);
        }
        else
            throw UsageError("unknown letter '" + tok + "'");
    }
    return out;
}

/// Parses a word over a t-fold product: one factor word per copy, separated by '|'.
inline Word parse_product_word(const RootSystemPtr& rs, const std::string& text)
{
    const RootSystem& base = rs->factors() == 1 ? *rs : *rs->base();
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text)
    {
        if (c == '|')
        {
            parts.push_back(cur);
            cur.clear();
        }
        else
            cur += c;
    }
    parts.push_back(cur);
    if (static_cast<int>(parts.size()) != rs->factors())
        throw UsageError("word has " + std::to_string(parts.size()) + " factors, expected " +
                         std::to_string(rs->factors()));
    Word out;
    for (std::size_t c = 0; c < parts.size(); ++c)
        for (int label : parse_word(base, parts[c]))
            out.push_back(static_cast<int>(c) * rs->label_stride() + label);
    return out;
}

inline std::string letter_name(const RootSystem& rs, int label)
{
    if (label == 0 && rs.profile() == Profile::paper5)
        return rs.kind() == Kind::D ? "tp" : "t";
    return "s" + std::to_string(label);
}

/// Inverse of parse_product_word: letters grouped by factor (factors commute).
inline std::string format_word(const RootSystem& rs, const Word& word)
{
    const int t = rs.factors();
    const int stride = rs.label_stride();
    std::vector<std::string> parts(static_cast<std::size_t>(t));
    for (int label : word)
    {
        const int c = t == 1 ? 0 : label / stride;
        const int local = t == 1 ? label : label % stride;
        auto& p = parts[static_cast<std::size_t>(c)];
        p += (p.empty() ? "" : " ") + letter_name(rs, local);
    }
    std::string out;
    for (int c = 0; c < t; ++c)
        out += (c ? "|" : "") + parts[static_cast<std::size_t>(c)];
    return out;
}

/// Reduced word over the Bourbaki simple reflections, labels from
/// bourbaki_labels(). Greedy left descent; `order` lists the labels in the
/// order they are tried (default: ascending).
inline Word reduced_word(const WeylElem& w, const std::vector<int>& order = {})
{
    const RootSystem& rs = w.system();
    const auto& labels = rs.bourbaki_labels();
    std::vector<std::size_t> idx;
    if (order.empty())
        for (std::size_t i = 0; i < labels.size(); ++i)
            idx.push_back(i);
    else
        for (int l : order)
        {
            auto it = std::find(labels.begin(), labels.end(), l);
            if (it == labels.end())
                throw UsageError("unknown node " + std::to_string(l));
            idx.push_back(static_cast<std::size_t>(it - labels.begin()));
        }
    std::vector<Matrix> refl;
    for (const auto& a : rs.bourbaki_simple_roots())
        refl.push_back(reflection_matrix(a));

    Word out;
    WeylElem cur(w.system_ptr(), w.matrix());
    std::size_t len = cur.length();
    while (len > 0)
    {
        bool moved = false;
        for (std::size_t i : idx)
        {
            WeylElem next(w.system_ptr(), refl[i] * cur.matrix());
            std::size_t nl = next.length();
            if (nl < len)
            {
                out.push_back(labels[i]);
                cur = std::move(next);
                len = nl;
                moved = true;
                break;
            }
        }
        if (!moved)
            throw InternalError("greedy descent stalled");
    }
    return out;
}

/// Bourbaki nodes occurring in a reduced word.
inline std::set<int> support(const WeylElem& w)
{
    Word r = reduced_word(w);
    return {r.begin(), r.end()};
}

/// Product of all generators in label order.
inline WeylElem coxeter_standard(const RootSystemPtr& rs) { return from_word(rs, rs->labels()); }

/// Every element with a shortest word over the presentation's generators.
inline std::vector<WeylElem> enumerate_group(const RootSystemPtr& rs, std::uint64_t cap = 100000)
{
    if (rs->group_order() > cap)
        throw CapacityError("group of " + rs->name() + " exceeds cap " + std::to_string(cap), rs->group_order());
    std::vector<WeylElem> gens;
    for (int label : rs->labels())
        gens.push_back(WeylElem::generator(rs, label));
    std::vector<WeylElem> out{WeylElem::identity(rs)};
    std::unordered_map<WeylKey, std::size_t, WeylKeyHash> seen{{out[0].key(), 0}};
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const auto& g : gens)
        {
            WeylElem next = out[head] * g;
            if (seen.emplace(next.key(), out.size()).second)
                out.push_back(std::move(next));
        }
    if (out.size() != rs->group_order())
        throw InternalError("enumerated " + std::to_string(out.size()) + " elements, expected " +
                            std::to_string(rs->group_order()));
    return out;
}

/// Coordinate reversal e_i -> e_{l+1-i}. For paper5 B/D it carries t resp. t'
/// to the Bourbaki s_l and s_i to s_{l-i}, so it is an isomorphism of Coxeter
/// systems onto the Bourbaki presentation.
inline Matrix reversal_matrix(std::size_t dim)
{
    Matrix r(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        r(dim - 1 - i, i) = 1;
    return r;
}

/// Image of an element of a simple paper5 B/D system under the reversal, as
/// an element of the Bourbaki system `target`. Other profiles pass through.
inline WeylElem to_bourbaki_frame(const WeylElem& w, const RootSystemPtr& target)
{
    const RootSystem& rs = w.system();
    if (target->profile() != Profile::bourbaki || target->kind() != rs.kind() || target->rank() != rs.rank() ||
        target->factors() != rs.factors())
        throw UsageError("target frame must be the Bourbaki system of the same type");
    if (rs.profile() != Profile::paper5 || rs.kind() == Kind::A)
        return {target, w.matrix(), w.word()};
    if (rs.factors() != 1)
        throw UsageError("frame change is defined on a simple factor");
    const Matrix r = reversal_matrix(rs.ambient_dim());
    std::optional<Word> word;
    if (w.word())
    {
        word = Word{};
        for (int l : *w.word())
            word->push_back(rs.rank() - l);
    }
    return {target, r * w.matrix() * r, std::move(word)};
}

/// For classical types: the image of e_j is sign * e_{|entry|}, 1-based.
inline std::optional<std::vector<int>> signed_permutation(const WeylElem& w)
{
    const Matrix& m = w.matrix();
    std::vector<int> out;
    for (std::size_t j = 0; j < m.cols(); ++j)
    {
        int hit = 0;
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            const Rational& v = m(i, j);
            if (v == 0)
                continue;
            if (hit != 0 || (v != 1 && v != -1))
                return std::nullopt;
            hit = v == 1 ? static_cast<int>(i) + 1 : -static_cast<int>(i) - 1;
        }
        if (hit == 0)
            return std::nullopt;
        out.push_back(hit);
    }
    return out;
}

/// Element of type A_{n-1} sending e_j to e_{perm[j]} (0-based permutation).
inline WeylElem from_permutation(const RootSystemPtr& rs, const std::vector<int>& perm)
{
    if (rs->kind() != Kind::A || rs->factors() != 1 || perm.size() != rs->ambient_dim())
        throw UsageError("permutation does not match " + rs->name());
    std::vector<bool> used(perm.size());
    Matrix m(perm.size(), perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j)
    {
        const int p = perm[j];
        if (p < 0 || p >= static_cast<int>(perm.size()) || used[static_cast<std::size_t>(p)])
            throw UsageError("not a permutation");
        used[static_cast<std::size_t>(p)] = true;
        m(static_cast<std::size_t>(p), j) = 1;
    }
    return {rs, std::move(m)};
}

/// 0-based permutation of a type-A element.
inline std::vector<int> to_permutation(const WeylElem& w)
{
    auto sp = signed_permutation(w);
    if (!sp || w.system().kind() != Kind::A)
        throw UsageError("not a type-A element");
    std::vector<int> out;
    for (int v : *sp)
        out.push_back(v - 1);
    return out;
}

} // namespace dlpd

#endif // DLPD_WEYL_HPP
