#ifndef DLPD_ROOTSYS_HPP
#define DLPD_ROOTSYS_HPP

// Root systems in exact rational coordinates.
//
// Two chamber presentations are supported. `bourbaki` uses the plate
// coordinates of the classical tables. `paper5` is the presentation used by
// the Geck-Pfeiffer machinery for types A, B and D: for B the generators are
// t = s_{e1}, s_i = s_{e_i - e_{i+1}}; for D they are t' = s_{e1+e2}, s_i.
// Either way the stored positive system is the Bourbaki one in the same
// ambient coordinates; lengths, inversion sets and parabolic dimensions are
// always taken against it.

#include "dlpd/errors.hpp"
#include "dlpd/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dlpd {

enum class Kind { A, B, C, D, E6, E7, E8, F4, G2 };
enum class Profile { bourbaki, paper5 };

inline std::string kind_name(Kind k)
{
    switch (k)
    {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::C: return "C";
    case Kind::D: return "D";
    case Kind::E6: return "E6";
    case Kind::E7: return "E7";
    case Kind::E8: return "E8";
    case Kind::F4: return "F4";
    case Kind::G2: return "G2";
    }
    return "?";
}

inline Kind parse_kind(const std::string& s)
{
    static const std::map<std::string, Kind> table{{"A", Kind::A},   {"B", Kind::B},   {"C", Kind::C},
                                                   {"D", Kind::D},   {"E6", Kind::E6}, {"E7", Kind::E7},
                                                   {"E8", Kind::E8}, {"F4", Kind::F4}, {"G2", Kind::G2}};
    auto it = table.find(s);
    if (it == table.end())
        throw UsageError("unknown root system type '" + s + "'");
    return it->second;
}

inline std::string profile_name(Profile p) { return p == Profile::bourbaki ? "bourbaki" : "paper5"; }

inline Profile parse_profile(const std::string& s)
{
    if (s == "bourbaki")
        return Profile::bourbaki;
    if (s == "paper5")
        return Profile::paper5;
    throw UsageError("unknown profile '" + s + "' (expected bourbaki|paper5)");
}

/// x -> sum coeffs_i x_i, tagged with the constraint that produced it.
struct LinearForm
{
    Vec coeffs;
    std::string label;

    Rational operator()(std::span<const Rational> x) const { return dot(coeffs, x); }
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Tests membership in the span of a fixed family by reduction against its
/// row echelon form.
class SpanTester
{
public:
    explicit SpanTester(const std::vector<Vec>& family, std::size_t dim) : dim_(dim)
    {
        if (!family.empty())
        {
            Matrix m = Matrix::from_rows(family);
            pivots_ = row_reduce(m);
            for (std::size_t r = 0; r < pivots_.size(); ++r)
                basis_.emplace_back(m.row(r).begin(), m.row(r).end());
        }
    }

    bool contains(const Vec& v) const
    {
        Vec w = v;
        for (std::size_t r = 0; r < basis_.size(); ++r)
        {
            const Rational c = w[pivots_[r]];
            if (c != 0)
                for (std::size_t j = 0; j < dim_; ++j)
                    w[j] -= c * basis_[r][j];
        }
        return is_zero(w);
    }

private:
    std::size_t dim_;
    std::vector<std::size_t> pivots_;
    std::vector<Vec> basis_;
};

class RootSystem
{
public:
    Kind kind() const noexcept { return kind_; }
    /// Lie rank of one factor.
    int rank() const noexcept { return rank_; }
    /// Number of factors: > 1 for the t-fold products used by restriction of scalars.
    int factors() const noexcept { return factors_; }
    std::size_t ambient_dim() const noexcept { return dim_; }
    Profile profile() const noexcept { return profile_; }

    /// The presentation's generating roots, ordered like `labels()`.
    const std::vector<Vec>& simple_roots() const noexcept { return simple_; }
    /// Generator labels: 1..rank for bourbaki and type A; 0..rank-1 for paper5 B/D
    /// (0 is t resp. t'). Products number copy c's label i as c*stride + i.
    const std::vector<int>& labels() const noexcept { return labels_; }
    const std::vector<Vec>& bourbaki_simple_roots() const noexcept { return bourbaki_simple_; }
    /// Node labels of the Bourbaki simple roots (1..rank, offset per copy in products).
    const std::vector<int>& bourbaki_labels() const noexcept { return bourbaki_labels_; }
    const std::vector<Vec>& positive_roots() const noexcept { return positive_; }
    std::size_t root_count() const noexcept { return 2 * positive_.size(); }

    /// True for type A under paper5: the chamber lives on the hyperplane sum x_i = 0.
    /// Not imposed as a constraint; witnesses are re-centred instead.
    bool trace_zero_convention() const noexcept { return kind_ == Kind::A && profile_ == Profile::paper5; }

    std::string name() const
    {
        std::string base = kind_name(kind_);
        if (base.size() == 1)
            base += std::to_string(rank_);
        if (factors_ > 1)
            base += "^" + std::to_string(factors_);
        return base + (profile_ == Profile::paper5 ? "[paper5]" : "");
    }

    /// Position of `label` in `labels()`.
    std::size_t generator_position(int label) const
    {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label)
                return i;
        throw UsageError("generator label " + std::to_string(label) + " does not exist in " + name());
    }

    bool has_label(int label) const
    {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    /// Index into positive_roots() of +-root, or nothing if v is not a root.
    /// The sign tells whether v itself is positive.
    std::optional<std::pair<std::size_t, bool>> find_root(const Vec& v) const
    {
        auto it = index_.find(v);
        if (it == index_.end())
            return std::nullopt;
        return std::make_pair(static_cast<std::size_t>(std::abs(it->second) - 1), it->second > 0);
    }

    /// Coefficients of a vector in the span of the Bourbaki simple roots.
    Vec simple_coefficients(const Vec& v) const
    {
        Vec rhs(bourbaki_simple_.size());
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = dot(bourbaki_simple_[i], v);
        return gram_inverse_.apply(rhs);
    }

    /// A vector h in the root span with (h, alpha) = height(alpha).
    const Vec& height_functional() const noexcept { return height_; }

    /// |W| for the stored type; products multiply.
    std::uint64_t group_order() const noexcept { return order_; }

    /// Builds a system. rank must suit the kind (A >= 1, B/C >= 2, D >= 4,
    /// E 6..8 matching the label, F4, G2); paper5 exists for A, B and D only.
    static std::shared_ptr<const RootSystem> build(Kind kind, int rank, Profile profile)
    {
        validate(kind, rank, profile);
        auto rs = std::shared_ptr<RootSystem>(new RootSystem());
        rs->kind_ = kind;
        rs->rank_ = rank;
        rs->profile_ = profile;
        rs->bourbaki_simple_ = bourbaki_basis(kind, rank, rs->dim_);
        for (int i = 1; i <= rank; ++i)
            rs->bourbaki_labels_.push_back(i);
        if (profile == Profile::bourbaki || kind == Kind::A)
        {
            rs->simple_ = rs->bourbaki_simple_;
            for (int i = 1; i <= rank; ++i)
                rs->labels_.push_back(i);
        }
        else
        {
            // B: {e1, e1-e2, ..., e_{l-1}-e_l}; D: {e1+e2, e1-e2, ..., e_{l-1}-e_l}.
            const std::size_t l = static_cast<std::size_t>(rank);
            Vec first(l);
            first[0] = 1;
            if (kind == Kind::D)
                first[1] = 1;
            rs->simple_.push_back(first);
            rs->labels_.push_back(0);
            for (std::size_t i = 0; i + 1 < l; ++i)
            {
                Vec a(l);
                a[i] = 1;
                a[i + 1] = -1;
                rs->simple_.push_back(a);
                rs->labels_.push_back(static_cast<int>(i + 1));
            }
        }
        rs->order_ = predicted_order(kind, rank);
        rs->finish();
        return rs;
    }

    /// The t-fold orthogonal direct sum of `base`, acting on (R^d)^t.
    static std::shared_ptr<const RootSystem> power(const std::shared_ptr<const RootSystem>& base, int t)
    {
        if (t < 1)
            throw UsageError("restriction-of-scalars degree must be >= 1");
        if (base->factors_ != 1)
            throw UsageError("power() expects a simple factor");
        if (t == 1)
            return base;
        auto rs = std::shared_ptr<RootSystem>(new RootSystem());
        rs->kind_ = base->kind_;
        rs->rank_ = base->rank_;
        rs->profile_ = base->profile_;
        rs->factors_ = t;
        rs->dim_ = base->dim_ * static_cast<std::size_t>(t);
        const int stride = base->label_stride();
        rs->stride_ = stride;
        auto embed = [&](const Vec& v, int copy) {
            Vec out(rs->dim_);
            for (std::size_t j = 0; j < base->dim_; ++j)
                out[static_cast<std::size_t>(copy) * base->dim_ + j] = v[j];
            return out;
        };
        for (int c = 0; c < t; ++c)
        {
            for (std::size_t i = 0; i < base->simple_.size(); ++i)
            {
                rs->simple_.push_back(embed(base->simple_[i], c));
                rs->labels_.push_back(c * stride + base->labels_[i]);
            }
            for (std::size_t i = 0; i < base->bourbaki_simple_.size(); ++i)
            {
                rs->bourbaki_simple_.push_back(embed(base->bourbaki_simple_[i], c));
                rs->bourbaki_labels_.push_back(c * stride + base->bourbaki_labels_[i]);
            }
        }
        rs->order_ = 1;
        for (int c = 0; c < t; ++c)
            rs->order_ *= base->order_;
        rs->base_ = base;
        rs->finish();
        return rs;
    }

    /// The simple factor of a product; null when factors() == 1.
    const std::shared_ptr<const RootSystem>& base() const noexcept { return base_; }
    /// Offset between copies in product labels.
    int label_stride() const noexcept { return stride_ != 0 ? stride_ : rank_ + 1; }

    static std::uint64_t predicted_order(Kind kind, int rank)
    {
        auto fact = [](int n) {
            std::uint64_t f = 1;
            for (int i = 2; i <= n; ++i)
                f *= static_cast<std::uint64_t>(i);
            return f;
        };
        switch (kind)
        {
        case Kind::A: return fact(rank + 1);
        case Kind::B:
        case Kind::C: return (std::uint64_t{1} << rank) * fact(rank);
        case Kind::D: return (std::uint64_t{1} << (rank - 1)) * fact(rank);
        case Kind::E6: return 51840;
        case Kind::E7: return 2903040;
        case Kind::E8: return 696729600;
        case Kind::F4: return 1152;
        case Kind::G2: return 12;
        }
        return 0;
    }

    /// Throws UsageError unless (kind, rank, profile) names a system.
    static void validate(Kind kind, int rank, Profile profile)
    {
        bool ok = false;
        switch (kind)
        {
        case Kind::A: ok = rank >= 1; break;
        case Kind::B:
        case Kind::C: ok = rank >= 2; break;
        case Kind::D: ok = rank >= 4; break;
        case Kind::E6: ok = rank == 6; break;
        case Kind::E7: ok = rank == 7; break;
        case Kind::E8: ok = rank == 8; break;
        case Kind::F4: ok = rank == 4; break;
        case Kind::G2: ok = rank == 2; break;
        }
        if (!ok)
            throw UsageError("invalid rank " + std::to_string(rank) + " for type " + kind_name(kind));
        if (profile == Profile::paper5 && kind != Kind::A && kind != Kind::B && kind != Kind::D)
            throw UsageError("profile paper5 exists only for types A, B, D");
    }

private:
    RootSystem() = default;

    static Vec unit(std::size_t dim, std::size_t i, long c = 1)
    {
        Vec v(dim);
        v[i] = c;
        return v;
    }

    static std::vector<Vec> bourbaki_basis(Kind kind, int rank, std::size_t& dim)
    {
        const auto l = static_cast<std::size_t>(rank);
        std::vector<Vec> simple;
        auto diff = [&](std::size_t i, std::size_t j) {
            Vec v(dim);
            v[i] = 1;
            v[j] = -1;
            return v;
        };
        switch (kind)
        {
        case Kind::A:
            dim = l + 1;
            for (std::size_t i = 0; i < l; ++i)
                simple.push_back(diff(i, i + 1));
            break;
        case Kind::B:
        case Kind::C:
        case Kind::D:
            dim = l;
            for (std::size_t i = 0; i + 1 < l; ++i)
                simple.push_back(diff(i, i + 1));
            if (kind == Kind::B)
                simple.push_back(unit(dim, l - 1));
            else if (kind == Kind::C)
                simple.push_back(unit(dim, l - 1, 2));
            else
            {
                Vec v(dim);
                v[l - 2] = 1;
                v[l - 1] = 1;
                simple.push_back(v);
            }
            break;
        case Kind::E6:
        case Kind::E7:
        case Kind::E8: {
            dim = 8;
            Vec a1(8, frac(-1, 2));
            a1[0] = frac(1, 2);
            a1[7] = frac(1, 2);
            simple.push_back(a1);
            Vec a2(8);
            a2[0] = 1;
            a2[1] = 1;
            simple.push_back(a2);
            for (std::size_t i = 0; i + 3 <= l; ++i)
                simple.push_back(diff(i + 1, i));
            break;
        }
        case Kind::F4: {
            dim = 4;
            simple.push_back(diff(1, 2));
            simple.push_back(diff(2, 3));
            simple.push_back(unit(4, 3));
            simple.push_back(Vec{frac(1, 2), frac(-1, 2), frac(-1, 2), frac(-1, 2)});
            break;
        }
        case Kind::G2:
            dim = 3;
            simple.push_back(diff(0, 1));
            simple.push_back(Vec{-2, 1, 1});
            break;
        }
        return simple;
    }

    static Vec reflect(const Vec& alpha, const Vec& x)
    {
        return axpy(-2 * dot(alpha, x) / dot(alpha, alpha), alpha, x);
    }

    void finish()
    {
        const std::size_t n = bourbaki_simple_.size();
        Matrix gram(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                gram(i, j) = dot(bourbaki_simple_[i], bourbaki_simple_[j]);
        gram_inverse_ = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
        {
            Vec e(n);
            e[j] = 1;
            auto col = solve(gram, e);
            if (!col)
                throw InternalError("simple roots are linearly dependent");
            for (std::size_t i = 0; i < n; ++i)
                gram_inverse_(i, j) = (*col)[i];
        }
        Vec ones(n, Rational(1));
        Vec c = gram_inverse_.apply(ones);
        height_ = Vec(dim_);
        for (std::size_t i = 0; i < n; ++i)
            height_ = axpy(c[i], bourbaki_simple_[i], height_);

        // Closure of the simple roots under the simple reflections.
        std::map<Vec, int> seen;
        std::vector<Vec> queue = bourbaki_simple_;
        std::set<Vec> all(queue.begin(), queue.end());
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (const auto& a : bourbaki_simple_)
            {
                Vec r = reflect(a, queue[head]);
                if (all.insert(r).second)
                    queue.push_back(r);
            }
        for (const auto& r : queue)
        {
            if (dot(height_, r) > 0)
                positive_.push_back(r);
        }
        std::sort(positive_.begin(), positive_.end(), [&](const Vec& x, const Vec& y) {
            Rational hx = dot(height_, x), hy = dot(height_, y);
            return hx != hy ? hx < hy : x > y;
        });
        for (std::size_t i = 0; i < positive_.size(); ++i)
        {
            index_[positive_[i]] = static_cast<int>(i) + 1;
            index_[scaled(-1, positive_[i])] = -(static_cast<int>(i) + 1);
        }
    }

    Kind kind_ = Kind::A;
    int rank_ = 0;
    int factors_ = 1;
    int stride_ = 0;
    std::size_t dim_ = 0;
    Profile profile_ = Profile::bourbaki;
    std::vector<Vec> simple_;
    std::vector<int> labels_;
    std::vector<Vec> bourbaki_simple_;
    std::vector<int> bourbaki_labels_;
    std::vector<Vec> positive_;
    std::map<Vec, int> index_;
    Matrix gram_inverse_;
    Vec height_;
    std::uint64_t order_ = 0;
    std::shared_ptr<const RootSystem> base_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

inline RootSystemPtr build_root_system(Kind kind, int rank, Profile profile = Profile::bourbaki)
{
    return RootSystem::build(kind, rank, profile);
}

/// One strict form (x, alpha) > 0 per generating root of the presentation.
inline std::vector<LinearForm> chamber_forms(const RootSystem& rs)
{
    std::vector<LinearForm> forms;
    for (std::size_t i = 0; i < rs.simple_roots().size(); ++i)
        forms.push_back({rs.simple_roots()[i], "alpha_" + std::to_string(rs.labels()[i])});
    return forms;
}

/// Number of positive roots of the Levi subsystem spanned by every Bourbaki
/// simple root whose node (1-based) is not in `removed`.
inline std::size_t levi_positive_count(const RootSystem& rs, const std::set<int>& removed)
{
    std::vector<Vec> retained;
    for (std::size_t i = 0; i < rs.bourbaki_simple_roots().size(); ++i)
        if (!removed.count(static_cast<int>(i) + 1))
            retained.push_back(rs.bourbaki_simple_roots()[i]);
    SpanTester levi(retained, rs.ambient_dim());
    return static_cast<std::size_t>(std::count_if(rs.positive_roots().begin(), rs.positive_roots().end(),
                                                  [&](const Vec& a) { return levi.contains(a); }));
}

/// dim G/P = |Phi+| - |Phi+_M| for the parabolic whose Levi drops `removed_nodes`.
inline std::size_t parabolic_dim(const RootSystem& rs, const std::set<int>& removed_nodes)
{
    for (int node : removed_nodes)
        if (node < 1 || node > static_cast<int>(rs.bourbaki_simple_roots().size()))
            throw UsageError("node " + std::to_string(node) + " out of range for " + rs.name());
    if (removed_nodes.empty())
        return 0;
    return rs.positive_roots().size() - levi_positive_count(rs, removed_nodes);
}

struct ParabolicRow
{
    int node;
    std::size_t levi_positive;
    std::size_t difference;
    bool equality_with_rank;
};

/// One row per maximal parabolic (a single node removed).
inline std::vector<ParabolicRow> rank_vs_dim_table(const RootSystem& rs)
{
    if (rs.profile() != Profile::bourbaki)
        throw UsageError("parabolic tables use the bourbaki profile");
    std::vector<ParabolicRow> rows;
    for (int node = 1; node <= rs.rank(); ++node)
    {
        std::size_t levi = levi_positive_count(rs, {node});
        std::size_t diff = rs.positive_roots().size() - levi;
        rows.push_back({node, levi, diff, diff == static_cast<std::size_t>(rs.rank())});
    }
    return rows;
}

} // namespace dlpd

#endif // DLPD_ROOTSYS_HPP
