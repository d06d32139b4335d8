#include "dlpd/weyl.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace dlpd;

namespace {

Vec v(std::initializer_list<long> xs)
{
    Vec out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

// Inversions of a signed permutation counted directly on the coordinates:
// positive roots of B_l are e_i - e_j, e_i + e_j (i < j) and e_i.
std::size_t signed_inversions(const std::vector<int>& img, bool with_short)
{
    const std::size_t n = img.size();
    auto val = [&](std::size_t i) { return img[i]; };
    auto sgn = [](int x) { return x > 0 ? 1 : -1; };
    // w(e_i) = sign_i e_{p_i}; a root sum c_i e_i is negative iff its first
    // nonzero coordinate (in the Bourbaki order) is negative.
    auto negative = [&](std::vector<std::pair<int, int>> terms) {
        std::sort(terms.begin(), terms.end(), [](auto a, auto b) { return std::abs(a.first) < std::abs(b.first); });
        return terms.front().second < 0;
    };
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (with_short && sgn(val(i)) < 0)
            ++count;
        for (std::size_t j = i + 1; j < n; ++j)
        {
            int pi = std::abs(val(i)), pj = std::abs(val(j));
            if (negative({{pi, sgn(val(i))}, {pj, -sgn(val(j))}}))
                ++count;
            if (negative({{pi, sgn(val(i))}, {pj, sgn(val(j))}}))
                ++count;
        }
    }
    return count;
}

} // namespace

TEST(Weyl, FromWord)
{
    auto a2 = build_root_system(Kind::A, 2);
    EXPECT_EQ(from_word(a2, {}).matrix(), Matrix::identity(3));

    auto b2 = build_root_system(Kind::B, 2, Profile::paper5);
    auto t = from_word(b2, parse_word(*b2, "t"));
    EXPECT_EQ(t.act(v({1, 0})), v({-1, 0}));
    EXPECT_EQ(t.act(v({0, 1})), v({0, 1}));

    auto d4 = build_root_system(Kind::D, 4, Profile::paper5);
    auto tp = from_word(d4, parse_word(*d4, "tp"));
    EXPECT_EQ(tp.act(v({1, 0, 0, 0})), v({0, -1, 0, 0}));
    EXPECT_EQ(tp.act(v({0, 1, 0, 0})), v({-1, 0, 0, 0}));
    EXPECT_EQ(tp.act(v({0, 0, 1, 0})), v({0, 0, 1, 0}));
}

TEST(Weyl, ParseErrors)
{
    auto b3 = build_root_system(Kind::B, 3);
    EXPECT_THROW(parse_word(*b3, "s4"), UsageError);
    EXPECT_THROW(parse_word(*b3, "t"), UsageError);
    EXPECT_THROW(parse_word(*b3, "x1"), UsageError);
    EXPECT_THROW(parse_word(*b3, "s"), UsageError);
    auto p5 = build_root_system(Kind::B, 3, Profile::paper5);
    EXPECT_THROW(parse_word(*p5, "s0"), UsageError);
    EXPECT_THROW(parse_word(*p5, "s3"), UsageError);
    EXPECT_THROW(parse_word(*p5, "sp3"), UsageError);
    EXPECT_THROW(parse_word(*p5, "tp"), UsageError);
    EXPECT_EQ(parse_word(*p5, "  s1\tt  s2 "), (Word{1, 0, 2}));
}

TEST(Weyl, SPrimeExpansions)
{
    auto b4 = build_root_system(Kind::B, 4, Profile::paper5);
    EXPECT_EQ(parse_word(*b4, "sp0"), (Word{0}));
    EXPECT_EQ(parse_word(*b4, "sp2"), (Word{2, 1, 0, 1, 2}));
    for (int i = 0; i <= 3; ++i)
    {
        auto w = from_word(b4, sprime_word(*b4, i));
        for (std::size_t j = 0; j < 4; ++j)
        {
            Vec ej(4);
            ej[j] = 1;
            EXPECT_EQ(w.act(ej), j == static_cast<std::size_t>(i) ? scaled(-1, ej) : ej) << "sp" << i;
        }
    }
    auto d5 = build_root_system(Kind::D, 5, Profile::paper5);
    EXPECT_EQ(parse_word(*d5, "sp0"), (Word{0, 1}));
    EXPECT_EQ(parse_word(*d5, "sp2"), (Word{3, 2, 0, 1, 2, 3}));
    for (int i = 0; i <= 3; ++i)
    {
        auto w = from_word(d5, sprime_word(*d5, i));
        for (std::size_t j = 0; j < 5; ++j)
        {
            Vec ej(5);
            ej[j] = 1;
            bool flipped = j == 0 || j == static_cast<std::size_t>(i) + 1;
            EXPECT_EQ(w.act(ej), flipped ? scaled(-1, ej) : ej) << "sp" << i;
        }
    }
    auto a3 = build_root_system(Kind::A, 3, Profile::paper5);
    EXPECT_TRUE(parse_word(*a3, "sp0 sp3").empty());
}

TEST(Weyl, Length)
{
    auto a2 = build_root_system(Kind::A, 2);
    EXPECT_EQ(WeylElem::identity(a2).length(), 0u);
    EXPECT_EQ(from_word(a2, {1, 2}).length(), 2u);
    auto b2 = build_root_system(Kind::B, 2, Profile::paper5);
    EXPECT_EQ(from_word(b2, parse_word(*b2, "t s1 t s1")).length(), 4u);
}

TEST(Weyl, Act)
{
    auto a2 = build_root_system(Kind::A, 2);
    EXPECT_EQ(from_word(a2, {1}).act(v({1, 2, 3})), v({2, 1, 3}));
    EXPECT_EQ(WeylElem::identity(a2).act(v({5, -1, 0})), v({5, -1, 0}));
    EXPECT_THROW(from_word(a2, {1}).act(v({1, 2})), UsageError);
    // t s1: s1 first, then t.
    auto b2 = build_root_system(Kind::B, 2, Profile::paper5);
    EXPECT_EQ(from_word(b2, parse_word(*b2, "t s1")).act(v({4, 1})), v({-1, 4}));
}

TEST(Weyl, Support)
{
    auto a2 = build_root_system(Kind::A, 2);
    auto a3 = build_root_system(Kind::A, 3);
    EXPECT_TRUE(support(WeylElem::identity(a3)).empty());
    EXPECT_EQ(support(from_word(a3, {1, 2, 3})), (std::set<int>{1, 2, 3}));
    EXPECT_EQ(support(from_word(a2, {1, 2, 1})), (std::set<int>{1, 2}));
    EXPECT_EQ(support(from_word(a3, {1, 1, 3})), (std::set<int>{3}));
    EXPECT_EQ(reduced_word(from_word(a2, {2, 1, 2})), (Word{1, 2, 1}));
}

TEST(Weyl, SupportIndependentOfDescentOrder)
{
    for (auto [k, l] : std::vector<std::pair<Kind, int>>{{Kind::A, 3}, {Kind::B, 3}, {Kind::C, 3}, {Kind::G2, 2}})
    {
        auto rs = build_root_system(k, l);
        std::vector<int> order(static_cast<std::size_t>(l));
        std::iota(order.begin(), order.end(), 1);
        for (const auto& w : enumerate_group(rs))
        {
            auto ref = support(w);
            std::vector<int> o = order;
            do
            {
                Word r = reduced_word(w, o);
                EXPECT_EQ(r.size(), w.length());
                EXPECT_EQ(std::set<int>(r.begin(), r.end()), ref);
            } while (std::next_permutation(o.begin(), o.end()));
        }
    }
}

TEST(Weyl, Coxeter)
{
    for (auto [k, l] : std::vector<std::pair<Kind, int>>{
             {Kind::A, 2}, {Kind::B, 2}, {Kind::G2, 2}, {Kind::D, 5}, {Kind::F4, 4}, {Kind::E6, 6}})
    {
        auto rs = build_root_system(k, l);
        auto c = coxeter_standard(rs);
        EXPECT_EQ(c.length(), static_cast<std::size_t>(l)) << rs->name();
        EXPECT_EQ(support(c).size(), static_cast<std::size_t>(l));
    }
    auto a2 = build_root_system(Kind::A, 2);
    EXPECT_EQ(coxeter_standard(a2), from_word(a2, {1, 2}));
}

TEST(Weyl, Enumerate)
{
    EXPECT_EQ(enumerate_group(build_root_system(Kind::A, 2)).size(), 6u);
    EXPECT_EQ(enumerate_group(build_root_system(Kind::B, 2)).size(), 8u);
    EXPECT_EQ(enumerate_group(build_root_system(Kind::G2, 2)).size(), 12u);
    EXPECT_EQ(enumerate_group(build_root_system(Kind::B, 3, Profile::paper5)).size(), 48u);
    try
    {
        enumerate_group(build_root_system(Kind::E8, 8), 1000);
        FAIL();
    }
    catch (const CapacityError& e)
    {
        EXPECT_EQ(e.predicted(), 696729600u);
    }
}

TEST(Weyl, GroupProperties)
{
    for (auto [k, l] : std::vector<std::pair<Kind, int>>{
             {Kind::A, 3}, {Kind::B, 3}, {Kind::C, 3}, {Kind::D, 4}, {Kind::G2, 2}, {Kind::F4, 4}})
    {
        auto rs = build_root_system(k, l);
        auto group = enumerate_group(rs);
        std::size_t maxlen = 0;
        for (const auto& w : group)
        {
            const std::size_t len = w.length();
            maxlen = std::max(maxlen, len);
            ASSERT_TRUE(w.word());
            EXPECT_EQ(w.word()->size(), len);
            EXPECT_EQ(from_word(rs, *w.word()), w);
            EXPECT_EQ(w.inverse().length(), len);
            EXPECT_EQ(w.matrix().transpose() * w.matrix(), Matrix::identity(rs->ambient_dim()));
            for (int s : rs->labels())
            {
                auto sw = WeylElem::generator(rs, s) * w;
                const std::size_t sl = sw.length();
                EXPECT_TRUE(sl == len + 1 || sl + 1 == len);
            }
            if (k != Kind::G2 && k != Kind::F4)
            {
                auto sp = signed_permutation(w);
                ASSERT_TRUE(sp);
                int neg = static_cast<int>(std::count_if(sp->begin(), sp->end(), [](int x) { return x < 0; }));
                if (k == Kind::B)
                {
                    EXPECT_EQ(len, signed_inversions(*sp, true));
                }
                else if (k == Kind::D)
                {
                    EXPECT_EQ(neg % 2, 0);
                    EXPECT_EQ(len, signed_inversions(*sp, false));
                }
            }
        }
        EXPECT_EQ(maxlen, rs->positive_roots().size());
    }
}

TEST(Weyl, Permutations)
{
    auto a2 = build_root_system(Kind::A, 2);
    auto c = from_word(a2, {1, 2});
    EXPECT_EQ(to_permutation(c), (std::vector<int>{1, 2, 0}));
    EXPECT_EQ(from_permutation(a2, {1, 2, 0}), c);
    EXPECT_THROW(from_permutation(a2, {0, 0, 1}), UsageError);
}

TEST(Weyl, ProductWords)
{
    auto p = RootSystem::power(build_root_system(Kind::A, 2), 2);
    Word w = parse_product_word(p, "s1 s2|s2");
    EXPECT_EQ(w, (Word{1, 2, 5}));
    EXPECT_EQ(format_word(*p, w), "s1 s2|s2");
    EXPECT_EQ(from_word(p, w).length(), 3u);
    EXPECT_THROW(parse_product_word(p, "s1"), UsageError);
    auto b2 = build_root_system(Kind::B, 2, Profile::paper5);
    EXPECT_EQ(format_word(*b2, parse_word(*b2, "t s1")), "t s1");
}

TEST(Weyl, BourbakiFrame)
{
    for (auto [k, l] : std::vector<std::pair<Kind, int>>{{Kind::B, 3}, {Kind::D, 4}, {Kind::D, 5}})
    {
        auto p5 = build_root_system(k, l, Profile::paper5);
        auto bb = build_root_system(k, l);
        for (int label : p5->labels())
        {
            auto img = to_bourbaki_frame(WeylElem::generator(p5, label), bb);
            EXPECT_EQ(img, WeylElem::generator(bb, l - label));
            EXPECT_EQ(*img.word(), (Word{l - label}));
        }
        auto c = to_bourbaki_frame(coxeter_standard(p5), bb);
        EXPECT_EQ(c, from_word(bb, *c.word()));
        EXPECT_EQ(c.length(), static_cast<std::size_t>(l));
    }
    auto a2 = build_root_system(Kind::A, 2, Profile::paper5);
    auto w = from_word(a2, {1, 2});
    EXPECT_EQ(to_bourbaki_frame(w, build_root_system(Kind::A, 2)).matrix(), w.matrix());
}
