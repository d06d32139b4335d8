#include "dlpd/dlcrit.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dlpd;
using oracle::direct_criterion;

namespace {

WeylElem word(const RootSystemPtr& rs, const std::string& text) { return from_word(rs, parse_word(*rs, text)); }

std::vector<RootSystemPtr> small_systems()
{
    return {build_root_system(Kind::A, 1), build_root_system(Kind::A, 2), build_root_system(Kind::A, 3),
            build_root_system(Kind::B, 2), build_root_system(Kind::B, 3), build_root_system(Kind::C, 3),
            build_root_system(Kind::G2, 2)};
}

} // namespace

TEST(Criterion, Identity)
{
    for (const auto& rs : small_systems())
    {
        auto id = WeylElem::identity(rs);
        auto sys = build_criterion_system(id, 2, CriterionMode::full_D);
        EXPECT_EQ(sys.forms.size(), rs->bourbaki_simple_roots().size());
        for (std::size_t i = 0; i < sys.forms.size(); ++i)
            EXPECT_EQ(sys.forms[i].coeffs, rs->bourbaki_simple_roots()[i]);
        EXPECT_TRUE(check_dl_criterion(id, 2, CriterionMode::chamber_C).result.feasible);
    }
}

TEST(Criterion, RankOne)
{
    auto a1 = build_root_system(Kind::A, 1);
    auto s = WeylElem::generator(a1, 1);
    auto sys = build_criterion_system(s, 2, CriterionMode::full_D);
    ASSERT_EQ(sys.forms.size(), 2u);
    EXPECT_EQ(sys.forms[1].coeffs, scaled(3, sys.forms[0].coeffs));
    auto r = check_dl_criterion(s, 2, CriterionMode::full_D);
    ASSERT_TRUE(r.result.feasible);
    EXPECT_EQ(*r.result.witness, (Vec{1, -1}));
}

TEST(Criterion, BadInput)
{
    auto a1 = build_root_system(Kind::A, 1);
    EXPECT_THROW(build_criterion_system(WeylElem::identity(a1), 1, CriterionMode::full_D), UsageError);
    EXPECT_THROW(parse_mode("both"), UsageError);
    EXPECT_EQ(parse_mode("chamber_C"), CriterionMode::chamber_C);
}

TEST(Criterion, G2Boundary)
{
    auto g2 = build_root_system(Kind::G2, 2);
    const auto group = enumerate_group(g2);
    ASSERT_EQ(group.size(), 12u);
    const auto bad1 = word(g2, "s1 s2 s1"), bad2 = word(g2, "s2 s1 s2");
    for (const auto& w : group)
    {
        auto r = check_dl_criterion(w, 2, CriterionMode::full_D);
        EXPECT_EQ(r.result.feasible, !(w == bad1 || w == bad2)) << format_word(*g2, *w.word());
        if (!r.result.feasible)
        {
            EXPECT_TRUE(r.forms_used.certified_by(*r.result.certificate));
        }
        for (long q : {3, 4, 5})
        {
            auto rq = check_dl_criterion(w, q, CriterionMode::full_D);
            ASSERT_TRUE(rq.result.feasible);
            EXPECT_TRUE(direct_criterion(w, q, *rq.result.witness, CriterionMode::full_D));
        }
    }
}

TEST(Criterion, B2Coxeter)
{
    auto b2 = build_root_system(Kind::B, 2);
    auto w = word(b2, "s2 s1");
    auto r = check_dl_criterion(w, 2, CriterionMode::chamber_C);
    ASSERT_TRUE(r.result.feasible);
    EXPECT_TRUE(direct_criterion(w, 2, *r.result.witness, CriterionMode::chamber_C));
    EXPECT_TRUE(direct_criterion(w, 2, Vec{4, 1}, CriterionMode::chamber_C));

    // t s1 maps e1 -> e2 -> -e1: needs x1 > x2 and 2 x2 > x1.
    auto ts = criterion_frame(word(build_root_system(Kind::B, 2, Profile::paper5), "t s1"));
    EXPECT_TRUE(direct_criterion(ts, 2, Vec{3, 2}, CriterionMode::chamber_C));
    EXPECT_FALSE(direct_criterion(ts, 2, Vec{4, 1}, CriterionMode::chamber_C));
    EXPECT_TRUE(check_dl_criterion(ts, 2, CriterionMode::chamber_C).result.feasible);
}

TEST(Criterion, AgreesWithDirectEvaluation)
{
    for (const auto& rs : small_systems())
        for (const auto& w : enumerate_group(rs))
            for (auto mode : {CriterionMode::full_D, CriterionMode::chamber_C})
            {
                auto r = check_dl_criterion(w, 2, mode);
                if (r.result.feasible)
                {
                    EXPECT_TRUE(direct_criterion(w, 2, *r.result.witness, mode));
                }
            }
}

TEST(Criterion, ModeMonotone)
{
    for (const auto& rs : small_systems())
        for (const auto& w : enumerate_group(rs))
            for (long q : {2, 3})
            {
                auto c = check_dl_criterion(w, q, CriterionMode::chamber_C);
                auto d = check_dl_criterion(w, q, CriterionMode::full_D);
                if (c.result.feasible)
                {
                    EXPECT_TRUE(d.result.feasible);
                    EXPECT_TRUE(d.forms_used.satisfied_by(*c.result.witness));
                }
            }
}

TEST(Criterion, QMonotoneInChamberMode)
{
    for (const auto& rs : small_systems())
        for (const auto& w : enumerate_group(rs))
        {
            auto r = check_dl_criterion(w, 2, CriterionMode::chamber_C);
            if (!r.result.feasible)
                continue;
            for (long q : {3, 4, 5})
                EXPECT_TRUE(build_criterion_system(w, q, CriterionMode::chamber_C).satisfied_by(*r.result.witness));
        }
}

TEST(Criterion, Paper5InputsUseBourbakiPositivity)
{
    auto b3 = build_root_system(Kind::B, 3, Profile::paper5);
    auto w = word(b3, "t s1 s2");
    auto r = check_dl_criterion(w, 2, CriterionMode::full_D);
    EXPECT_EQ(r.w.system().profile(), Profile::bourbaki);
    EXPECT_EQ(r.w.matrix(), w.matrix());
}

TEST(Recipe, Examples)
{
    auto b = gp_witness(parse_datum(Kind::B, 2, "lambda=2 eps=-"), 2);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_GT(b[1], 0);
    EXPECT_GT(b[0], b[1]);

    auto a = gp_witness(parse_datum(Kind::A, 3, "lambda=3"), 2);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_GT(a[0], a[1]);
    EXPECT_GT(a[1], a[2]);
    EXPECT_EQ(a[0] + a[1] + a[2], 0);

    auto d4 = parse_datum(Kind::D, 4, "lambda=3 eps=+ delta=1");
    auto x = gp_witness(d4, 2);
    auto bb = build_root_system(Kind::D, 4);
    EXPECT_TRUE(direct_criterion(WeylElem(bb, gp_element(d4).matrix()), 2, x, CriterionMode::chamber_C));
}

TEST(Recipe, Deterministic)
{
    auto d = parse_datum(Kind::B, 4, "lambda=2,2 eps=-,+");
    EXPECT_EQ(gp_witness(d, 2), gp_witness(d, 2));
    EXPECT_THROW(gp_witness(d, 1), UsageError);
}

TEST(Recipe, DyadicInside)
{
    EXPECT_EQ(detail::dyadic_inside(0, 1), frac(1, 2));
    EXPECT_EQ(detail::dyadic_inside(frac(1, 3), frac(1, 2)), frac(3, 8));
    auto c = detail::dyadic_inside(frac(-7, 5), frac(-4, 3));
    EXPECT_GT(c, frac(-7, 5));
    EXPECT_LT(c, frac(-4, 3));
    EXPECT_THROW(detail::dyadic_inside(1, 1), InternalError);
}

TEST(Recipe, AgreesWithEngineUpToRankSix)
{
    struct Span
    {
        Kind kind;
        int lo, hi;
    };
    for (auto [kind, lo, hi] : {Span{Kind::A, 2, 7}, Span{Kind::B, 2, 6}, Span{Kind::D, 4, 6}})
        for (int ell = lo; ell <= hi; ++ell)
        {
            const auto bb = build_root_system(kind, kind == Kind::A ? ell - 1 : ell);
            for (const auto& d : gp_enumerate(kind, ell))
            {
                Vec x;
                ASSERT_NO_THROW(x = gp_witness(d, 2)) << format_datum(d);
                const WeylElem w(bb, gp_element(d).matrix());
                EXPECT_TRUE(direct_criterion(w, 2, x, CriterionMode::chamber_C));
                EXPECT_TRUE(direct_criterion(w, 3, x, CriterionMode::chamber_C));
                if (ell <= 4)
                {
                    EXPECT_TRUE(check_dl_criterion(w, 2, CriterionMode::chamber_C).result.feasible);
                }
            }
        }
}

TEST(Scan, SmallRanks)
{
    for (auto [kind, ell] : std::vector<std::pair<Kind, int>>{{Kind::A, 4}, {Kind::B, 4}, {Kind::D, 4}})
    {
        auto s = scan_gp(kind, ell, 2);
        EXPECT_TRUE(s.all_pass);
        EXPECT_EQ(s.reports.size(), gp_count(kind, ell));
        for (const auto& r : s.reports)
        {
            EXPECT_EQ(r.method, "recipe");
            EXPECT_TRUE(verify(r.report.forms_used, r.report.result));
        }
    }
    EXPECT_EQ(gp_count(Kind::D, 4), 54u);
    EXPECT_THROW(scan_gp(Kind::B, 6, 2, 100), CapacityError);
    EXPECT_THROW(scan_gp(Kind::E6, 6, 2), UsageError);
}

TEST(Scan, ThreadedMatchesSequential)
{
    auto a = scan_gp(Kind::D, 5, 2, 100000, 1);
    auto b = scan_gp(Kind::D, 5, 2, 100000, 4);
    ASSERT_EQ(a.reports.size(), b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i)
    {
        EXPECT_EQ(a.reports[i].datum, b.reports[i].datum);
        EXPECT_EQ(a.reports[i].report.result.witness, b.reports[i].report.result.witness);
    }
}
