#include "dlpd/feaslin.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace dlpd;

namespace {

StrictSystem system_of(std::size_t dim, std::vector<Vec> rows)
{
    StrictSystem s{{}, dim};
    for (auto& r : rows)
        s.forms.push_back({std::move(r), ""});
    return s;
}

} // namespace

TEST(Feasibility, GordanPair)
{
    auto r = strict_feasible(system_of(1, {{1}, {-1}}));
    EXPECT_FALSE(r.feasible);
    ASSERT_TRUE(r.certificate);
    EXPECT_EQ(*r.certificate, (Vec{1, 1}));
    EXPECT_FALSE(r.witness);
}

TEST(Feasibility, SingleForm)
{
    auto r = strict_feasible(system_of(1, {{1}}));
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(*r.witness, (Vec{1}));
    EXPECT_FALSE(r.certificate);
}

TEST(Feasibility, EmptyAndInvalid)
{
    EXPECT_TRUE(strict_feasible(StrictSystem{{}, 3}).feasible);
    EXPECT_THROW(strict_feasible(system_of(2, {{0, 0}})), UsageError);
    EXPECT_THROW(strict_feasible(system_of(2, {{1}})), UsageError);
}

TEST(Feasibility, NeedsNegativeCoordinates)
{
    auto sys = system_of(2, {{-1, 0}, {-1, 1}, {-3, -1}});
    auto r = strict_feasible(sys);
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(sys.satisfied_by(*r.witness));
}

TEST(Feasibility, RandomAgainstSubsetOracle)
{
    std::mt19937 rng(20240611);
    int feasible = 0;
    for (int trial = 0; trial < 400; ++trial)
    {
        const std::size_t dim = 1 + static_cast<std::size_t>(trial % 4);
        const std::size_t m = 1 + static_cast<std::size_t>(rng() % 7);
        auto sys = oracle::random_system(rng, dim, m, 3);
        auto r = strict_feasible(sys);
        ASSERT_TRUE(verify(sys, r));
        EXPECT_EQ(r.feasible, oracle::strictly_feasible_by_subsets(sys)) << "trial " << trial;
        feasible += r.feasible;
        if (r.feasible)
        {
            EXPECT_TRUE(sys.satisfied_by(scaled(2, *r.witness)));
            EXPECT_TRUE(sys.satisfied_by(scaled(frac(1, 7), *r.witness)));
            // A positive combination of existing forms keeps it feasible.
            Vec extra = axpy(2, sys.forms.front().coeffs, sys.forms.back().coeffs);
            if (!is_zero(extra))
            {
                auto bigger = sys;
                bigger.forms.push_back({extra, "combo"});
                EXPECT_TRUE(strict_feasible(bigger).feasible);
            }
        }
    }
    EXPECT_GT(feasible, 50);
    EXPECT_LT(feasible, 350);
}

TEST(Feasibility, Deterministic)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial)
    {
        auto sys = oracle::random_system(rng, 3, 4, 4);
        auto a = strict_feasible(sys), b = strict_feasible(sys);
        EXPECT_EQ(a.witness, b.witness);
        EXPECT_EQ(a.certificate, b.certificate);
    }
}
