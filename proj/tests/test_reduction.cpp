#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "dspkit/reduction.hpp"
#include "support.hpp"

using namespace dspkit;

namespace {

JnfTuple T(const char* text)
{
    return parse_tuple(text);
}

// Every tuple reachable by picking any slot with the maximal block count
// in each entry; independent of shrink_entry's choice.
std::vector<JnfTuple> all_psi_choices(const JnfTuple& t)
{
    const auto n = t.n();
    const auto shrink = n - (sum_r(t) - n);
    std::vector<std::vector<Jnf>> options;
    for (const auto& j : t.entries()) {
        std::vector<Jnf> opts;
        for (std::size_t k = 0; k < j.slots().size(); ++k) {
            if (static_cast<std::int64_t>(j.slots()[k].length()) != j.max_block_count())
                continue;
            auto slots = j.slots();
            auto parts = slots[k].parts();
            for (std::int64_t q = 0; q < shrink; ++q)
                --parts[parts.size() - 1 - static_cast<std::size_t>(q)];
            slots[k] = normalize(parts);
            std::erase_if(slots, [](const Partition& p) { return p.empty(); });
            opts.emplace_back(std::move(slots));
        }
        options.push_back(std::move(opts));
    }
    std::vector<JnfTuple> out;
    std::vector<std::size_t> pick(options.size(), 0);
    for (;;) {
        std::vector<Jnf> e;
        for (std::size_t i = 0; i < options.size(); ++i)
            e.push_back(options[i][pick[i]]);
        out.emplace_back(std::move(e));
        std::size_t i = options.size();
        bool done = true;
        while (i-- > 0) {
            if (++pick[i] < options[i].size()) {
                done = false;
                break;
            }
            pick[i] = 0;
        }
        if (done)
            return out;
    }
}

} // namespace

TEST(Conditions, HypergeometricSizeThree)
{
    auto rep = check_conditions(T("(2,1);(1,1,1);(1,1,1)"));
    EXPECT_TRUE(rep.alpha);
    EXPECT_EQ(rep.alpha_slack, 0);
    EXPECT_TRUE(rep.beta);
    EXPECT_EQ(rep.beta_margins, (std::vector<std::int64_t>{1, 0, 0}));
    EXPECT_FALSE(rep.omega);
    EXPECT_EQ(rep.omega_slack, -1);
}

TEST(Conditions, XiEightIsRigid)
{
    auto t = T("(2,2,2,2);(4,4);(4,4);(7,1)");
    EXPECT_EQ(sum_d(t), 48 + 32 + 32 + 14);
    EXPECT_EQ(check_conditions(t).alpha_slack, 0);
    EXPECT_EQ(defect(t), 2);
    EXPECT_TRUE(is_rigid(t));
}

TEST(Conditions, TwoHalfSplitsNeverSatisfyAlpha)
{
    for (const auto& p : partitions_of(8)) {
        auto t = JnfTuple::diagonal({MultiplicityVector{4, 4}, MultiplicityVector{4, 4}, MultiplicityVector(p)});
        auto rep = check_conditions(t);
        EXPECT_FALSE(rep.alpha) << to_string(p);
        EXPECT_EQ(rep.alpha_slack, 64 + d_of(MultiplicityVector(p)) - 126);
    }
}

TEST(Conditions, FlagsAgreeWithSlacks)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        auto t = test_support::random_tuple(1 + static_cast<std::int64_t>(rng() % 10), 2 + rng() % 4, rng, i % 2 == 0);
        auto rep = check_conditions(t);
        ASSERT_EQ(rep.alpha, rep.alpha_slack >= 0);
        ASSERT_EQ(rep.omega, rep.omega_slack >= 0);
        bool beta = true;
        for (auto m : rep.beta_margins)
            beta = beta && m >= 0;
        ASSERT_EQ(rep.beta, beta);
        ASSERT_EQ(rep.beta_margins.size(), t.count());
    }
}

TEST(PsiStep, DiagonalExamples)
{
    EXPECT_EQ(psi_step(T("(2,2,3);(2,2,3);(2,2,3)")), T("(2,2,1);(2,2,1);(2,2,1)"));
    EXPECT_EQ(psi_step(T("(2,2,2,2,1);(5,4);(5,4);(8,1)")).canonical(),
              T("(2,2,2,1);(4,3);(4,3);(6,1)").canonical());
}

TEST(PsiStep, ShrinksSmallestBlocksOfLargestSlot)
{
    EXPECT_EQ(shrink_entry(Jnf({Partition{2, 2}}), 1), Jnf({Partition{2, 1}}));
    EXPECT_EQ(shrink_entry(Jnf({Partition{3, 1, 1}, Partition{2}}), 2), Jnf({Partition{3}, Partition{2}}));
    // a diagonal entry loses from its largest multiplicity
    EXPECT_EQ(shrink_entry(Jnf::diagonal(MultiplicityVector{4, 2, 1}), 3), Jnf::diagonal(MultiplicityVector{2, 1, 1}));
}

TEST(PsiStep, Preconditions)
{
    EXPECT_THROW(psi_step(T("(1);(1)")), PreconditionError);
    // omega holds
    EXPECT_THROW(psi_step(T("(1,1);(1,1);(1,1);(1,1)")), PreconditionError);
    // beta fails
    EXPECT_THROW(psi_step(T("(2,1,1,1,1,1);(4,2,1);(4,2,1)")), PreconditionError);
}

TEST(Decide, WChainReachesSizeOne)
{
    auto tr = decide(T("(2,2,3);(2,2,3);(2,2,3)"));
    ASSERT_EQ(tr.steps.size(), 5u);
    EXPECT_EQ(tr.steps[1].tuple, T("(2,2,1);(2,2,1);(2,2,1)"));
    EXPECT_EQ(tr.steps[2].tuple, T("(1,1,2);(1,1,2);(1,1,2)"));
    EXPECT_EQ(tr.steps[3].tuple, T("(1,1);(1,1);(1,1)"));
    EXPECT_EQ(tr.steps[4].tuple, T("(1);(1);(1)"));
    EXPECT_EQ(tr.steps[0].n1, 5);
    EXPECT_FALSE(tr.steps[4].n1.has_value());
    EXPECT_TRUE(tr.verdict.solvable);
    EXPECT_EQ(tr.verdict.reason, Reason::ReducedToSize1);
    EXPECT_EQ(tr.verdict.at_step, 4u);
}

TEST(Decide, BetaFailsAfterOneStep)
{
    auto tr = decide(T("(3,2,1,1,1,1);(4,4,1);(4,4,1)"));
    EXPECT_EQ(defect(tr.steps[0].tuple), 2);
    EXPECT_TRUE(tr.steps[0].report.beta);
    ASSERT_EQ(tr.steps.size(), 2u);
    EXPECT_EQ(tr.steps[1].tuple, T("(2,1,1,1,1,1);(4,2,1);(4,2,1)"));
    EXPECT_EQ(tr.steps[1].report.beta_margins[0], 6 - 7);
    EXPECT_FALSE(tr.verdict.solvable);
    EXPECT_EQ(tr.verdict.reason, Reason::BetaFails);
    EXPECT_EQ(tr.verdict.at_step, 1u);
}

TEST(Decide, ScalarEntryIsDroppedMidway)
{
    auto tr = decide(T("(5,3);(6,2);(6,2);(6,2);(6,2)"));
    ASSERT_GE(tr.steps.size(), 2u);
    EXPECT_EQ(tr.steps[1].n, 3);
    EXPECT_EQ(tr.steps[1].dropped, (std::vector<std::size_t>{0}));
    EXPECT_EQ(tr.steps[1].report.beta_margins.size(), 4u);
    EXPECT_TRUE(tr.verdict.solvable);
}

TEST(Decide, TerminalVerdicts)
{
    auto one = decide(T("(1);(1)"));
    EXPECT_EQ(one.verdict, (Verdict{true, Reason::ReducedToSize1, 0}));
    EXPECT_EQ(decide(T("(3);(3)")).verdict, (Verdict{false, Reason::DegenerateInput, 0}));
    EXPECT_EQ(decide(T("(2,1);(3);(3)")).verdict, (Verdict{false, Reason::DegenerateInput, 0}));
    EXPECT_EQ(decide(T("(4,4);(4,4);(4,4)")).verdict, (Verdict{false, Reason::AlphaFails, 0}));
    EXPECT_EQ(decide(T("(1,1);(1,1);(1,1);(1,1)")).verdict, (Verdict{true, Reason::OmegaHolds, 0}));
    EXPECT_EQ(decide(T("(1,1,1);(1,1,1);(2,1)")).verdict.solvable, true);
    EXPECT_EQ(decide(T("(2,1);(2,1);(1,1,1)")).verdict, (Verdict{false, Reason::AlphaFails, 0}));
    // alpha holds, beta fails
    EXPECT_EQ(decide(T("(1,1,1,1);(3,1);(3,1);(3,1)")).verdict, (Verdict{false, Reason::BetaFails, 0}));
}

TEST(Decide, JordanFormsAgreeWithTheirDiagonals)
{
    EXPECT_TRUE(decide_diagonal_crosscheck(T("(2,2);(2,2);(2,1,1)")));
    auto jt = T("{(2,2)};{(2,2)};{(3,1)}");
    EXPECT_EQ(corresponding_diagonal(jt), T("(2,2);(2,2);(2,1,1)"));
    EXPECT_TRUE(decide_diagonal_crosscheck(jt));
    auto c2 = T("(2,2,2);(2,2,2);{(3,2,1)}");
    EXPECT_EQ(corresponding_diagonal(c2), T("(2,2,2);(2,2,2);(3,2,1)"));
    EXPECT_TRUE(decide_diagonal_crosscheck(c2));
    EXPECT_TRUE(decide(c2).verdict.solvable);
}

TEST(DecideProperties, DefectInvariantAndSizeDecreases)
{
    std::mt19937_64 rng(2024);
    int with_steps = 0;
    for (int i = 0; i < 5000; ++i) {
        auto t = test_support::random_tuple(1 + static_cast<std::int64_t>(rng() % 12), 2 + rng() % 4, rng, i % 3 != 0);
        auto tr = decide(t);
        ASSERT_FALSE(tr.steps.empty());
        ASSERT_LT(tr.steps.size(), static_cast<std::size_t>(t.n()) + 1);
        if (tr.steps.size() > 1)
            ++with_steps;
        for (std::size_t s = 1; s < tr.steps.size(); ++s) {
            ASSERT_LT(tr.steps[s].n, tr.steps[s - 1].n);
            ASSERT_EQ(tr.steps[s - 1].n1, tr.steps[s].n);
            ASSERT_EQ(defect(tr.steps[s].tuple), defect(t)) << to_string(t);
        }
        if (tr.verdict.solvable) {
            ASSERT_TRUE(tr.verdict.reason == Reason::OmegaHolds || tr.verdict.reason == Reason::ReducedToSize1);
        }
        ASSERT_EQ(tr.verdict.at_step + 1, tr.steps.size());
    }
    EXPECT_GT(with_steps, 100);
}

TEST(DecideProperties, ShrinkFitsUnderBeta)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5000; ++i) {
        auto t = test_support::random_tuple(2 + static_cast<std::int64_t>(rng() % 10), 3 + rng() % 2, rng, false);
        auto rep = check_conditions(t);
        if (!rep.beta || rep.omega)
            continue;
        const auto shrink = 2 * t.n() - sum_r(t);
        for (const auto& j : t.entries())
            ASSERT_LE(shrink, t.n() - r_of(j));
    }
}

TEST(DecideProperties, SlotChoiceDoesNotMatter)
{
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int i = 0; i < 20000 && checked < 3000; ++i) {
        const bool diagonal = i % 2 == 0;
        auto full = test_support::random_tuple(2 + static_cast<std::int64_t>(rng() % 8), 3 + rng() % 2, rng, diagonal);
        auto t = without_scalars(full);
        if (!t)
            continue;
        auto rep = check_conditions(*t);
        if (!rep.beta || rep.omega)
            continue;
        ++checked;
        const auto ref = psi_step(*t);
        const auto verdict = decide(ref).verdict.solvable;
        for (const auto& u : all_psi_choices(*t)) {
            ASSERT_EQ(u.n(), ref.n());
            ASSERT_EQ(defect(u), defect(ref));
            ASSERT_EQ(decide(u).verdict.solvable, verdict) << to_string(*t);
            if (diagonal) {
                ASSERT_EQ(u.canonical(), ref.canonical());
            }
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(DecideProperties, FirstEntryWithPartsAtMostTwo)
{
    // solvable exactly when alpha and beta hold; exhaustive for n <= 8
    for (std::int64_t n = 2; n <= 8; ++n) {
        std::vector<MultiplicityVector> firsts, others;
        for (const auto& p : partitions_of(n)) {
            if (p.length() == 1)
                continue;
            others.emplace_back(p);
            if (p.largest() <= 2)
                firsts.emplace_back(p);
        }
        for (const auto& f : firsts)
            for (std::size_t k = 1; k <= 4; ++k)
                test_support::for_each_multiset(others.size(), k, [&](const std::vector<std::size_t>& idx) {
                    std::vector<MultiplicityVector> pmv{f};
                    for (auto i : idx)
                        pmv.push_back(others[i]);
                    auto t = JnfTuple::diagonal(pmv);
                    auto rep = check_conditions(t);
                    ASSERT_EQ(decide(t).verdict.solvable, rep.alpha && rep.beta) << to_string(t);
                });
    }
}

TEST(Reason, TextRoundTrip)
{
    for (auto r : {Reason::OmegaHolds, Reason::ReducedToSize1, Reason::AlphaFails, Reason::BetaFails,
                   Reason::DegenerateInput})
        EXPECT_EQ(parse_reason(to_string(r)), r);
    EXPECT_THROW(parse_reason("Maybe"), ParseError);
}
