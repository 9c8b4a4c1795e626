#include <gtest/gtest.h>

#include <random>

#include "dspkit/io.hpp"
#include "support.hpp"

using namespace dspkit;
using io::Json;

TEST(TupleJson, DocumentedShape)
{
    auto j = io::parse_json(R"({"n":14,"entries":[{"eigenvalues":[[4,2,2],[5,1]]},
                                                  {"eigenvalues":[[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1]]},
                                                  {"eigenvalues":[[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1],[1]]}]})");
    auto t = io::tuple_from_json(j);
    EXPECT_EQ(t.n(), 14);
    EXPECT_EQ(t[0], Jnf({Partition{4, 2, 2}, Partition{5, 1}}));
    // slots come back in canonical order
    EXPECT_EQ(io::to_json(t)["entries"][0], io::parse_json(R"({"eigenvalues":[[5,1],[4,2,2]]})"));
    EXPECT_EQ(io::tuple_from_json(io::to_json(t)), t);
}

TEST(TupleJson, RoundTripRandomTuples)
{
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        auto t = test_support::random_tuple(1 + static_cast<std::int64_t>(rng() % 10), 2 + rng() % 3, rng, i % 2 == 0);
        auto j = io::to_json(t);
        ASSERT_EQ(io::tuple_from_json(io::parse_json(j.dump())), t);
        ASSERT_EQ(io::parse_tuple_any(j.dump()), t);
        ASSERT_EQ(io::parse_tuple_any(to_string(t)), t);
    }
}

TEST(TupleJson, Errors)
{
    EXPECT_THROW(io::parse_json("{"), ParseError);
    EXPECT_THROW(io::tuple_from_json(io::parse_json(R"({"entries":[{"eigenvalues":[[2]]}]})")), ParseError);
    EXPECT_THROW(io::tuple_from_json(io::parse_json(R"({"n":3,"entries":[{"eigenvalues":[[2]]},{"eigenvalues":[[2]]}]})")),
                 ParseError);
    EXPECT_THROW(io::tuple_from_json(io::parse_json(R"({"entries":[{"eigenvalues":[[2]]},{"eigenvalues":[[1]]}]})")),
                 ParseError);
    EXPECT_THROW(io::tuple_from_json(io::parse_json(R"({"entries":[{"eigenvalues":[[0,2]]},{"eigenvalues":[[2]]}]})")),
                 ParseError);
    EXPECT_THROW(io::tuple_from_json(io::parse_json(R"({"entries":[{"eigenvalues":[["2"]]},{"eigenvalues":[[2]]}]})")),
                 ParseError);
    EXPECT_THROW(io::tuple_from_json(io::parse_json(R"({"entries":[{"eigen":[[2]]},{"eigenvalues":[[2]]}]})")),
                 ParseError);
    EXPECT_THROW(io::jnf_from_json(io::parse_json(R"({"eigenvalues":[]})")), ParseError);
    EXPECT_THROW(io::parse_tuple_any("{(2,1)};{(2,1"), ParseError);
}

TEST(TraceJson, RoundTrip)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        auto t = test_support::random_tuple(1 + static_cast<std::int64_t>(rng() % 12), 2 + rng() % 3, rng, i % 3 != 0);
        auto tr = decide(t);
        auto j = io::to_json(tr);
        ASSERT_EQ(io::trace_from_json(io::parse_json(j.dump())), tr);
        ASSERT_EQ(io::to_json(io::trace_from_json(j)).dump(), j.dump());
    }
}

TEST(TraceJson, Fields)
{
    auto j = io::to_json(decide(parse_tuple("(3,2,2);(3,2,2);(3,2,2)")));
    ASSERT_EQ(j["steps"].size(), 5u);
    EXPECT_EQ(j["steps"][0]["tuple"], "(3,2,2);(3,2,2);(3,2,2)");
    EXPECT_EQ(j["steps"][0]["n1"], 5);
    EXPECT_TRUE(j["steps"][4]["n1"].is_null());
    EXPECT_EQ(j["verdict"]["reason"], "ReducedToSize1");
    EXPECT_EQ(j["verdict"]["solvable"], true);
    EXPECT_THROW(io::verdict_from_json(io::parse_json(R"({"solvable":true,"reason":"Maybe","at_step":0})")),
                 ParseError);
}

TEST(AssignmentJson, DocumentedShape)
{
    auto j = io::parse_json(R"({"mode":"additive","entries":[[{"coeffs":{"1":"-1/2","t1":"1"},"mult":2},
                                                              {"coeffs":{"1":"1"},"mult":1}],
                                                             [{"coeffs":{"t2":"3"},"mult":3}]]})");
    auto a = io::assignment_from_json(j);
    EXPECT_EQ(a.mode, Mode::Additive);
    EXPECT_EQ(a.entries[0][0].value.coeff(0), Rational(-1, 2));
    EXPECT_EQ(a.entries[0][0].value.coeff(1), 1);
    EXPECT_EQ(a.entries[1][0].value.coeff(2), 3);
    EXPECT_EQ(io::to_json(a), j);
}

TEST(AssignmentJson, RoundTripGenerated)
{
    for (const char* s : {"(1,1);(1,1);(1,1)", "(2,2,2,2);(4,4);(4,4);(7,1)", "(3,2,2);(3,2,2);(3,2,2)"})
        for (auto mode : {Mode::Additive, Mode::Multiplicative}) {
            auto a = generate_generic(parse_tuple(s), mode, 5);
            auto j = io::to_json(a);
            ASSERT_EQ(io::assignment_from_json(io::parse_json(j.dump())), a);
        }
}

TEST(AssignmentJson, Errors)
{
    EXPECT_THROW(io::assignment_from_json(io::parse_json(R"({"mode":"sum","entries":[]})")), ParseError);
    EXPECT_THROW(
        io::assignment_from_json(io::parse_json(R"({"mode":"additive","entries":[[{"coeffs":{"x":"1"},"mult":1}]]})")),
        ParseError);
    EXPECT_THROW(
        io::assignment_from_json(io::parse_json(R"({"mode":"additive","entries":[[{"coeffs":{"1":1},"mult":1}]]})")),
        ParseError);
    EXPECT_THROW(io::assignment_from_json(io::parse_json(
                     R"({"mode":"additive","entries":[[{"coeffs":{"1":"1/0"},"mult":1}],[{"coeffs":{},"mult":1}]]})")),
                 ParseError);
    // sizes differ between entries
    EXPECT_THROW(io::assignment_from_json(io::parse_json(
                     R"({"mode":"additive","entries":[[{"coeffs":{},"mult":2}],[{"coeffs":{},"mult":1}]]})")),
                 ParseError);
}

TEST(WitnessJson, RoundTrip)
{
    GenericityWitness w{3, {{1, 2}, {0, 3}, {2, 1}}};
    auto j = io::to_json(w);
    EXPECT_EQ(j.dump(), R"({"kappa":3,"sub":[[1,2],[0,3],[2,1]]})");
    EXPECT_EQ(io::witness_from_json(j), w);
    EXPECT_THROW(io::witness_from_json(io::parse_json(R"({"kappa":"3"})")), ParseError);
}

TEST(CatalogJson, Line)
{
    auto j = io::catalog_line(series({Family::W, 2}));
    EXPECT_EQ(j["n"], 7);
    EXPECT_EQ(j["defect"], 2);
    EXPECT_EQ(j["series_names"], Json::array({"W_2"}));
    EXPECT_EQ(io::tuple_from_json(j), series({Family::W, 2}));
}
