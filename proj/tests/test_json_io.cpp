#include <gtest/gtest.h>

#include <jetlab/json_io.hpp>

#include "support.hpp"

using namespace jetlab;

TEST(JsonIo, ParamsRoundTrip)
{
    testing_support::Gen g(501);
    for (int k = 0; k < 10; ++k) {
        const AutParams p = g.params();
        EXPECT_EQ(params_from_json(json::parse(params_to_json(p).dump())), p);
    }
}

TEST(JsonIo, ParamsAcceptBareStrings)
{
    const json j = json::parse(R"({"eps": "-1", "r": "3/2", "alpha": {"re": "0", "im": "1"}, "s": "-4"})");
    EXPECT_EQ(params_from_json(j), (AutParams{GaussRat(-1), Rational(3, 2), GaussRat::i(), Rational(-4)}));
}

TEST(JsonIo, ParamsRejectInvalidInput)
{
    EXPECT_THROW(params_from_json(json::parse(R"({"eps": "2", "r": "1", "alpha": "0", "s": "0"})")), std::invalid_argument);
    EXPECT_THROW(params_from_json(json::parse(R"({"eps": "1", "r": "0", "alpha": "0", "s": "0"})")), std::invalid_argument);
    EXPECT_THROW(params_from_json(json::parse(R"({"eps": "1", "r": {"re": "1", "im": "1"}, "alpha": "0", "s": "0"})")),
                 std::invalid_argument);
    EXPECT_THROW(params_from_json(json::parse(R"({"eps": "1", "r": "1", "alpha": "0"})")), std::invalid_argument);
}

TEST(JsonIo, MapRoundTrip)
{
    const MapFG H = build_automorphism({GaussRat::i(), Rational(2), GaussRat(1, -1), Rational(1, 3)}, 5);
    EXPECT_EQ(map_from_json(json::parse(map_to_json(H).dump())), H);
}

TEST(JsonIo, LambdaNamedAndTupleForms)
{
    const Lambda0 l = Lambda0::make(GaussRat::i(), GaussRat(3), GaussRat(1, 2), Rational(-1, 2));
    const json j = lambda_to_json(l);
    EXPECT_EQ(lambda_from_json(j), l);
    json named = j;
    named.erase("tuple");
    EXPECT_EQ(lambda_from_json(named), l);
    json short_tuple;
    short_tuple["tuple"] = json::array({"1", "1"});
    EXPECT_THROW(lambda_from_json(short_tuple), std::invalid_argument);
}

TEST(JsonIo, MissingFileAndMalformedJson)
{
    EXPECT_THROW(read_json_file("/nonexistent/params.json"), std::invalid_argument);
}
