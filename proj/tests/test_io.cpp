#include <random>

#include <gtest/gtest.h>

#include "esc/identities.hpp"
#include "esc/io.hpp"
#include "esc/solver.hpp"

using namespace esc;

TEST(JsonLine, ExactShape)
{
    const auto r = OutputRecord::from(eq5_general(1, 10, 9));
    EXPECT_EQ(to_json_line(r), R"({"n":341,"method":"eq5_general","params":{"k":1,"a":10,"b":9},"x":90,"y":3410,"z":3069})");

    const auto scaled = OutputRecord::from(scale_decomposition(family_8k_minus_3(1, false), 3));
    EXPECT_EQ(to_json_line(scaled),
              R"({"n":15,"method":"composite-reduction","params":{"m":3,"d":5,"base":"family_8k_minus_3"},"x":6,"y":12,"z":60})");

    const auto sq = OutputRecord::from(family_4k_minus_1(1, true));
    EXPECT_EQ(to_json_line(sq), R"({"n":9,"method":"family_4k_minus_1","params":{"k":1,"squared":true},"x":3,"y":18,"z":18})");
}

TEST(JsonLine, RoundTrip)
{
    for (Int n = 2; n <= 500; ++n) {
        for (const auto& d : solve_all(n)) {
            const auto r = OutputRecord::from(d);
            ASSERT_EQ(parse_json_line(to_json_line(r)), r) << to_json_line(r);
        }
    }
}

// Values wider than 64 bits must not pass through a double.
TEST(JsonLine, WideValuesRoundTrip)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        OutputRecord r;
        r.n = (static_cast<Int>(rng()) << 40) + static_cast<Int>(rng() % 1000) + 2;
        r.method = kAllMethods[i % kAllMethods.size()];
        r.params.k = static_cast<Int>(rng()) << 50;
        r.params.squared = i % 2 == 0;
        r.x = (static_cast<Int>(rng()) << 60) | static_cast<Int>(rng());
        r.y = r.x + 1;
        r.z = kIntMax - i;
        ASSERT_EQ(parse_json_line(to_json_line(r)), r) << to_json_line(r);
    }
}

TEST(JsonLine, ParseErrors)
{
    EXPECT_THROW((void)parse_json_line("{\"n\":5}"), FormatError);
    EXPECT_THROW((void)parse_json_line("not json"), FormatError);
    EXPECT_THROW((void)parse_json_line(R"({"n":5,"method":"bogus","params":{},"x":2,"y":4,"z":20})"), FormatError);
    EXPECT_THROW((void)parse_json_line(R"({"n":-5,"method":"eq8","params":{},"x":2,"y":4,"z":20})"), FormatError);
    EXPECT_THROW((void)parse_json_line(R"({"n":5.5,"method":"eq8","params":{},"x":2,"y":4,"z":20})"), FormatError);
    EXPECT_THROW((void)parse_json_line(R"({"n":5,"method":"eq8","params":{},"x":[2],"y":4,"z":20})"), FormatError);
    EXPECT_THROW((void)parse_json_line(R"({"n":999999999999999999999999999999999999999999,"method":"eq8","params":{},"x":2,"y":4,"z":20})"),
                 FormatError);
}

TEST(CsvLine, RoundTripDropsParams)
{
    const auto r = OutputRecord::from(eq5_general(2, 2, 5));
    EXPECT_EQ(to_csv_line(r), "73,eq5_general,20,292,730");
    auto back = parse_csv_line(to_csv_line(r));
    EXPECT_EQ(back.n, r.n);
    EXPECT_EQ(back.method, r.method);
    EXPECT_EQ((UnitTriple{back.x, back.y, back.z}), (UnitTriple{20, 292, 730}));
    EXPECT_EQ(back.params, IdentityParams{});

    EXPECT_THROW((void)parse_csv_line("73,eq5_general,20,292"), FormatError);
    EXPECT_THROW((void)parse_csv_line("73,nope,20,292,730"), FormatError);
    EXPECT_THROW((void)parse_csv_line("73,eq8,20,x,730"), FormatError);
}

TEST(TextLine, CanonicalOrder)
{
    const auto r = OutputRecord::from(solve(5));
    EXPECT_EQ(to_text_line(r), "4/5 = 1/2 + 1/5 + 1/10  (2,5,10)  [mod3_identity]");
}

TEST(Format, Names)
{
    EXPECT_EQ(format_from_string("csv"), Format::csv);
    EXPECT_EQ(format_from_string("json"), Format::json);
    EXPECT_EQ(format_from_string("text"), Format::text);
    EXPECT_FALSE(format_from_string("xml"));
}
