#include <catch2/catch_amalgamated.hpp>

#include <l2alex/io_json.hpp>

#include <charconv>

using namespace l2alex;
using nlohmann::json;

TEST_CASE("presentation json round trip") {
    json j = {{"generators", {"x", "y"}},
              {"relators", {"x^3 y^-7"}},
              {"phi", {{7}, {3}}}};
    Presentation P = presentation_from_json(j);
    REQUIRE(P.generators == std::vector<std::string>{"x", "y"});
    REQUIRE(P.phi.images == std::vector<std::vector<std::int64_t>>{{7}, {3}});
    Presentation Q = presentation_from_json(presentation_to_json(P));
    REQUIRE(Q.relators == P.relators);
    REQUIRE(Q.phi.images == P.phi.images);
}

TEST_CASE("presentation json rejects inconsistent input") {
    json mixed = {{"generators", {"x", "y"}},
                  {"relators", {"x y x^-1 y^-1"}},
                  {"phi", {{1}, {0, 1}}}};
    REQUIRE_THROWS_AS(presentation_from_json(mixed), ParseError);
    json bad_relator = {{"generators", {"x", "y"}},
                        {"relators", {"x y"}},
                        {"phi", {{1}, {0}}}};
    REQUIRE_THROWS_AS(presentation_from_json(bad_relator), ParseError);
    json missing = {{"generators", {"x"}}};
    REQUIRE_THROWS_AS(presentation_from_json(missing), ParseError);
}

TEST_CASE("pd json accepts wrapped and bare crossing lists") {
    json wrapped = {{"pd", {{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}}}};
    json bare = {{1, 4, 2, 5}, {3, 6, 4, 1}, {5, 2, 6, 3}};
    REQUIRE(pd_from_json(wrapped).crossings.size() == 3);
    REQUIRE(pd_from_json(bare).crossings == pd_from_json(wrapped).crossings);
    json short_row = {{"pd", {{1, 4, 2}}}};
    REQUIRE_THROWS_AS(pd_from_json(short_row), ParseError);
}

TEST_CASE("endomorphism json round trip") {
    json j = {{"generators", {"x", "y"}}, {"images", {"x y", "y x y"}}};
    FreeGroupEndo f = endo_from_json(j);
    REQUIRE(f.images.size() == 2);
    std::map<std::string, int> names{{"x", 0}, {"y", 1}};
    REQUIRE(f.images[1] == parse_word("y x y", names));
}

TEST_CASE("torsion function json round trip is bitwise exact") {
    MaxMonomialFn f;
    f.C = 1.7320508075688772; // sqrt 3, a full-precision double
    f.r = -2.0;
    f.C_exact = Rat(7, 3);
    f.prod_exact = Rat(1, 9);
    f.factors = {{0.38196601125010515, 1.0, {}}, {1.0, -3.0, Rat(1)}, {2.6180339887498949, 1.0, {}}};
    mm_canonicalize(f);
    MaxMonomialFn g = mm_from_json(mm_to_json(f));
    REQUIRE(g.C == f.C);
    REQUIRE(g.r == f.r);
    REQUIRE(g.factors.size() == f.factors.size());
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        REQUIRE(g.factors[i].c == f.factors[i].c);
        REQUIRE(g.factors[i].e == f.factors[i].e);
        REQUIRE(g.factors[i].c_exact == f.factors[i].c_exact);
    }
    REQUIRE(g.C_exact == f.C_exact);
    REQUIRE(g.prod_exact == f.prod_exact);
    REQUIRE(mm_from_json(mm_to_json(mm_zero())).zero);
}

TEST_CASE("shortest round trip double formatting") {
    // from_chars, not stod: stod throws out_of_range on subnormal results
    for (double v : {0.1, 1.0 / 3.0, 1e300, -2.6180339887498949, 0.0, 1e-308}) {
        std::string s = fmt_double(v);
        double back = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
        REQUIRE(ec == std::errc{});
        REQUIRE(ptr == s.data() + s.size());
        REQUIRE(back == v);
    }
}

TEST_CASE("csv sampling output") {
    SampledFn s = mm_sample(mm_max_one_pow(2.0), 1e-3, 1e3, 121);
    std::ostringstream os;
    sampled_to_csv(os, s);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    REQUIRE(line == "t,value,err");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    REQUIRE(rows == 121);
}

TEST_CASE("display form of torsion functions") {
    REQUIRE(mm_format(mm_max_one_pow(11.0)) == "max(1,t)^11");
    REQUIRE(mm_format(mm_max_one_pow(-1.0)) == "max(1,t)^-1");
    REQUIRE(mm_format(mm_one()) == "1");
    REQUIRE(mm_format(mm_zero()) == "0");
    REQUIRE(mm_format(mm_monomial(1.0, 2.0)) == "t^2");
    MaxMonomialFn f;
    f.C = 3.0;
    f.factors = {{0.5, -2.0, {}}};
    REQUIRE(mm_format(f) == "3 * max(0.5,t)^-2");
}
