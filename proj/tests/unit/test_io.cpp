#include "crq/io.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using crq::io::json;
using crq::io::SchemaError;

namespace {

constexpr crq::TableStratum kStrata[] = {crq::TableStratum::Regulator, crq::TableStratum::GeneratorCoset,
                                         crq::TableStratum::BrokenCongruence, crq::TableStratum::OutsideM1};

}  // namespace

TEST_CASE("spec documents round-trip byte for byte")
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto g = crq::random_spec(seed, {});
        const std::string text = crq::io::canonical(crq::io::spec_to_json(g));
        const auto back = crq::io::spec_from_json(json::parse(text));
        CHECK(back == g);
        CHECK(crq::io::canonical(crq::io::spec_to_json(back)) == text);
    }
}

TEST_CASE("spec parsing canonicalizes order")
{
    const auto j = json::parse(R"({"types": [
        {"id": "z", "inf_primes": [7, 3], "rank": 1, "m": 5, "s": 2},
        {"id": "a", "inf_primes": [11], "rank": 2, "m": 5}]})");
    const auto g = crq::io::spec_from_json(j);
    REQUIRE(g.types.size() == 2);
    CHECK(g.types[0].id() == "a");
    CHECK(g.types[0].s == 1);
    CHECK(g.types[1].type.inf_primes == crq::PrimeSet{3, 7});
    const auto out = crq::io::spec_to_json(g);
    CHECK(out["types"][1]["inf_primes"] == json::array({3, 7}));
    CHECK(out["types"][0]["id"] == "a");
}

TEST_CASE("big integers serialize as strings")
{
    const crq::Integer big("123456789012345678901234567890");
    CHECK(crq::io::integer_to_json(big) == json("123456789012345678901234567890"));
    CHECK(crq::io::integer_from_json(json("123456789012345678901234567890"), "x") == big);
    CHECK(crq::io::integer_from_json(json(-7), "x") == -7);
    CHECK(crq::io::integer_to_json(42) == json(42));
    CHECK_THROWS_AS(crq::io::integer_from_json(json("12a"), "x"), SchemaError);
    CHECK_THROWS_AS(crq::io::integer_from_json(json(1.5), "x"), SchemaError);
}

TEST_CASE("spec schema violations")
{
    const char* bad[] = {
        R"([])",
        R"({"types": 3})",
        R"({"types": [{"id": "a", "inf_primes": [2], "rank": 1}]})",
        R"({"types": [{"id": "a", "inf_primes": [4], "rank": 1, "m": 1}]})",
        R"({"types": [{"id": "a", "inf_primes": [2], "rank": 1, "m": 1, "s": 3}]})",
        R"({"types": [{"id": "a", "inf_primes": [2], "rank": 1, "m": 0}]})",
        R"({"types": [{"id": "a", "inf_primes": [2], "rank": -1, "m": 1}]})",
        R"({"types": [{"id": "", "inf_primes": [2], "rank": 1, "m": 1}]})",
        R"({"types": [{"id": "a", "inf_primes": [2], "rank": 1, "m": 1, "extra": 0}]})",
        R"({"types": [], "version": 2})",
    };
    for (const char* text : bad) CHECK_THROWS_AS(crq::io::spec_from_json(json::parse(text)), SchemaError);
}

TEST_CASE("element documents round-trip and reduce fractions")
{
    const auto j = json::parse(R"({"t1": ["2/7", "0"], "t2": ["-4/6"], "t3": ["0"]})");
    const auto g = crq::io::element_from_json(j);
    CHECK(g.block("t3") == nullptr);
    CHECK((*g.block("t2"))[0] == crq::Rational(-2, 3));
    const auto out = crq::io::element_to_json(g);
    CHECK(out == json::parse(R"({"t1": ["2/7", "0"], "t2": ["-2/3"]})"));
    CHECK(crq::io::element_from_json(out) == g);
    CHECK_THROWS_AS(crq::io::element_from_json(json::parse(R"({"t1": [1]})")), SchemaError);
    CHECK_THROWS_AS(crq::io::element_from_json(json::parse(R"({"t1": ["1/0"]})")), SchemaError);
    CHECK_THROWS_AS(crq::io::element_from_json(json::parse(R"({"t1": ["0.5"]})")), SchemaError);
}

TEST_CASE("table documents round-trip byte for byte")
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto g = crq::random_spec(seed, {});
        crq::Rng rng(seed);
        for (auto stratum : kStrata) {
            const auto u = crq::random_table(g, stratum, rng);
            if (!u) continue;
            const std::string text = crq::io::canonical(crq::io::table_to_json(*u));
            const auto back = crq::io::table_from_json(json::parse(text));
            CHECK(back == *u);
            CHECK(crq::io::canonical(crq::io::table_to_json(back)) == text);
        }
    }
}

TEST_CASE("table schema violations")
{
    CHECK_THROWS_AS(crq::io::table_from_json(json::parse(R"({"t": [["1"]]})")), SchemaError);
    CHECK_THROWS_AS(crq::io::table_from_json(json::parse(R"({"t": [[["1"], ["0"]]]})")), SchemaError);
    CHECK_THROWS_AS(crq::io::table_from_json(json::parse(R"({"t": [[["1", "0"]]]})")), SchemaError);
    CHECK_THROWS_AS(crq::io::table_from_json(json::parse(R"([1])")), SchemaError);
    const auto zero = crq::io::table_from_json(json::parse(R"({"t": [[["0"]]]})"));
    CHECK(zero.blocks().empty());
}

TEST_CASE("verdicts round-trip")
{
    const auto g = fixtures::mixed_spec();
    crq::Rng rng(1);
    for (int i = 0; i < 40; ++i) {
        const auto u = *crq::random_table(g, kStrata[i % 4], rng);
        const auto v = crq::decide_membership(g, u);
        const json j = crq::io::verdict_to_json(v);
        const auto back = crq::io::verdict_from_json(json::parse(j.dump()));
        CHECK(back.member == v.member);
        CHECK(back.alpha == v.alpha);
        CHECK(back.residues.size() == v.residues.size());
        CHECK(back.failure.has_value() == v.failure.has_value());
        CHECK(crq::io::verdict_to_json(back) == j);
    }
    CHECK_THROWS_AS(crq::io::verdict_from_json(json::parse(R"({"member": true})")), SchemaError);
}

TEST_CASE("reports carry the documented fields")
{
    const auto desc = crq::compute_mult_group(fixtures::example_pair());
    const json d = crq::io::descriptor_to_json(desc);
    CHECK(d["regulator_index"] == 7);
    CHECK(d["spec"] == crq::io::spec_to_json(desc.spec));
    CHECK(d["generator"][0]["coefficient"] == "4/7");
    CHECK(d["basis"][0]["coefficient"] == 49);

    const auto r = crq::coset_relation(fixtures::example_pair(), 2, crq::AmbientElement());
    const json c = crq::io::coset_report_to_json(r);
    CHECK(c["gamma_interpretation"] == "gcd(gamma, n) = 1");
    CHECK(c.contains("confirmed"));

    const json e = crq::io::example_report_to_json(crq::example_2_7(2, 3, 7));
    CHECK(e["intersection_is_M2"] == true);
}

TEST_CASE("reading files")
{
    CHECK_THROWS_AS(crq::io::read_json_file("/nonexistent/spec.json"), SchemaError);
}
