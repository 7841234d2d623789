#include "crq/multgroup.hpp"

#include "doctest.h"
#include "fixtures.hpp"

using crq::AmbientElement;
using crq::Integer;
using crq::Rational;
using fixtures::spec;
using fixtures::type;

TEST_CASE("Mult G of a rank-two type has rank eight")
{
    const auto g = spec({type("t1", {5}, 2, 3, 1), type("t2", {7}, 1, 3, 2)});
    const auto desc = crq::compute_mult_group(g);
    CHECK(desc.spec.at("t1").rank == 8);
    CHECK(desc.spec.at("t2").rank == 1);
    CHECK(desc.regulator.front().total() == 8);
    CHECK(desc.decomposition.complement.at("t1") == 7);
}

TEST_CASE("Mult G of the m = 7 pair")
{
    const auto desc = crq::compute_mult_group(fixtures::example_pair());
    CHECK(desc.spec.at("tau1").s == 4);
    CHECK(desc.spec.at("tau2").s == 5);
    CHECK(desc.spec.at("tau1").m == 7);
    CHECK(desc.spec.at("tau1").rank == 1);
    CHECK(crq::validate_spec(desc.spec).empty());

    // With 5 an infinity-prime of tau2, the class 5 + 7Z is scanned to 12 = 2^2 * 3.
    const auto shifted = crq::compute_mult_group(spec({type("tau1", {11}, 1, 7, 2), type("tau2", {5}, 1, 7, 3)}));
    CHECK(shifted.spec.at("tau2").s == 12);
}

TEST_CASE("Mult G of a completely decomposable group")
{
    const auto g = spec({type("t1", {5}, 2, 1), type("t2", {7}, 3, 1)});
    const auto desc = crq::compute_mult_group(g);
    CHECK(desc.spec.clipped_types().empty());
    CHECK(desc.decomposition.clipped.empty());
    CHECK(desc.spec.at("t1").rank == 8);
    CHECK(desc.spec.at("t2").rank == 27);
    CHECK(desc.generator_numerators.empty());
    CHECK(crq::generator_table(desc) == crq::MultTable());
    CHECK_THROWS_AS(crq::basis_table(desc, "t1"), crq::DomainError);
}

TEST_CASE("Mult G rejects invalid specs")
{
    CHECK_THROWS_AS(crq::compute_mult_group(spec({type("t1", {5}, 1, 7)})), crq::DomainError);
}

TEST_CASE("descriptor invariants over random specs")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto g = crq::random_spec(seed, {});
        const auto desc = crq::compute_mult_group(g);
        REQUIRE(crq::validate_spec(desc.spec).empty());
        CHECK(desc.spec.clipped_types() == g.clipped_types());
        CHECK(crq::regulator_index(desc.spec) == crq::regulator_index(g));
        REQUIRE(desc.spec.types.size() == g.types.size());
        for (std::size_t i = 0; i < g.types.size(); ++i) {
            const auto& src = g.types[i];
            const auto& img = desc.spec.types[i];
            CHECK(img.type == src.type);
            CHECK(img.m == src.m);
            CHECK(img.rank == src.rank * src.rank * src.rank);
            CHECK(desc.regulator[i].total() == img.rank);
            const std::uint64_t clipped = src.clipped() ? 1 : 0;
            CHECK(desc.decomposition.complement.at(src.id()) + clipped == img.rank);
            if (src.clipped()) {
                CHECK(crq::mod_floor(img.s * src.s - 1, src.m) == 0);
                CHECK(crq::gcd(img.s, img.m) == 1);
                CHECK(img.type.is_p0_integer(img.s));
            } else {
                CHECK(img.s == 1);
            }
        }
        const auto x = crq::generator_table(desc);
        CHECK(x == crq::generator_x(g, desc.generator_numerators));
        const auto v = crq::decide_membership(g, x);
        REQUIRE(v.member);
        CHECK(v.alpha->residue == (crq::regulator_index(g) == 1 ? 0 : 1));
        CHECK(crq::closure_oracle(g, x));
        for (const auto& id : g.clipped_types()) {
            const auto e = crq::basis_table(desc, id);
            CHECK(crq::in_M2(g, e));
            CHECK_FALSE(crq::in_M2(g, Rational(1, g.at(id).m) * e));
        }
    }
}

TEST_CASE("iterate_mult")
{
    const auto g = spec({type("t1", {5}, 2, 3, 1), type("t2", {7}, 1, 3, 2)});
    const auto twice = crq::iterate_mult(g, 2);
    CHECK(twice.spec.at("t1").rank == 512);
    CHECK(twice.spec.at("t1").m == 3);
    CHECK(crq::regulator_index(twice.spec) == 3);
    CHECK(twice.source == crq::compute_mult_group(g).spec);

    const auto once = crq::iterate_mult(g, 1);
    CHECK(once.spec == crq::compute_mult_group(g).spec);
    CHECK(once.generator_numerators == crq::compute_mult_group(g).generator_numerators);

    // s' is an inverse of s, so two steps return to the class of s.
    const auto t2 = twice.spec.at("t2");
    CHECK(crq::mod_floor(t2.s - 2, 3) == 0);

    CHECK_THROWS_AS(crq::iterate_mult(g, 0), crq::DomainError);
    CHECK_THROWS_AS(crq::iterate_mult(g, 4), crq::ResourceError);
    CHECK_NOTHROW(crq::iterate_mult(g, 3));
    CHECK(crq::iterate_mult(g, 3).spec.at("t1").rank == 134217728);
}

TEST_CASE("coset relation with the identity change")
{
    const auto g = fixtures::mixed_spec();
    const auto r = crq::coset_relation(g, 1, AmbientElement());
    REQUIRE(r.applicable);
    CHECK(r.witness == crq::MultTable());
    CHECK(r.confirmed());
    CHECK(r.samples.size() == 24);
}

TEST_CASE("coset relation with b = e_0")
{
    const auto g = fixtures::example_pair();
    const auto r = crq::coset_relation(g, 1, AmbientElement::basis("tau1", 1, 0));
    REQUIRE(r.applicable);
    CHECK(r.shifted.at("tau1").s == 9);
    CHECK(r.witness_in_M2);
    CHECK(r.confirmed());
}

TEST_CASE("coset relation with gamma != 1")
{
    const auto g = fixtures::mixed_spec();
    // 17 avoids every infinity-prime of the spec, so each 17 s stays a P0-integer.
    const auto r = crq::coset_relation(g, 17, AmbientElement(), 3, 30);
    REQUIRE(r.applicable);
    CHECK(r.gamma_inverse == 5);
    CHECK(r.shifted.at("a").s == 51);
    CHECK_FALSE(crq::coset_relation(g, 5, AmbientElement()).applicable);
    CHECK(r.confirmed());
    CHECK(r.samples.size() == 30);
    std::size_t both = 0;
    for (const auto& s : r.samples) both += s.member_d && s.member_d1 ? 1 : 0;
    CHECK(both > 0);
}

TEST_CASE("coset relation leaves D(E_0) on the cross-basis shift")
{
    const auto report = crq::example_2_7(2, 3, 7);
    const auto g = report.spec_E;
    const auto b = AmbientElement::basis("tau1", 1, 0) + AmbientElement::basis("tau2", 1, 0);
    const auto r = crq::coset_relation(g, 1, b);
    CHECK_FALSE(r.applicable);
    CHECK_FALSE(r.reason.empty());
    CHECK_FALSE(r.confirmed());
}

TEST_CASE("coset relation domain errors")
{
    const auto g = fixtures::mixed_spec();
    CHECK_THROWS_AS(crq::coset_relation(g, 3, AmbientElement()), crq::DomainError);
    CHECK_THROWS_AS(crq::coset_relation(g, 1, AmbientElement::basis("a", 2, 1)), crq::DomainError);
    CHECK_THROWS_AS(crq::coset_relation(g, 1, AmbientElement::basis("d", 2, 0)), crq::DomainError);
    CHECK_THROWS_AS(crq::coset_relation(g, 1, AmbientElement::basis("a", 2, 0, Rational(1, 3))), crq::DomainError);
}

TEST_CASE("cross-basis example is confirmed for the listed triples")
{
    const long triples[][3] = {{2, 3, 7}, {3, 4, 11}, {2, 5, 13}};
    for (const auto& t : triples) {
        const auto r = crq::example_2_7(t[0], t[1], t[2]);
        CHECK(r.confirmed);
        CHECK(r.f_basis_valid);
        CHECK(r.d1_matches);
        CHECK(r.regulator_in_both);
        REQUIRE(r.from_E.size() == static_cast<std::size_t>(t[2] - 1));
        REQUIRE(r.from_F.size() == static_cast<std::size_t>(t[2] - 1));
        for (std::size_t i = 0; i < r.from_E.size(); ++i) {
            CHECK(r.from_E[i].alpha == static_cast<long>(i + 1));
            CHECK(r.from_E[i].member_E);
            CHECK_FALSE(r.from_E[i].member_F);
            CHECK(r.from_F[i].member_F);
            CHECK_FALSE(r.from_F[i].member_E);
        }
        CHECK(crq::validate_spec(r.spec_E).empty());
        CHECK(crq::validate_spec(r.spec_F).empty());
    }
}

TEST_CASE("cross-basis example hypotheses")
{
    CHECK_THROWS_AS(crq::example_2_7(2, 3, 5), crq::DomainError);
    CHECK_THROWS_AS(crq::example_2_7(2, 4, 7), crq::DomainError);
    CHECK_THROWS_AS(crq::example_2_7(1, 3, 7), crq::DomainError);
    CHECK_THROWS_AS(crq::example_2_7(2, 3, 9), crq::DomainError);
    CHECK_THROWS_AS(crq::example_2_7(2, 7, 7), crq::DomainError);
}

TEST_CASE("cross-basis prime sets")
{
    const auto r = crq::example_2_7(2, 3, 7);
    // P_inf(tau1) = primes(9) plus primes(3); P_inf(tau2) = primes(10) plus primes(2).
    CHECK(r.spec_E.at("tau1").type.inf_primes == crq::PrimeSet{3});
    CHECK(r.spec_E.at("tau2").type.inf_primes == crq::PrimeSet{2, 5});
    const auto desc = crq::compute_mult_group(r.spec_E);
    CHECK(desc.spec.at("tau1").s == 4);
    CHECK(desc.spec.at("tau2").s == 19);
}
