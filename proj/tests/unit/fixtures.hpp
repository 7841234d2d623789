#pragma once

#include "crq/elements.hpp"
#include "crq/group.hpp"
#include "crq/random.hpp"

#include <string>
#include <vector>

namespace fixtures {

inline crq::CriticalTypeData type(const std::string& id, std::vector<std::uint64_t> inf, std::uint64_t rank,
                                  long m, long s = 1)
{
    return {crq::IdempotentType{id, crq::PrimeSet(std::move(inf))}, rank, crq::Integer(m), crq::Integer(s)};
}

inline crq::GroupSpec spec(std::vector<crq::CriticalTypeData> types)
{
    crq::GroupSpec g{std::move(types)};
    g.canonicalize();
    return g;
}

/// Two rank-one types with m = 7 and s = (2, 3); the infinity-primes avoid 2, 3, 7.
inline crq::GroupSpec example_pair()
{
    return spec({type("tau1", {11}, 1, 7, 2), type("tau2", {13}, 1, 7, 3)});
}

/// Three types, ranks up to 3, m = (4, 6, 12).
inline crq::GroupSpec mixed_spec()
{
    return spec({type("a", {5}, 2, 4, 3), type("b", {7}, 3, 6, 5), type("c", {11, 13}, 1, 12, 7),
                 type("d", {17}, 2, 1)});
}

/// Element of the hull with small numerators and denominators built from
/// {2, 3, 5, 7, 11, 13}; biased towards k d + A so both verdicts occur.
inline crq::AmbientElement random_element(const crq::GroupSpec& g, crq::Rng& rng)
{
    static const long dens[] = {1, 1, 1, 2, 3, 4, 5, 6, 7, 9, 11, 13, 25, 49};
    crq::AmbientElement out;
    for (const auto& t : g.types) {
        crq::Coords c(t.rank);
        for (auto& x : c) x = crq::Rational(rng.range(-9, 9), dens[rng.below(std::size(dens))]);
        out += crq::AmbientElement({{t.id(), c}});
    }
    if (rng.chance(1, 2)) {
        out = crq::Rational(rng.range(-20, 20)) * crq::element_d(g);
        for (const auto& t : g.types) {
            crq::Coords c(t.rank);
            for (auto& x : c) x = crq::Rational(rng.range(-9, 9));
            out += crq::AmbientElement({{t.id(), c}});
        }
    }
    return out;
}

}  // namespace fixtures
