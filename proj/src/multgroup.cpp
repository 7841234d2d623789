#include "crq/multgroup.hpp"

#include <limits>
#include <set>

namespace crq {

namespace {

std::uint64_t cube_checked(std::uint64_t r, std::uint64_t limit)
{
    const unsigned __int128 c = static_cast<unsigned __int128>(r) * r * r;
    if (c > limit) {
        throw ResourceError("rank " + std::to_string(r) + "^3 exceeds the bound " + std::to_string(limit));
    }
    return static_cast<std::uint64_t>(c);
}

MultGroupDescriptor describe(const GroupSpec& spec, std::uint64_t max_rank)
{
    require_valid(spec);
    MultGroupDescriptor desc;
    desc.source = spec;
    for (const auto& t : spec.types) {
        CriticalTypeData image = t;
        image.rank = cube_checked(t.rank, max_rank);
        image.s = t.clipped() ? p0_inverse(t.s, t.m, t.type.inf_primes) : Integer(1);
        if (t.clipped()) desc.generator_numerators[t.id()] = image.s;
        desc.spec.types.push_back(std::move(image));

        const std::uint64_t n = t.rank;
        RegulatorBlock block;
        block.type = t.id();
        block.source_rank = n;
        block.corner_scale = t.clipped() ? Integer(t.m * t.m) : Integer(1);
        block.border_scale = t.m;
        block.corner_clipped = t.clipped() ? 1 : 0;
        block.corner_free = n - block.corner_clipped;
        block.border = 2 * n * (n - 1);
        block.interior = n * (n - 1) * (n - 1);
        desc.regulator.push_back(std::move(block));
    }
    desc.decomposition = main_decomposition(desc.spec);
    return desc;
}

}  // namespace

MultGroupDescriptor compute_mult_group(const GroupSpec& spec)
{
    return describe(spec, std::numeric_limits<std::uint64_t>::max());
}

MultTable basis_table(const MultGroupDescriptor& desc, const std::string& type)
{
    const auto& t = desc.source.at(type);
    if (!t.clipped()) throw DomainError("E_0 is only defined for clipped types, '" + type + "' has m = 1");
    Coords corner(t.rank);
    corner[0] = Rational(t.m * t.m);
    MultTable e;
    e.set(desc.source, type, 0, 0, std::move(corner));
    return e;
}

MultTable generator_table(const MultGroupDescriptor& desc)
{
    MultTable x;
    for (const auto& [type, numerator] : desc.generator_numerators) {
        x += Rational(numerator, desc.source.at(type).m) * basis_table(desc, type);
    }
    return x;
}

MultGroupDescriptor iterate_mult(const GroupSpec& spec, unsigned k, std::uint64_t max_rank)
{
    if (k < 1) throw DomainError("iterate_mult: k must be at least 1");
    MultGroupDescriptor desc = describe(spec, max_rank);
    for (unsigned step = 1; step < k; ++step) desc = describe(desc.spec, max_rank);
    return desc;
}

CosetReport coset_relation(const GroupSpec& spec, const Integer& gamma, const AmbientElement& b,
                           std::uint64_t seed, std::size_t samples)
{
    require_valid(spec);
    const Integer n = regulator_index(spec);
    if (gcd(gamma, n) != 1) throw DomainError("coset_relation: gamma must be coprime to n = " + n.get_str());
    check_shape(spec, b);
    for (const auto& [type, coords] : b.blocks()) {
        const auto& t = spec.at(type);
        if (!t.clipped()) throw DomainError("coset_relation: b has support on non-clipped type '" + type + "'");
        for (std::size_t i = 1; i < coords.size(); ++i) {
            if (!coords[i].is_zero()) throw DomainError("coset_relation: b must be supported on slot 0");
        }
        if (!t.type.in_ring(coords[0])) throw DomainError("coset_relation: b_tau must lie in R_tau");
    }

    CosetReport report;
    report.gamma = gamma;
    report.gamma_inverse = mod_inverse(gamma, n);
    report.shifted = spec;
    for (auto& t : report.shifted.types) {
        if (!t.clipped()) continue;
        const auto* blk = b.block(t.id());
        const Rational b_tau = blk == nullptr ? Rational(0) : (*blk)[0];
        const Rational numerator = Rational(gamma * t.s) + Rational(t.m) * b_tau;
        if (!numerator.is_integer() || numerator.is_zero() || !t.type.is_p0_integer(numerator.num())) {
            report.reason = "s'_" + t.id() + " = " + numerator.str() +
                            " is not a P0-integer, so d1 = gamma d + b is outside D(E_0)";
            return report;
        }
        t.s = numerator.num();
    }
    if (!validate_spec(report.shifted).empty()) {
        report.reason = "shifted presentation is not a standard representation";
        return report;
    }
    report.applicable = true;

    report.witness = generator_x(report.shifted) - Rational(report.gamma_inverse) * generator_x(spec);
    report.witness_in_M2 = in_M2(spec, report.witness);

    Rng rng(seed);
    constexpr TableStratum strata[] = {TableStratum::Regulator, TableStratum::GeneratorCoset,
                                       TableStratum::BrokenCongruence, TableStratum::OutsideM1};
    report.verdicts_agree = true;
    for (std::size_t i = 0; report.samples.size() < samples && i < 4 * samples; ++i) {
        const auto stratum = strata[i % 4];
        auto table = random_table(spec, stratum, rng);
        if (!table) continue;
        const auto v2 = decide_membership(spec, *table);
        const auto v1 = decide_membership(report.shifted, *table);
        CosetSample s;
        s.stratum = to_string(stratum);
        s.member_d = v2.member;
        s.member_d1 = v1.member;
        if (v1.member && v2.member) {
            s.alpha_relation_ok = mod_floor(v1.alpha->residue - gamma * v2.alpha->residue, n) == 0;
        }
        report.verdicts_agree = report.verdicts_agree && s.member_d == s.member_d1 && s.alpha_relation_ok;
        report.samples.push_back(std::move(s));
    }
    return report;
}

namespace {

std::vector<std::uint64_t> prime_factors(const Integer& x)
{
    std::vector<std::uint64_t> out;
    for (const auto& [p, e] : factorize(abs(x))) {
        if (!p.fits_ulong_p()) throw DomainError("prime factor does not fit 64 bits");
        out.push_back(p.get_ui());
    }
    return out;
}

/// Rescales the coordinates of every block by the factor of its type.
MultTable rescale(const MultTable& u, const std::map<std::string, Rational>& factor)
{
    MultTable out;
    for (const auto& [type, block] : u.blocks()) {
        TableBlock b = block;
        for (std::size_t i = 0; i < b.rank(); ++i) {
            for (std::size_t j = 0; j < b.rank(); ++j) {
                for (auto& c : b.at(i, j)) c *= factor.at(type);
            }
        }
        out.put_block(type, std::move(b));
    }
    return out;
}

}  // namespace

Example27Report example_2_7(const Integer& s1, const Integer& s2, const Integer& m)
{
    if (s1 <= 1 || s2 <= 1) throw DomainError("example_2_7: requires s1 > 1 and s2 > 1");
    if (gcd(s1, s2) != 1) throw DomainError("example_2_7: requires gcd(s1, s2) = 1");
    if (!m.fits_ulong_p() || !is_prime(m.get_ui())) throw DomainError("example_2_7: m must be prime");
    if (s1 % m == 0) throw DomainError("example_2_7: m divides s1");
    if (s2 % m == 0) throw DomainError("example_2_7: m divides s2");
    if ((s1 * s1 - s2 * s2) % m == 0) throw DomainError("example_2_7: m divides s1^2 - s2^2");

    Example27Report report;
    report.s1 = s1;
    report.s2 = s2;
    report.m = m;

    // P_inf(tau_i) must make s_i + m a unit of R_i (so f_i is a basis) and
    // contain the primes of the other s, which keeps the types incomparable.
    auto inf_primes = [&](const Integer& own, const Integer& other) {
        auto primes = prime_factors(own + m);
        for (auto p : prime_factors(other)) primes.push_back(p);
        return PrimeSet(primes);
    };
    const IdempotentType tau1{"tau1", inf_primes(s1, s2)};
    const IdempotentType tau2{"tau2", inf_primes(s2, s1)};

    report.spec_E.types = {{tau1, 1, m, s1}, {tau2, 1, m, s2}};
    report.spec_F.types = {{tau1, 1, m, 1}, {tau2, 1, m, 1}};
    require_valid(report.spec_E);
    require_valid(report.spec_F);

    const Integer f1 = s1 + m;
    const Integer f2 = s2 + m;
    report.f_basis_valid = tau1.is_pinf_integer(f1) && tau2.is_pinf_integer(f2);

    // F-coordinates times s_i + m give E-coordinates.
    const std::map<std::string, Rational> to_E = {{"tau1", Rational(f1)}, {"tau2", Rational(f2)}};
    const std::map<std::string, Rational> to_F = {{"tau1", Rational(1, f1)}, {"tau2", Rational(1, f2)}};

    {
        const AmbientElement d = element_d(report.spec_E);
        const AmbientElement d1 = d + AmbientElement::basis("tau1", 1, 0) + AmbientElement::basis("tau2", 1, 0);
        AmbientElement d1_F = element_d(report.spec_F);
        std::map<std::string, Coords> as_E;
        for (const auto& [type, coords] : d1_F.blocks()) as_E[type] = {coords[0] * to_E.at(type)};
        report.d1_matches = AmbientElement(as_E) == d1;
    }

    const Rational m2(m * m);
    const auto perturbation = [&](const GroupSpec& spec, const Integer& k) {
        MultTable p;
        for (const auto& t : spec.types) p.set(spec, t.id(), 0, 0, {m2 * Rational(k)});
        return p;
    };

    bool separated = true;
    const MultTable x_E = generator_x(report.spec_E);
    const MultTable x_F = generator_x(report.spec_F);
    for (Integer alpha = 1; alpha < m; ++alpha) {
        const MultTable u = Rational(alpha) * x_E + perturbation(report.spec_E, alpha);
        Example27Row row{alpha, decide_membership(report.spec_E, u).member,
                         decide_membership(report.spec_F, rescale(u, to_F)).member};
        separated = separated && row.member_E && !row.member_F;
        report.from_E.push_back(row);
    }
    for (Integer beta = 1; beta < m; ++beta) {
        const MultTable u = Rational(beta) * x_F + perturbation(report.spec_F, beta);
        Example27Row row{beta, decide_membership(report.spec_E, rescale(u, to_E)).member,
                         decide_membership(report.spec_F, u).member};
        separated = separated && row.member_F && !row.member_E;
        report.from_F.push_back(row);
    }

    report.regulator_in_both = true;
    Rng rng(m.get_ui());
    for (int i = 0; i < 8; ++i) {
        const auto u = *random_table(report.spec_E, TableStratum::Regulator, rng);
        report.regulator_in_both = report.regulator_in_both && in_M2(report.spec_E, u) &&
                                   decide_membership(report.spec_E, u).member &&
                                   decide_membership(report.spec_F, rescale(u, to_F)).member;
    }

    report.confirmed = report.f_basis_valid && report.d1_matches && separated && report.regulator_in_both;
    return report;
}

}  // namespace crq
