#include "crq/elements.hpp"

#include <algorithm>

namespace crq {

AmbientElement::AmbientElement(std::map<std::string, Coords> blocks) : blocks_(std::move(blocks))
{
    drop_zero_blocks();
}

AmbientElement AmbientElement::basis(const std::string& type, std::size_t rank, std::size_t slot,
                                     const Rational& coefficient)
{
    if (slot >= rank) throw DomainError("basis slot out of range");
    Coords c(rank);
    c[slot] = coefficient;
    return AmbientElement({{type, std::move(c)}});
}

const Coords* AmbientElement::block(const std::string& type) const
{
    auto it = blocks_.find(type);
    return it == blocks_.end() ? nullptr : &it->second;
}

void AmbientElement::drop_zero_blocks()
{
    std::erase_if(blocks_, [](const auto& kv) {
        return std::all_of(kv.second.begin(), kv.second.end(), [](const Rational& q) { return q.is_zero(); });
    });
}

AmbientElement& AmbientElement::operator+=(const AmbientElement& o)
{
    for (const auto& [type, coords] : o.blocks_) {
        auto& mine = blocks_[type];
        if (mine.empty()) mine.resize(coords.size());
        if (mine.size() != coords.size()) throw DomainError("block length mismatch for type '" + type + "'");
        for (std::size_t i = 0; i < coords.size(); ++i) mine[i] += coords[i];
    }
    drop_zero_blocks();
    return *this;
}

AmbientElement& AmbientElement::operator-=(const AmbientElement& o)
{
    return *this += Rational(-1) * o;
}

AmbientElement& AmbientElement::operator*=(const Rational& c)
{
    for (auto& [type, coords] : blocks_) {
        for (auto& q : coords) q *= c;
    }
    drop_zero_blocks();
    return *this;
}

void check_shape(const GroupSpec& spec, const AmbientElement& g)
{
    for (const auto& [type, coords] : g.blocks()) {
        const auto& t = spec.at(type);
        if (coords.size() != t.rank) {
            throw DomainError("block '" + type + "' has " + std::to_string(coords.size()) +
                              " coordinates, rank is " + std::to_string(t.rank));
        }
    }
}

AmbientElement element_d(const GroupSpec& spec)
{
    std::map<std::string, Coords> blocks;
    for (const auto& t : spec.types) {
        if (!t.clipped()) continue;
        if (t.rank == 0) throw DomainError("type '" + t.id() + "' has m > 1 but rank 0");
        Coords c(t.rank);
        c[0] = Rational(t.s, t.m);
        blocks.emplace(t.id(), std::move(c));
    }
    return AmbientElement(std::move(blocks));
}

AmbientElement project(const GroupSpec& spec, const AmbientElement& g, const std::string& type)
{
    spec.at(type);
    const auto* b = g.block(type);
    if (b == nullptr) return {};
    return AmbientElement({{type, *b}});
}

bool coords_in_scaled_ring(const IdempotentType& type, const Coords& coords, const Integer& scale)
{
    if (scale < 1) throw DomainError("scale must be positive");
    const Rational divisor(scale);
    return std::all_of(coords.begin(), coords.end(),
                       [&](const Rational& c) { return type.in_ring(c / divisor); });
}

bool in_scaled_A_tau(const GroupSpec& spec, const AmbientElement& g, const std::string& type,
                     const Integer& scale)
{
    const auto& t = spec.at(type);
    for (const auto& [id, coords] : g.blocks()) {
        if (id != type) throw DomainError("element has support outside type '" + type + "'");
    }
    const auto* b = g.block(type);
    return b == nullptr || coords_in_scaled_ring(t.type, *b, scale);
}

bool in_A(const GroupSpec& spec, const AmbientElement& g)
{
    return std::all_of(g.blocks().begin(), g.blocks().end(), [&](const auto& kv) {
        return coords_in_scaled_ring(spec.at(kv.first).type, kv.second, 1);
    });
}

std::optional<GMembership> in_G(const GroupSpec& spec, const AmbientElement& g)
{
    check_shape(spec, g);
    std::vector<Congruence> congruences;
    for (const auto& t : spec.types) {
        const auto* b = g.block(t.id());
        if (!t.clipped()) {
            if (b != nullptr && !coords_in_scaled_ring(t.type, *b, 1)) return std::nullopt;
            continue;
        }
        if (b == nullptr) {
            congruences.push_back({0, t.m});
            continue;
        }
        for (std::size_t i = 1; i < b->size(); ++i) {
            if (!t.type.in_ring((*b)[i])) return std::nullopt;
        }
        // Need k with m*c - k*s in m R_tau for the slot-0 coordinate c.
        const Rational scaled = Rational(t.m) * (*b)[0];
        if (!t.type.in_ring(scaled)) return std::nullopt;
        const Integer r = rational_mod(scaled, t.m);
        congruences.push_back({mod_floor(r * mod_inverse(t.s, t.m), t.m), t.m});
    }
    auto k = crt_solve(congruences);
    if (!k) return std::nullopt;
    AmbientElement a = g - Rational(k->residue) * element_d(spec);
    if (!in_A(spec, a)) return std::nullopt;
    return GMembership{k->residue, std::move(a)};
}

std::optional<GMembership> in_G_by_scan(const GroupSpec& spec, const AmbientElement& g)
{
    check_shape(spec, g);
    const Integer n = regulator_index(spec);
    const AmbientElement d = element_d(spec);
    AmbientElement a = g;
    for (Integer k = 0; k < n; ++k) {
        if (in_A(spec, a)) return GMembership{k, a};
        a -= d;
    }
    return std::nullopt;
}

Integer order_mod_A(const GroupSpec& spec, const AmbientElement& g)
{
    check_shape(spec, g);
    Integer order = 1;
    for (const auto& [type, coords] : g.blocks()) {
        const auto& inf = spec.at(type).type.inf_primes;
        for (const auto& c : coords) {
            order = lcm(order, strip_primes(c.den(), inf));
        }
    }
    return order;
}

bool purity_oracle(const GroupSpec& spec, const std::string& sigma)
{
    spec.at(sigma);
    if (auto v = validate_shape(spec); !v.empty()) {
        throw DomainError("purity_oracle: malformed candidate (" + to_string(v.front().code) + ": " +
                          v.front().message + ")");
    }
    const AmbientElement d = element_d(spec);
    Integer n1 = 1;
    for (const auto& t : spec.types) {
        if (t.id() != sigma) n1 = lcm(n1, order_mod_A(spec, project(spec, d, t.id())));
    }
    // n1*d_sigma differs from n1*d by an element of A, so it lies in G. When it
    // is outside A_sigma, its order n2 > 1 modulo A puts n2*n1*d_sigma in
    // n2 G and A_sigma but not in n2 A_sigma.
    const AmbientElement witness = Rational(n1) * project(spec, d, sigma);
    return in_scaled_A_tau(spec, witness, sigma, 1);
}

}  // namespace crq
