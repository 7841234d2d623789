#include "crq/tables.hpp"

#include <algorithm>
#include <stdexcept>

namespace crq {

TableBlock::TableBlock(std::size_t rank) : rank_(rank), entries_(rank * rank, Coords(rank)) {}

bool TableBlock::is_zero() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const Coords& c) {
        return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q.is_zero(); });
    });
}

const TableBlock* MultTable::block(const std::string& type) const
{
    auto it = blocks_.find(type);
    return it == blocks_.end() ? nullptr : &it->second;
}

void MultTable::set(const GroupSpec& spec, const std::string& type, std::size_t i, std::size_t j, Coords value)
{
    const auto rank = spec.at(type).rank;
    if (i >= rank || j >= rank || value.size() != rank) throw DomainError("table entry out of shape");
    auto [it, inserted] = blocks_.try_emplace(type, TableBlock(rank));
    it->second.at(i, j) = std::move(value);
    drop_zero_blocks();
}

Coords MultTable::get(const GroupSpec& spec, const std::string& type, std::size_t i, std::size_t j) const
{
    const auto rank = spec.at(type).rank;
    if (i >= rank || j >= rank) throw DomainError("table index out of range");
    const auto* b = block(type);
    return b == nullptr ? Coords(rank) : b->at(i, j);
}

void MultTable::put_block(const std::string& type, TableBlock block)
{
    blocks_[type] = std::move(block);
    drop_zero_blocks();
}

void MultTable::drop_zero_blocks()
{
    std::erase_if(blocks_, [](const auto& kv) { return kv.second.is_zero(); });
}

MultTable& MultTable::operator+=(const MultTable& o)
{
    for (const auto& [type, other] : o.blocks_) {
        auto [it, inserted] = blocks_.try_emplace(type, TableBlock(other.rank()));
        auto& mine = it->second;
        if (mine.rank() != other.rank()) throw DomainError("table rank mismatch for type '" + type + "'");
        for (std::size_t i = 0; i < mine.rank(); ++i) {
            for (std::size_t j = 0; j < mine.rank(); ++j) {
                for (std::size_t c = 0; c < mine.rank(); ++c) mine.at(i, j)[c] += other.at(i, j)[c];
            }
        }
    }
    drop_zero_blocks();
    return *this;
}

MultTable& MultTable::operator-=(const MultTable& o)
{
    return *this += Rational(-1) * o;
}

MultTable& MultTable::operator*=(const Rational& c)
{
    for (auto& [type, b] : blocks_) {
        for (std::size_t i = 0; i < b.rank(); ++i) {
            for (std::size_t j = 0; j < b.rank(); ++j) {
                for (auto& q : b.at(i, j)) q *= c;
            }
        }
    }
    drop_zero_blocks();
    return *this;
}

void check_table_shape(const GroupSpec& spec, const MultTable& table)
{
    for (const auto& [type, b] : table.blocks()) {
        const auto& t = spec.at(type);
        if (b.rank() != t.rank) {
            throw DomainError("table block '" + type + "' has order " + std::to_string(b.rank()) +
                              ", rank is " + std::to_string(t.rank));
        }
    }
}

std::vector<EntryLocation> entries_outside_A(const GroupSpec& spec, const MultTable& table)
{
    check_table_shape(spec, table);
    std::vector<EntryLocation> out;
    for (const auto& [type, b] : table.blocks()) {
        const auto& t = spec.at(type).type;
        for (std::size_t i = 0; i < b.rank(); ++i) {
            for (std::size_t j = 0; j < b.rank(); ++j) {
                if (!coords_in_scaled_ring(t, b.at(i, j), 1)) out.push_back({type, i, j});
            }
        }
    }
    return out;
}

namespace {

/// Entrywise scale required by M0 (power 0, no scaling), M1 (border and
/// corner m) or M2 (border m, corner m^2).
bool in_scaled_group(const GroupSpec& spec, const MultTable& table, unsigned corner_power)
{
    check_table_shape(spec, table);
    for (const auto& [type, b] : table.blocks()) {
        const auto& t = spec.at(type);
        for (std::size_t i = 0; i < b.rank(); ++i) {
            for (std::size_t j = 0; j < b.rank(); ++j) {
                Integer scale = 1;
                if (t.clipped() && corner_power > 0) {
                    if (i == 0 && j == 0) scale = pow(t.m, corner_power);
                    else if (i == 0 || j == 0) scale = t.m;
                }
                if (!coords_in_scaled_ring(t.type, b.at(i, j), scale)) return false;
            }
        }
    }
    return true;
}

}  // namespace

bool in_M0(const GroupSpec& spec, const MultTable& table)
{
    return in_scaled_group(spec, table, 0);
}

bool in_M1(const GroupSpec& spec, const MultTable& table)
{
    return in_scaled_group(spec, table, 1);
}

bool in_M2(const GroupSpec& spec, const MultTable& table)
{
    return in_scaled_group(spec, table, 2);
}

MultTable generator_x(const GroupSpec& spec)
{
    return generator_x(spec, {});
}

MultTable generator_x(const GroupSpec& spec, const std::map<std::string, Integer>& inverses)
{
    MultTable x;
    for (const auto& t : spec.types) {
        if (!t.clipped()) continue;
        Integer inv;
        if (auto it = inverses.find(t.id()); it != inverses.end()) {
            inv = it->second;
            if (mod_floor(inv * t.s, t.m) != 1) {
                throw DomainError("supplied inverse for '" + t.id() + "' is not inverse to s modulo m");
            }
        } else {
            inv = mod_inverse(t.s, t.m);
        }
        Coords corner(t.rank);
        corner[0] = Rational(t.m * inv);
        x.set(spec, t.id(), 0, 0, std::move(corner));
    }
    return x;
}

std::string to_string(FailureKind kind)
{
    switch (kind) {
    case FailureKind::BorderNotInMA: return "BORDER_NOT_IN_M_A";
    case FailureKind::CornerNotInCoset: return "CORNER_NOT_IN_COSET";
    case FailureKind::CongruenceInconsistent: return "CONGRUENCE_INCONSISTENT";
    }
    return "UNKNOWN";
}

MembershipVerdict decide_membership(const GroupSpec& spec, const MultTable& table)
{
    if (auto bad = entries_outside_A(spec, table); !bad.empty()) {
        const auto& e = bad.front();
        throw DomainError("table entry (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") of type '" +
                          e.type + "' is not in A_tau");
    }

    MembershipVerdict verdict;
    std::vector<Congruence> congruences;
    for (const auto& t : spec.types) {
        if (!t.clipped()) continue;
        const auto* b = table.block(t.id());
        if (b == nullptr) {
            verdict.residues[t.id()] = {0, t.m};
            congruences.push_back({0, t.m});
            continue;
        }
        for (std::size_t j = 0; j < t.rank; ++j) {
            for (auto [row, col] : {std::pair{std::size_t{0}, j}, std::pair{j, std::size_t{0}}}) {
                const auto& entry = b->at(row, col);
                for (std::size_t c = 0; c < entry.size(); ++c) {
                    if (!t.type.in_ring(entry[c] / Rational(t.m))) {
                        verdict.failure = MembershipFailure{FailureKind::BorderNotInMA, t.id(), row, col, c,
                                                            "coordinate " + entry[c].str() + " not in m R_tau, m = " +
                                                                t.m.get_str()};
                        return verdict;
                    }
                }
            }
        }
        // u_00 = m v; need v in alpha s^{-1} e_0 + m A_tau.
        const auto& corner = b->at(0, 0);
        const Rational m(t.m);
        for (std::size_t c = 1; c < corner.size(); ++c) {
            const Rational v = corner[c] / m;
            if (!t.type.in_ring(v / m)) {
                verdict.failure = MembershipFailure{FailureKind::CornerNotInCoset, t.id(), 0, 0, c,
                                                    "u_00/m has coordinate " + v.str() + " outside m R_tau"};
                return verdict;
            }
        }
        const Integer v0 = rational_mod(corner[0] / m, t.m);
        Congruence residue{mod_floor(v0 * t.s, t.m), t.m};
        verdict.residues[t.id()] = residue;
        congruences.push_back(residue);
    }

    auto alpha = crt_solve(congruences);
    if (!alpha) {
        verdict.failure = MembershipFailure{FailureKind::CongruenceInconsistent, "", 0, 0, 0,
                                            "per-type corner residues admit no common alpha"};
        return verdict;
    }
    verdict.member = true;
    verdict.alpha = alpha;

    if (!in_M2(spec, table - Rational(alpha->residue) * generator_x(spec))) {
        throw std::logic_error("decide_membership: reconstruction U - alpha X is not in M2");
    }
    return verdict;
}

ProductEvaluator::ProductEvaluator(GroupSpec spec, MultTable table) : spec_(std::move(spec)), table_(std::move(table))
{
    check_table_shape(spec_, table_);
}

AmbientElement ProductEvaluator::operator()(const AmbientElement& g, const AmbientElement& h) const
{
    check_shape(spec_, g);
    check_shape(spec_, h);
    std::map<std::string, Coords> out;
    for (const auto& [type, gc] : g.blocks()) {
        const auto* hc = h.block(type);
        const auto* u = table_.block(type);
        if (hc == nullptr || u == nullptr) continue;
        Coords acc(gc.size());
        for (std::size_t i = 0; i < gc.size(); ++i) {
            if (gc[i].is_zero()) continue;
            for (std::size_t j = 0; j < hc->size(); ++j) {
                if ((*hc)[j].is_zero()) continue;
                const Rational coeff = gc[i] * (*hc)[j];
                const auto& e = u->at(i, j);
                for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += coeff * e[c];
            }
        }
        out.emplace(type, std::move(acc));
    }
    return AmbientElement(std::move(out));
}

ProductEvaluator build_product(const GroupSpec& spec, const MultTable& table)
{
    return ProductEvaluator(spec, table);
}

ClosureResult closure_analysis(const GroupSpec& spec, const MultTable& table)
{
    ClosureResult result;
    if (auto bad = entries_outside_A(spec, table); !bad.empty()) {
        result.failure = "e_i x e_j outside A for type '" + bad.front().type + "'";
        return result;
    }
    const auto mul = build_product(spec, table);
    const AmbientElement d = element_d(spec);

    auto square = in_G_by_scan(spec, mul(d, d));
    if (!square) {
        result.failure = "d x d is not in G";
        return result;
    }
    result.square_coefficient = square->k;

    for (const auto& t : spec.types) {
        for (std::size_t i = 0; i < t.rank; ++i) {
            const auto e = AmbientElement::basis(t.id(), t.rank, i);
            if (!in_scaled_A_tau(spec, mul(d, e), t.id(), 1) || !in_scaled_A_tau(spec, mul(e, d), t.id(), 1)) {
                result.failure = "d x e_" + std::to_string(i) + " or e_" + std::to_string(i) + " x d not in A for '" +
                                 t.id() + "'";
                return result;
            }
        }
    }
    result.closes = true;
    return result;
}

bool closure_oracle(const GroupSpec& spec, const MultTable& table)
{
    return closure_analysis(spec, table).closes;
}

bool remark23_check(const GroupSpec& spec, const MultTable& table)
{
    check_table_shape(spec, table);
    for (const auto& t : spec.types) {
        if (!t.clipped()) continue;
        const auto* b = table.block(t.id());
        if (b == nullptr) continue;
        for (std::size_t j = 0; j < t.rank; ++j) {
            if (!coords_in_scaled_ring(t.type, b->at(0, j), t.m) || !coords_in_scaled_ring(t.type, b->at(j, 0), t.m)) {
                return false;
            }
        }
    }
    return true;
}

std::string to_string(TableStratum stratum)
{
    switch (stratum) {
    case TableStratum::Regulator: return "M2";
    case TableStratum::GeneratorCoset: return "alphaX+M2";
    case TableStratum::BrokenCongruence: return "M1-broken-congruence";
    case TableStratum::OutsideM1: return "M0-outside-M1";
    }
    return "UNKNOWN";
}

namespace {

/// Random element of R_tau: small numerator over a product of infinity-primes.
Rational random_ring_element(const IdempotentType& type, Rng& rng)
{
    Integer num = rng.range(-6, 6);
    Integer den = 1;
    const auto primes = type.inf_primes.primes();
    if (!primes.empty()) {
        for (int k = 0; k < 2; ++k) {
            if (rng.chance(1, 3)) den *= primes[rng.below(primes.size())];
        }
    }
    return Rational(num, den);
}

MultTable random_regulator_table(const GroupSpec& spec, Rng& rng)
{
    MultTable u;
    for (const auto& t : spec.types) {
        TableBlock b(t.rank);
        for (std::size_t i = 0; i < t.rank; ++i) {
            for (std::size_t j = 0; j < t.rank; ++j) {
                if (rng.chance(1, 3)) continue;
                Integer scale = 1;
                if (t.clipped()) {
                    if (i == 0 && j == 0) scale = t.m * t.m;
                    else if (i == 0 || j == 0) scale = t.m;
                }
                for (auto& c : b.at(i, j)) c = Rational(scale) * random_ring_element(t.type, rng);
            }
        }
        u.put_block(t.id(), std::move(b));
    }
    return u;
}

}  // namespace

std::optional<MultTable> random_table(const GroupSpec& spec, TableStratum stratum, Rng& rng)
{
    const auto clipped = spec.clipped_types();
    if ((stratum == TableStratum::BrokenCongruence || stratum == TableStratum::OutsideM1) && clipped.empty()) {
        return std::nullopt;
    }

    MultTable u = random_regulator_table(spec, rng);
    if (stratum == TableStratum::Regulator) return u;

    const Integer n = regulator_index(spec);
    const Integer alpha = static_cast<long>(rng.below(n.get_ui()));
    u += Rational(alpha) * generator_x(spec);
    if (stratum == TableStratum::GeneratorCoset) return u;

    const auto& t = spec.at(clipped[rng.below(clipped.size())]);
    Coords delta(t.rank);
    if (stratum == TableStratum::BrokenCongruence) {
        // Either shift one type's corner residue (condition (m) makes the CRT
        // system inconsistent) or put an unscaled off-slot coordinate in u_00/m.
        if (t.rank >= 2 && rng.chance(1, 2)) {
            delta[1 + rng.below(t.rank - 1)] = Rational(t.m);
        } else {
            const auto shift = 1 + rng.below(t.m.get_ui() - 1);
            delta[0] = Rational(t.m * static_cast<unsigned long>(shift));
        }
        auto corner = u.get(spec, t.id(), 0, 0);
        for (std::size_t c = 0; c < t.rank; ++c) corner[c] += delta[c];
        u.set(spec, t.id(), 0, 0, std::move(corner));
        return u;
    }

    // OutsideM1: an entry of row or column 0 gets a coordinate outside m R_tau.
    const std::size_t j = rng.below(t.rank);
    const bool row = rng.chance(1, 2);
    const std::size_t r = row ? 0 : j;
    const std::size_t c = row ? j : 0;
    auto entry = u.get(spec, t.id(), r, c);
    entry[rng.below(t.rank)] += Rational(1);
    u.set(spec, t.id(), r, c, std::move(entry));
    return u;
}

}  // namespace crq
