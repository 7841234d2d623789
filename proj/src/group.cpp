#include "crq/group.hpp"

#include "crq/random.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace crq {

const CriticalTypeData* GroupSpec::find(const std::string& id) const
{
    for (const auto& t : types) {
        if (t.id() == id) return &t;
    }
    return nullptr;
}

const CriticalTypeData& GroupSpec::at(const std::string& id) const
{
    const auto* t = find(id);
    if (t == nullptr) throw DomainError("unknown type id '" + id + "'");
    return *t;
}

std::vector<std::string> GroupSpec::clipped_types() const
{
    std::vector<std::string> ids;
    for (const auto& t : types) {
        if (t.clipped()) ids.push_back(t.id());
    }
    return ids;
}

void GroupSpec::canonicalize()
{
    std::stable_sort(types.begin(), types.end(),
                     [](const CriticalTypeData& a, const CriticalTypeData& b) { return a.id() < b.id(); });
}

std::string to_string(ViolationCode code)
{
    switch (code) {
    case ViolationCode::DuplicateType: return "DUPLICATE_TYPE";
    case ViolationCode::ComparableTypes: return "COMPARABLE_TYPES";
    case ViolationCode::MNotP0: return "M_NOT_P0";
    case ViolationCode::SNotP0: return "S_NOT_P0";
    case ViolationCode::SMNotCoprime: return "S_M_NOT_COPRIME";
    case ViolationCode::ConditionMFailed: return "CONDITION_M_FAILED";
    case ViolationCode::RankZero: return "RANK_ZERO";
    }
    return "UNKNOWN";
}

namespace {

std::vector<Violation> check(const GroupSpec& spec, bool with_condition_m)
{
    std::vector<Violation> out;

    std::set<std::string> seen;
    for (const auto& t : spec.types) {
        if (!seen.insert(t.id()).second) {
            out.push_back({ViolationCode::DuplicateType, {t.id()}, "type id '" + t.id() + "' appears more than once"});
        }
    }

    for (std::size_t i = 0; i < spec.types.size(); ++i) {
        for (std::size_t j = i + 1; j < spec.types.size(); ++j) {
            const auto& a = spec.types[i].type;
            const auto& b = spec.types[j].type;
            if (a.id == b.id) continue;
            if (a.inf_primes.is_subset_of(b.inf_primes) || b.inf_primes.is_subset_of(a.inf_primes)) {
                out.push_back({ViolationCode::ComparableTypes, {a.id, b.id},
                               "types '" + a.id + "' and '" + b.id + "' are comparable"});
            }
        }
    }

    bool all_m_positive = true;
    for (const auto& t : spec.types) {
        if (t.rank == 0) {
            out.push_back({ViolationCode::RankZero, {t.id()}, "type '" + t.id() + "' has rank 0"});
        }
        bool m_ok = t.m >= 1 && t.type.is_p0_integer(t.m);
        if (!m_ok) {
            all_m_positive = all_m_positive && t.m >= 1;
            out.push_back({ViolationCode::MNotP0, {t.id()},
                           "m = " + t.m.get_str() + " of type '" + t.id() + "' is not a positive P0-integer"});
        }
        if (t.s == 0 || !t.type.is_p0_integer(t.s)) {
            out.push_back({ViolationCode::SNotP0, {t.id()},
                           "s = " + t.s.get_str() + " of type '" + t.id() + "' is not a P0-integer"});
        }
        if (t.m >= 1 && gcd(t.s, t.m) != 1) {
            out.push_back({ViolationCode::SMNotCoprime, {t.id()},
                           "gcd(s, m) != 1 for type '" + t.id() + "'"});
        }
    }

    if (with_condition_m && all_m_positive) {
        std::map<std::size_t, Integer> ms;
        for (std::size_t i = 0; i < spec.types.size(); ++i) ms.emplace(i, spec.types[i].m);
        if (!condition_m_check(ms)) {
            std::vector<std::string> culprits;
            for (std::size_t i = 0; i < spec.types.size(); ++i) {
                Integer others = 1;
                for (std::size_t j = 0; j < spec.types.size(); ++j) {
                    if (j != i) others = lcm(others, spec.types[j].m);
                }
                if (others % spec.types[i].m != 0) culprits.push_back(spec.types[i].id());
            }
            out.push_back({ViolationCode::ConditionMFailed, culprits, "the invariants m_tau fail condition (m)"});
        }
    }
    return out;
}

}  // namespace

std::vector<Violation> validate_spec(const GroupSpec& spec)
{
    return check(spec, true);
}

std::vector<Violation> validate_shape(const GroupSpec& spec)
{
    return check(spec, false);
}

void require_valid(const GroupSpec& spec)
{
    auto violations = validate_spec(spec);
    if (violations.empty()) return;
    std::ostringstream os;
    os << "invalid group spec:";
    for (const auto& v : violations) os << ' ' << to_string(v.code) << " (" << v.message << ')';
    throw DomainError(os.str());
}

Integer regulator_index(const GroupSpec& spec)
{
    std::vector<Integer> ms;
    ms.reserve(spec.types.size());
    for (const auto& t : spec.types) ms.push_back(t.m);
    return lcm_all(ms);
}

MainDecomposition main_decomposition(const GroupSpec& spec)
{
    MainDecomposition dec;
    for (const auto& t : spec.types) {
        if (t.clipped()) {
            dec.clipped.push_back(t.id());
            dec.complement[t.id()] = t.rank - 1;
        } else {
            dec.complement[t.id()] = t.rank;
        }
    }
    return dec;
}

namespace {

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

}  // namespace

GroupSpec random_spec(std::uint64_t seed, const GenerationBounds& bounds)
{
    if (bounds.max_types < 1 || bounds.max_rank < 1 || bounds.max_m < 1) {
        throw GenerationError("generation bounds must be positive");
    }
    if (bounds.max_types == 1 && bounds.max_m > 1) {
        throw GenerationError("a single type cannot carry m > 1 under condition (m); use max_m = 1");
    }
    std::vector<std::uint64_t> pool = bounds.prime_pool;
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (auto p : pool) {
        if (!is_prime(p)) throw GenerationError("prime pool contains non-prime " + std::to_string(p));
    }
    if (pool.size() < bounds.max_types) {
        throw GenerationError("prime pool needs at least max_types primes");
    }

    Rng rng(seed);
    const std::size_t lo = std::min<std::size_t>(2, bounds.max_types);
    const auto count = static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(lo),
                                                          static_cast<std::int64_t>(bounds.max_types)));

    // Fisher-Yates with our own draws for reproducibility.
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
    std::vector<std::uint64_t> distinguishing(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    std::vector<std::uint64_t> extras(pool.begin() + static_cast<std::ptrdiff_t>(count), pool.end());

    GroupSpec spec;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint64_t> inf = {distinguishing[i]};
        for (auto p : extras) {
            if (rng.chance(1, 4)) inf.push_back(p);
        }
        CriticalTypeData t;
        t.type = IdempotentType{"t" + std::to_string(i + 1), PrimeSet(inf)};
        t.rank = 1 + rng.below(bounds.max_rank);
        spec.types.push_back(std::move(t));
    }

    // Every prime power is handed to at least two types at once, which keeps
    // condition (m) true after each step.
    const auto m_primes = primes_up_to(bounds.max_m);
    if (!m_primes.empty() && count >= 2) {
        const auto attempts = 1 + rng.below(4);
        for (std::uint64_t a = 0; a < attempts; ++a) {
            const auto p = m_primes[rng.below(m_primes.size())];
            std::uint64_t max_e = 0;
            for (std::uint64_t q = p; q <= bounds.max_m; q *= p) ++max_e;
            const auto e = 1 + rng.below(max_e);
            const Integer q = pow(Integer(p), e);

            std::vector<std::size_t> admissible;
            for (std::size_t i = 0; i < count; ++i) {
                if (!spec.types[i].type.inf_primes.contains(p)) admissible.push_back(i);
            }
            if (admissible.size() < 2) continue;
            for (std::size_t i = admissible.size(); i > 1; --i) std::swap(admissible[i - 1], admissible[rng.below(i)]);
            const auto take = 2 + rng.below(admissible.size() - 1);
            admissible.resize(take);

            bool fits = true;
            for (auto i : admissible) fits = fits && lcm(spec.types[i].m, q) <= bounds.max_m;
            if (!fits) continue;
            for (auto i : admissible) spec.types[i].m = lcm(spec.types[i].m, q);
        }
    }

    for (auto& t : spec.types) {
        t.s = 1;
        if (!t.clipped()) continue;
        const auto bound = static_cast<std::int64_t>(3 * t.m.get_ui());
        for (int tries = 0; tries < 64; ++tries) {
            Integer s = rng.range(-bound, bound);
            if (s != 0 && gcd(s, t.m) == 1 && t.type.is_p0_integer(s)) {
                t.s = s;
                break;
            }
        }
    }
    spec.canonicalize();
    return spec;
}

}  // namespace crq
