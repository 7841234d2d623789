#pragma once

/**
 * @file group.hpp
 * @brief Symbolic description of a reduced block-rigid CRQ-group of ring type.
 *
 * A group G = <d, A> is stored through its critical types. Each type is an
 * idempotent type, identified with its finite set of infinity-primes, so the
 * rank-one summand R_tau is Z localized at those primes. Per type we keep the
 * rank n_tau, the near-isomorphism invariant m_tau and the numerator s_tau of
 * the standard representation d = sum (s_tau / m_tau) e_0^(tau).
 *
 * Slot 0 of a type with m_tau > 1 is the clipped basis element e_0^(tau);
 * the remaining slots span the completely decomposable complement.
 */

#include "crq/exactnum.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace crq {

struct IdempotentType {
    std::string id;
    PrimeSet inf_primes;

    /// x (nonzero) has no factor in P_inf(tau).
    bool is_p0_integer(const Integer& x) const { return is_coprime_to_all(x, inf_primes); }
    /// Every prime factor of x (nonzero) lies in P_inf(tau), i.e. x is a unit of R_tau.
    bool is_pinf_integer(const Integer& x) const { return is_p_integer(x, inf_primes); }
    /// q lies in R_tau.
    bool in_ring(const Rational& q) const { return q.is_zero() || is_pinf_integer(q.den()); }

    friend bool operator==(const IdempotentType&, const IdempotentType&) = default;
};

struct CriticalTypeData {
    IdempotentType type;
    std::uint64_t rank = 1;
    Integer m = 1;
    Integer s = 1;

    const std::string& id() const { return type.id; }
    bool clipped() const { return m > 1; }

    friend bool operator==(const CriticalTypeData&, const CriticalTypeData&) = default;
};

/**
 * Candidate group description. Nothing is enforced on construction; use
 * validate_spec() before handing a candidate to operations that assume a
 * group in the class.
 */
struct GroupSpec {
    std::vector<CriticalTypeData> types;

    const CriticalTypeData* find(const std::string& id) const;
    /// Throws DomainError for an unknown id.
    const CriticalTypeData& at(const std::string& id) const;

    /// T_0 = { tau : m_tau > 1 } in storage order.
    std::vector<std::string> clipped_types() const;

    /// Sorts the types by id (the canonical storage order).
    void canonicalize();

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

enum class ViolationCode {
    DuplicateType,
    ComparableTypes,
    MNotP0,
    SNotP0,
    SMNotCoprime,
    ConditionMFailed,
    RankZero,
};

std::string to_string(ViolationCode code);

struct Violation {
    ViolationCode code;
    std::vector<std::string> types;  ///< offending type ids, may be empty
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violated rule, empty when the candidate describes a group in the class.
std::vector<Violation> validate_spec(const GroupSpec& spec);

/// Same as validate_spec() but the condition (m) rule is skipped. Used for the
/// purity analysis, which inspects candidates that may fail (m).
std::vector<Violation> validate_shape(const GroupSpec& spec);

/// Throws DomainError listing the violations when the spec is invalid.
void require_valid(const GroupSpec& spec);

/// n = lcm of all m_tau.
Integer regulator_index(const GroupSpec& spec);

struct MainDecomposition {
    std::vector<std::string> clipped;                   ///< T_0, each with slot 0
    std::map<std::string, std::uint64_t> complement;    ///< k_tau per type

    friend bool operator==(const MainDecomposition&, const MainDecomposition&) = default;
};

MainDecomposition main_decomposition(const GroupSpec& spec);

struct GenerationBounds {
    std::size_t max_types = 3;
    std::uint64_t max_rank = 3;
    std::uint64_t max_m = 36;
    /// Primes used as infinity-primes of the generated types.
    std::vector<std::uint64_t> prime_pool = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
};

/// Raised when random_spec() is asked for an unreachable configuration.
class GenerationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic pseudo-random valid spec.
GroupSpec random_spec(std::uint64_t seed, const GenerationBounds& bounds);

}  // namespace crq
