#pragma once

/**
 * @file multgroup.hpp
 * @brief Structure of the multiplication group Mult G.
 *
 * Mult G is again a block-rigid CRQ-group of ring type, so it is returned
 * in the same data shape as G: same critical types, ranks cubed, the same
 * invariants m_tau, and standard-representation numerators equal to
 * P0-integer inverses of s_tau modulo m_tau. The regulator is M2; the clipped
 * part of the main decomposition is spanned by the corner elements
 * E_0^(tau) = m_tau^2 e_0^(tau) placed at entry (0, 0).
 */

#include "crq/group.hpp"
#include "crq/tables.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace crq {

/// Rank accounting of one block M2_tau of the regulator of Mult G. The block
/// is an n x n matrix of A_tau entries, so the four parts below sum to n^3.
struct RegulatorBlock {
    std::string type;
    std::uint64_t source_rank = 0;   ///< n_tau of G
    Integer corner_scale = 1;        ///< m^2 on the (0,0) entry
    Integer border_scale = 1;        ///< m on the rest of row and column 0
    std::uint64_t corner_clipped = 0;   ///< slot-0 coordinate of the corner (rank of K_tau)
    std::uint64_t corner_free = 0;      ///< other coordinates of the corner
    std::uint64_t border = 0;           ///< coordinates of row/column 0 off the corner
    std::uint64_t interior = 0;         ///< coordinates of the remaining entries

    std::uint64_t total() const { return corner_clipped + corner_free + border + interior; }
};

struct MultGroupDescriptor {
    GroupSpec source;                 ///< G
    GroupSpec spec;                   ///< Mult G in spec form
    std::vector<RegulatorBlock> regulator;
    MainDecomposition decomposition;  ///< M' (+) M'' of Mult G
    /// s'_tau for tau in T_0: the X coefficient is s'_tau / m_tau on E_0^(tau).
    std::map<std::string, Integer> generator_numerators;
};

/// Raised by iterate_mult() when a rank passes the configured bound.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

MultGroupDescriptor compute_mult_group(const GroupSpec& spec);

/// E_0^(tau) as a table over G: m_tau^2 e_0^(tau) at (0,0).
MultTable basis_table(const MultGroupDescriptor& desc, const std::string& type);

/// X = sum (s'_tau / m_tau) E_0^(tau) materialized as a table over G.
MultTable generator_table(const MultGroupDescriptor& desc);

/// k-fold application of Mult. Ranks become n_tau^(3^k); only the spec-level
/// data is carried, no tables are built.
MultGroupDescriptor iterate_mult(const GroupSpec& spec, unsigned k, std::uint64_t max_rank = 1'000'000'000'000ULL);

struct CosetSample {
    std::string stratum;
    bool member_d = false;    ///< verdict under (d, E_0)
    bool member_d1 = false;   ///< verdict under (d1, E_0)
    bool alpha_relation_ok = true;  ///< alpha_1 == gamma * alpha_2 (mod n) when both are members
};

struct CosetReport {
    bool applicable = false;
    std::string reason;        ///< why d1 leaves D(E_0), when not applicable
    Integer gamma;
    Integer gamma_inverse;     ///< inverse of gamma modulo n
    GroupSpec shifted;         ///< presentation by d1 = gamma d + b
    MultTable witness;         ///< X1 - gamma^{-1} X2
    bool witness_in_M2 = false;
    std::vector<CosetSample> samples;
    bool verdicts_agree = false;

    bool confirmed() const { return applicable && witness_in_M2 && verdicts_agree; }
};

/**
 * Passing from d to d1 = gamma d + b, b = sum b_tau e_0^(tau) in B. Checks that
 * the two generators differ by gamma^{-1} modulo M2 and that membership
 * verdicts on sampled tables agree. Throws DomainError when gcd(gamma, n) != 1
 * or b is not supported on slot 0 of clipped types with R_tau coefficients.
 */
CosetReport coset_relation(const GroupSpec& spec, const Integer& gamma, const AmbientElement& b,
                           std::uint64_t seed = 1, std::size_t samples = 24);

struct Example27Row {
    Integer alpha;
    bool member_E = false;   ///< verdict w.r.t. E_0 = {e1, e2}
    bool member_F = false;   ///< verdict w.r.t. F_0 = {f1, f2}
};

struct Example27Report {
    Integer s1, s2, m;
    GroupSpec spec_E;   ///< presentation d = (s1/m) e1 + (s2/m) e2
    GroupSpec spec_F;   ///< presentation d1 = (1/m) f1 + (1/m) f2
    bool f_basis_valid = false;          ///< s_i + m is a unit of R_i
    bool d1_matches = false;             ///< d + e1 + e2 == (1/m) f1 + (1/m) f2
    std::vector<Example27Row> from_E;    ///< tables built in alpha X_E + M2
    std::vector<Example27Row> from_F;    ///< tables built in beta X_F + M2
    bool regulator_in_both = false;      ///< sampled M2 tables are members for both bases
    bool confirmed = false;
};

/// Two-type rank-one group of the cross-basis construction; verifies that the
/// memberships for E_0 and F_0 intersect exactly in M2.
Example27Report example_2_7(const Integer& s1, const Integer& s2, const Integer& m);

}  // namespace crq
