#pragma once

/**
 * @file tables.hpp
 * @brief Multiplication tables on an A-basis and the decision whether a table
 *        defines a multiplication on G.
 *
 * A table assigns to every type tau and every pair of slots (i, j) the product
 * e_i^(tau) x e_j^(tau), an element of the tau-block of the hull. Products of
 * different blocks are zero and are not stored. Absent blocks are zero.
 *
 * The block groups M0 / M1 / M2 are checked entrywise over A_tau:
 *
 *          | m^2 A   m A  ...  m A |
 *     M2 = | m A     A    ...  A   |        M1: same, corner m A
 *          | ...                   |        M0: every entry in A
 *
 * and membership in M(d, E_0) = <X, M2> is reduced to one congruence per
 * clipped type on the slot-0 coordinate of the corner entry, solved jointly
 * by CRT.
 */

#include "crq/elements.hpp"
#include "crq/exactnum.hpp"
#include "crq/group.hpp"
#include "crq/random.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crq {

class TableBlock {
public:
    explicit TableBlock(std::size_t rank = 0);

    std::size_t rank() const { return rank_; }
    const Coords& at(std::size_t i, std::size_t j) const { return entries_.at(i * rank_ + j); }
    Coords& at(std::size_t i, std::size_t j) { return entries_.at(i * rank_ + j); }
    bool is_zero() const;

    friend bool operator==(const TableBlock&, const TableBlock&) = default;

private:
    std::size_t rank_;
    std::vector<Coords> entries_;
};

class MultTable {
public:
    MultTable() = default;

    const std::map<std::string, TableBlock>& blocks() const { return blocks_; }
    const TableBlock* block(const std::string& type) const;

    /// Sets u_ij^(tau); the block is created with the spec's rank when absent.
    void set(const GroupSpec& spec, const std::string& type, std::size_t i, std::size_t j, Coords value);
    /// u_ij^(tau), zero when the block is absent.
    Coords get(const GroupSpec& spec, const std::string& type, std::size_t i, std::size_t j) const;

    /// Inserts a whole block (used by the parser); zero blocks are dropped.
    void put_block(const std::string& type, TableBlock block);

    MultTable& operator+=(const MultTable& o);
    MultTable& operator-=(const MultTable& o);
    MultTable& operator*=(const Rational& c);

    friend MultTable operator+(MultTable a, const MultTable& b) { return a += b; }
    friend MultTable operator-(MultTable a, const MultTable& b) { return a -= b; }
    friend MultTable operator*(const Rational& c, MultTable a) { return a *= c; }

    friend bool operator==(const MultTable&, const MultTable&) = default;

private:
    void drop_zero_blocks();
    std::map<std::string, TableBlock> blocks_;
};

/// Throws DomainError on unknown types or rank mismatches.
void check_table_shape(const GroupSpec& spec, const MultTable& table);

struct EntryLocation {
    std::string type;
    std::size_t row = 0;
    std::size_t col = 0;

    friend bool operator==(const EntryLocation&, const EntryLocation&) = default;
};

/// Entries that do not lie in A_tau (the table is not over A).
std::vector<EntryLocation> entries_outside_A(const GroupSpec& spec, const MultTable& table);

bool in_M0(const GroupSpec& spec, const MultTable& table);
bool in_M1(const GroupSpec& spec, const MultTable& table);
bool in_M2(const GroupSpec& spec, const MultTable& table);

/// X(d, E_0): corner m_tau * s_tau^{-1} * e_0^(tau) per clipped type, with the
/// least nonnegative inverse.
MultTable generator_x(const GroupSpec& spec);

/// X with caller-chosen inverses; each must be inverse to s_tau modulo m_tau.
MultTable generator_x(const GroupSpec& spec, const std::map<std::string, Integer>& inverses);

enum class FailureKind {
    BorderNotInMA,         ///< row/column 0 entry outside m A_tau
    CornerNotInCoset,      ///< a slot >= 1 coordinate of u_00 / m outside m R_tau
    CongruenceInconsistent ///< the per-type residues admit no common alpha
};

std::string to_string(FailureKind kind);

struct MembershipFailure {
    FailureKind kind;
    std::string type;
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t coord = 0;
    std::string detail;
};

struct MembershipVerdict {
    bool member = false;
    std::optional<Congruence> alpha;  ///< modulus is the regulator index n
    std::optional<MembershipFailure> failure;
    /// The per-type residues alpha_tau (mod m_tau) that fed the CRT step.
    std::map<std::string, Congruence> residues;
};

/// Whether the table lies in M(d, E_0). Throws DomainError for a table that
/// is not over A or is misshaped.
MembershipVerdict decide_membership(const GroupSpec& spec, const MultTable& table);

/// The bilinear extension of a table to the whole hull.
class ProductEvaluator {
public:
    ProductEvaluator(GroupSpec spec, MultTable table);

    AmbientElement operator()(const AmbientElement& g, const AmbientElement& h) const;

private:
    GroupSpec spec_;
    MultTable table_;
};

ProductEvaluator build_product(const GroupSpec& spec, const MultTable& table);

struct ClosureResult {
    bool closes = false;
    /// k with d x d in k d + A, found by scanning k in [0, n).
    std::optional<Integer> square_coefficient;
    std::string failure;
};

/// Direct subring test: d x d in G, d x e_i and e_i x d in A, e_i x e_j in A.
ClosureResult closure_analysis(const GroupSpec& spec, const MultTable& table);

bool closure_oracle(const GroupSpec& spec, const MultTable& table);

/// u_0j and u_j0 lie in m_tau A_tau for every clipped tau and every slot j.
bool remark23_check(const GroupSpec& spec, const MultTable& table);

enum class TableStratum {
    Regulator,          ///< M2
    GeneratorCoset,     ///< alpha X + M2
    BrokenCongruence,   ///< M1 outside M(d, E_0)
    OutsideM1,          ///< M0 outside M1
};

std::string to_string(TableStratum stratum);

/// Random table from a stratum, nullopt when the stratum is empty for the
/// spec (the last two need a clipped type).
std::optional<MultTable> random_table(const GroupSpec& spec, TableStratum stratum, Rng& rng);

}  // namespace crq
