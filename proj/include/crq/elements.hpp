#pragma once

/**
 * @file elements.hpp
 * @brief Elements of the divisible hull and membership in A_tau, A and G.
 *
 * An element is a finite map from type id to a coordinate vector over the
 * basis e_0^(tau), ..., e_{n_tau - 1}^(tau). Zero blocks are never stored, so
 * structural equality is element equality.
 */

#include "crq/exactnum.hpp"
#include "crq/group.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crq {

using Coords = std::vector<Rational>;

class AmbientElement {
public:
    AmbientElement() = default;
    explicit AmbientElement(std::map<std::string, Coords> blocks);

    /// v * e_slot^(tau) in a block of length rank.
    static AmbientElement basis(const std::string& type, std::size_t rank, std::size_t slot,
                                const Rational& coefficient = 1);

    const std::map<std::string, Coords>& blocks() const { return blocks_; }
    const Coords* block(const std::string& type) const;
    bool is_zero() const { return blocks_.empty(); }

    AmbientElement& operator+=(const AmbientElement& o);
    AmbientElement& operator-=(const AmbientElement& o);
    AmbientElement& operator*=(const Rational& c);

    friend AmbientElement operator+(AmbientElement a, const AmbientElement& b) { return a += b; }
    friend AmbientElement operator-(AmbientElement a, const AmbientElement& b) { return a -= b; }
    friend AmbientElement operator*(const Rational& c, AmbientElement a) { return a *= c; }

    friend bool operator==(const AmbientElement&, const AmbientElement&) = default;

private:
    void drop_zero_blocks();
    std::map<std::string, Coords> blocks_;
};

/// Throws DomainError when g has unknown types or wrong block lengths.
void check_shape(const GroupSpec& spec, const AmbientElement& g);

/// d = sum over T_0 of (s_tau / m_tau) e_0^(tau).
AmbientElement element_d(const GroupSpec& spec);

AmbientElement project(const GroupSpec& spec, const AmbientElement& g, const std::string& type);

/// For g supported on block tau: every coordinate c has c / scale in R_tau.
/// scale = 1 tests A_tau, scale = m tests m A_tau.
bool in_scaled_A_tau(const GroupSpec& spec, const AmbientElement& g, const std::string& type,
                     const Integer& scale);

/// Coordinate form of the same test for a bare block.
bool coords_in_scaled_ring(const IdempotentType& type, const Coords& coords, const Integer& scale);

bool in_A(const GroupSpec& spec, const AmbientElement& g);

struct GMembership {
    Integer k;          ///< coefficient of d, in [0, n)
    AmbientElement a;   ///< the part in A

    friend bool operator==(const GMembership&, const GMembership&) = default;
};

/// g = k d + a with k in [0, n) and a in A, if g lies in G. Solves for k from
/// the congruences carried by the slot-0 coordinates.
std::optional<GMembership> in_G(const GroupSpec& spec, const AmbientElement& g);

/// Same contract as in_G(), found by trying every k in [0, n).
std::optional<GMembership> in_G_by_scan(const GroupSpec& spec, const AmbientElement& g);

/// Least t >= 1 with t g in A: lcm over coordinates of the P0(tau)-part of
/// the reduced denominator.
Integer order_mod_A(const GroupSpec& spec, const AmbientElement& g);

/**
 * Whether A_sigma is pure in G, decided on the witness element n1 * d_sigma
 * where n1 is the lcm of the orders of d_tau + A over tau != sigma. The
 * candidate is not required to satisfy condition (m); only its shape is
 * checked.
 */
bool purity_oracle(const GroupSpec& spec, const std::string& sigma);

}  // namespace crq
