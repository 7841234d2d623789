#pragma once

/**
 * @file exactnum.hpp
 * @brief Exact integers, rationals, prime sets and the modular primitives
 *        used by the group and multiplication-table layers.
 *
 * Integers are GMP integers throughout. Rationals are always kept reduced
 * with a positive denominator.
 */

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace crq {

using Integer = mpz_class;

/// Raised when an argument is outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by modular inversion when gcd(s, m) != 1.
class NotInvertibleError : public DomainError {
public:
    using DomainError::DomainError;
};

class Rational {
public:
    Rational() = default;
    Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);
    /// Accepts GMP integer expressions such as m * s without a named temporary.
    template <typename Expr>
    Rational(const __gmp_expr<mpz_t, Expr>& e) : value_(Integer(e)) {}  // NOLINT(google-explicit-constructor)

    /// Parses "a" or "a/b" (decimal, optional leading '-'); the result is reduced.
    static Rational parse(std::string_view text);

    Integer num() const { return value_.get_num(); }
    Integer den() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_integer() const { return value_.get_den() == 1; }

    /// Canonical text: "a" for integers, "a/b" otherwise.
    std::string str() const { return value_.get_str(); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}
    mpq_class value_;
};

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Finite set of primes in strictly increasing order.
class PrimeSet {
public:
    PrimeSet() = default;
    /// Sorts and deduplicates; throws DomainError if a member is not prime.
    explicit PrimeSet(std::vector<std::uint64_t> primes);
    PrimeSet(std::initializer_list<std::uint64_t> primes)
        : PrimeSet(std::vector<std::uint64_t>(primes)) {}

    std::span<const std::uint64_t> primes() const { return primes_; }
    bool contains(std::uint64_t p) const;
    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }
    bool is_subset_of(const PrimeSet& other) const;

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

private:
    std::vector<std::uint64_t> primes_;
};

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// lcm of a list of positive integers; the empty list gives 1.
Integer lcm_all(std::span<const Integer> ms);

/// Least x in [0, m) with s*x == 1 (mod m). m == 1 gives 0.
Integer mod_inverse(const Integer& s, const Integer& m);

/// x mod m in [0, m) for m >= 1.
Integer mod_floor(const Integer& x, const Integer& m);

/// Residue of a rational whose denominator is coprime to m.
Integer rational_mod(const Rational& q, const Integer& m);

/// True iff no prime of `primes` divides x (x != 0), i.e. x is an integer
/// over the complement of `primes`.
bool is_coprime_to_all(const Integer& x, const PrimeSet& primes);

/// Smallest positive member of mod_inverse(s, m) + mZ with no prime factor in
/// infPrimes.
Integer p0_inverse(const Integer& s, const Integer& m, const PrimeSet& infPrimes);

/// True iff every prime factor of |x| lies in allowedPrimes. x == 0 throws.
bool is_p_integer(const Integer& x, const PrimeSet& allowedPrimes);

/// x with every prime of `primes` divided out.
Integer strip_primes(Integer x, const PrimeSet& primes);

Integer euler_phi(const Integer& m);

/// Prime factorization by trial division; intended for desk-scale inputs.
std::vector<std::pair<Integer, unsigned>> factorize(Integer m);

struct Congruence {
    Integer residue;
    Integer modulus;

    friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Common solution of x == r_i (mod m_i), unique modulo the lcm of the
/// moduli, or nullopt when the system is inconsistent. Moduli need not be
/// coprime. The empty system gives (0, 1).
std::optional<Congruence> crt_solve(std::span<const Congruence> congruences);

/// Condition (m): every m_tau divides the lcm of the remaining m_sigma.
template <typename Key>
bool condition_m_check(const std::map<Key, Integer>& ms)
{
    for (const auto& [key, m] : ms) {
        Integer others = 1;
        for (const auto& [other_key, other_m] : ms) {
            if (other_key != key) others = lcm(others, other_m);
        }
        if (others % m != 0) return false;
    }
    return true;
}

/// Power with a nonnegative exponent.
Integer pow(const Integer& base, unsigned long exponent);

}  // namespace crq
