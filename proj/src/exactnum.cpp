#include "crq/exactnum.hpp"

#include <algorithm>
#include <regex>

namespace crq {

Rational::Rational(const Integer& num, const Integer& den)
{
    if (den == 0) throw DomainError("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text)
{
    static const std::regex pattern(R"(^(-?[0-9]+)(?:/([0-9]+))?$)");
    std::string s(text);
    std::smatch match;
    if (!std::regex_match(s, match, pattern)) {
        throw DomainError("malformed rational literal: '" + s + "'");
    }
    Integer num(match[1].str(), 10);
    Integer den = 1;
    if (match[2].matched) den = Integer(match[2].str(), 10);
    return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) throw DomainError("division by zero");
    value_ /= o.value_;
    return *this;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These bases are a deterministic witness set for all n < 2^64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeSet::PrimeSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes))
{
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (auto p : primes_) {
        if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
    }
}

bool PrimeSet::contains(std::uint64_t p) const
{
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool PrimeSet::is_subset_of(const PrimeSet& other) const
{
    return std::includes(other.primes_.begin(), other.primes_.end(), primes_.begin(), primes_.end());
}

Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Integer lcm_all(std::span<const Integer> ms)
{
    Integer result = 1;
    for (const auto& m : ms) {
        if (m <= 0) throw DomainError("lcm_all: inputs must be positive, got " + m.get_str());
        result = lcm(result, m);
    }
    return result;
}

Integer mod_floor(const Integer& x, const Integer& m)
{
    if (m < 1) throw DomainError("modulus must be positive");
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer mod_inverse(const Integer& s, const Integer& m)
{
    if (m < 1) throw DomainError("mod_inverse: modulus must be positive");
    if (m == 1) return 0;
    Integer x;
    if (mpz_invert(x.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t()) == 0) {
        throw NotInvertibleError("mod_inverse: gcd(" + s.get_str() + ", " + m.get_str() + ") != 1");
    }
    return mod_floor(x, m);
}

Integer rational_mod(const Rational& q, const Integer& m)
{
    return mod_floor(q.num() * mod_inverse(q.den(), m), m);
}

bool is_coprime_to_all(const Integer& x, const PrimeSet& primes)
{
    if (x == 0) throw DomainError("0 is not a P-integer");
    for (auto p : primes.primes()) {
        if (mpz_divisible_ui_p(x.get_mpz_t(), p) != 0) return false;
    }
    return true;
}

Integer p0_inverse(const Integer& s, const Integer& m, const PrimeSet& infPrimes)
{
    if (m < 1) throw DomainError("p0_inverse: modulus must be positive");
    if (gcd(s, m) != 1) throw DomainError("p0_inverse: s and m are not coprime");
    if (!is_coprime_to_all(m, infPrimes)) throw DomainError("p0_inverse: m has an infinity-prime factor");
    Integer x = mod_inverse(s, m);
    if (x == 0) x = m;
    // No infinity-prime divides m, so some member of the class avoids all of
    // them within prod(infPrimes) steps.
    while (!is_coprime_to_all(x, infPrimes)) x += m;
    return x;
}

Integer strip_primes(Integer x, const PrimeSet& primes)
{
    if (x == 0) throw DomainError("cannot strip primes from 0");
    for (auto p : primes.primes()) {
        while (mpz_divisible_ui_p(x.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
        }
    }
    return x;
}

bool is_p_integer(const Integer& x, const PrimeSet& allowedPrimes)
{
    if (x == 0) throw DomainError("is_p_integer: 0 has no prime factorization");
    Integer rest = strip_primes(abs(x), allowedPrimes);
    return rest == 1;
}

std::vector<std::pair<Integer, unsigned>> factorize(Integer m)
{
    if (m < 1) throw DomainError("factorize: input must be positive");
    std::vector<std::pair<Integer, unsigned>> factors;
    for (Integer p = 2; p * p <= m; ++p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e > 0) factors.emplace_back(p, e);
    }
    if (m > 1) factors.emplace_back(m, 1);
    return factors;
}

Integer euler_phi(const Integer& m)
{
    if (m < 1) throw DomainError("euler_phi: input must be positive");
    Integer phi = m;
    for (const auto& [p, e] : factorize(m)) {
        phi = phi / p * (p - 1);
    }
    return phi;
}

std::optional<Congruence> crt_solve(std::span<const Congruence> congruences)
{
    Integer r = 0;
    Integer mod = 1;
    for (const auto& c : congruences) {
        if (c.modulus < 1) throw DomainError("crt_solve: moduli must be positive");
        Integer ri = mod_floor(c.residue, c.modulus);
        Integer g = gcd(mod, c.modulus);
        Integer diff = ri - r;
        if (diff % g != 0) return std::nullopt;
        // r + mod*t == ri (mod m_i)  =>  (mod/g) t == diff/g (mod m_i/g)
        Integer mi_g = c.modulus / g;
        Integer t = mod_floor((diff / g) * mod_inverse(mod_floor(mod / g, mi_g), mi_g), mi_g);
        Integer new_mod = mod * mi_g;
        r = mod_floor(r + mod * t, new_mod);
        mod = new_mod;
    }
    return Congruence{r, mod};
}

Integer pow(const Integer& base, unsigned long exponent)
{
    Integer result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
    return result;
}

}  // namespace crq
