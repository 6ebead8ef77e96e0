#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "intersective/bigint.hpp"
#include "intersective/errors.hpp"

namespace intersective {

// Deterministic 64-bit generator used by every randomized routine in the
// library. Seeded explicitly (default 0) so that runs are reproducible.
using Rng = std::mt19937_64;

// Uniform value in [0, bound), bound > 0.
inline BigInt random_below(Rng& rng, const BigInt& bound) {
    if (bound.sign() <= 0) throw std::domain_error("random_below: bound must be positive");
    size_t bits = bound.bit_length();
    for (;;) {
        BigInt r(0);
        for (size_t got = 0; got < bits; got += 64) {
            r = r * BigInt::pow2(64) + BigInt(static_cast<unsigned long long>(rng()));
        }
        r = r.mod_positive(BigInt::pow2(((bits + 63) / 64) * 64));
        // Trim to exactly `bits` bits, then reject out-of-range values.
        r = r.mod_positive(BigInt::pow2(bits));
        if (r < bound) return r;
    }
}

namespace detail {

// Miller–Rabin strong probable prime test to base a (n odd, n > 2).
inline bool strong_probable_prime(const BigInt& n, const BigInt& a) {
    BigInt n1 = n - BigInt(1);
    BigInt d = n1;
    unsigned long s = BigInt::remove_factor(d, BigInt(2));
    BigInt x = a.mod_positive(n);
    if (x.is_zero()) return true; // a == 0 mod n gives no information
    x = x.powmod(d, n);
    if (x.is_one() || x == n1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x.powmod(BigInt(2), n);
        if (x == n1) return true;
        if (x.is_one()) return false;
    }
    return false;
}

inline const std::vector<long>& mr_fixed_bases() {
    // First twelve primes: deterministic for n < 3.317e24
    // (Sorenson & Webster).
    static const std::vector<long> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    return bases;
}

} // namespace detail

// Primality test. Deterministic (fixed Miller–Rabin base set) for
// n < 3.317·10^24; above that, 64 additional seeded pseudo-random bases give
// error probability below 2^-128.
inline bool is_prime(const BigInt& n, uint64_t seed = 0) {
    if (n < 2) return false;
    static const long small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (long p : small_primes) {
        if (n == p) return true;
        if (n.divisible_by(BigInt(p))) return false;
    }
    for (long b : detail::mr_fixed_bases())
        if (!detail::strong_probable_prime(n, BigInt(b))) return false;
    static const BigInt deterministic_limit("3317044064679887385961981");
    if (n < deterministic_limit) return true;
    Rng rng(seed ^ 0x6d725261626e6973ULL);
    BigInt span = n - BigInt(4);
    for (int i = 0; i < 64; ++i) {
        BigInt a = random_below(rng, span) + BigInt(2);
        if (!detail::strong_probable_prime(n, a)) return false;
    }
    return true;
}

// Sign * product(prime^exp) * cofactor reconstructs the input. cofactor is 1
// when the factorization is complete, otherwise a composite with no prime
// factor below the trial-division bound.
struct FactoredInt {
    int sign = 1;
    std::vector<std::pair<BigInt, unsigned>> factors; // (prime, exponent), primes ascending
    BigInt cofactor = BigInt(1);

    bool complete() const { return cofactor.is_one(); }

    BigInt reconstruct() const {
        BigInt r(sign);
        for (const auto& [p, e] : factors) r *= p.pow(e);
        return r * cofactor;
    }

    std::vector<BigInt> prime_support() const {
        std::vector<BigInt> out;
        out.reserve(factors.size());
        for (const auto& [p, e] : factors) out.push_back(p);
        return out;
    }
};

namespace detail {

inline const std::vector<uint32_t>& trial_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t bound = 1000000;
        std::vector<bool> sieve(bound + 1, true);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i <= bound; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j <= bound; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 on
// budget exhaustion. n must be odd composite, not a perfect power of a
// found prime (handled by the caller's recursion).
inline BigInt pollard_rho_brent(const BigInt& n, uint64_t budget, Rng& rng) {
    if (n.divisible_by(BigInt(2))) return BigInt(2);
    for (int attempt = 0; attempt < 64; ++attempt) {
        BigInt y = random_below(rng, n - BigInt(3)) + BigInt(1);
        BigInt c = random_below(rng, n - BigInt(3)) + BigInt(1);
        BigInt m(128);
        BigInt g(1), r(1), q(1), x(0), ys(0);
        uint64_t used = 0;
        while (g.is_one()) {
            x = y;
            BigInt rr = r;
            while (rr > 0) {
                y = (y * y + c).mod_positive(n);
                rr -= BigInt(1);
                if (++used > budget) return BigInt(0);
            }
            BigInt k(0);
            while (k < r && g.is_one()) {
                ys = y;
                BigInt rmk = r - k;
                BigInt lim = (m < rmk) ? m : rmk;
                for (BigInt i(0); i < lim; i += BigInt(1)) {
                    y = (y * y + c).mod_positive(n);
                    q = (q * (x - y).abs()).mod_positive(n);
                    if (++used > budget) return BigInt(0);
                }
                g = BigInt::gcd(q, n);
                k += m;
            }
            r = r + r;
        }
        if (g == n) {
            // Backtrack one step at a time.
            g = BigInt(1);
            while (g.is_one()) {
                ys = (ys * ys + c).mod_positive(n);
                g = BigInt::gcd((x - ys).abs(), n);
                if (++used > budget) return BigInt(0);
            }
        }
        if (g != n && !g.is_one()) return g;
        budget = (used < budget) ? budget - used : 0;
        if (budget == 0) return BigInt(0);
    }
    return BigInt(0);
}

inline void factor_rec(const BigInt& n, uint64_t budget, Rng& rng,
                       std::vector<BigInt>& primes, BigInt& cofactor) {
    if (n.is_one()) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    BigInt d = pollard_rho_brent(n, budget, rng);
    if (d.is_zero()) {
        cofactor *= n;
        return;
    }
    factor_rec(d, budget, rng, primes, cofactor);
    factor_rec(n.divexact(d), budget, rng, primes, cofactor);
}

} // namespace detail

// Trial division to 10^6, then Pollard rho within the iteration budget.
// Never fails: whatever remains unfactored lands in the cofactor.
inline FactoredInt factor_integer(BigInt n, uint64_t budget = 10000000, uint64_t seed = 0) {
    if (n.is_zero()) throw std::domain_error("factor_integer: n must be nonzero");
    FactoredInt out;
    if (n.sign() < 0) {
        out.sign = -1;
        n = -n;
    }
    if (n.is_one()) return out;
    for (uint32_t p : detail::trial_primes()) {
        BigInt bp(static_cast<unsigned long>(p));
        if (bp * bp > n) break;
        if (!n.divisible_by(bp)) continue;
        unsigned long e = BigInt::remove_factor(n, bp);
        out.factors.emplace_back(bp, static_cast<unsigned>(e));
        if (n.is_one()) break;
    }
    if (!n.is_one()) {
        if (is_prime(n)) {
            out.factors.emplace_back(n, 1);
        } else {
            std::vector<BigInt> primes;
            BigInt cof(1);
            Rng rng(seed ^ 0x706f6c6c61726472ULL);
            detail::factor_rec(n, budget, rng, primes, cof);
            std::sort(primes.begin(), primes.end());
            for (size_t i = 0; i < primes.size();) {
                size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                out.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
                i = j;
            }
            out.cofactor = cof;
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

} // namespace intersective
