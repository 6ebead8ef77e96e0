#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <intersective/arith.hpp>
#include <intersective/bigint.hpp>
#include <intersective/rational.hpp>

using namespace intersective;

namespace {

// Independent factorization oracle: plain trial division, no shortcuts.
std::vector<std::pair<long, unsigned>> trial_division_oracle(long n) {
    std::vector<std::pair<long, unsigned>> out;
    for (long p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

} // namespace

TEST_CASE("BigInt decimal round trip") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        BigInt v(static_cast<long long>(rng()));
        if (rng() & 1) v = -v;
        BigInt back(v.to_string());
        CHECK(back == v);
    }
    BigInt huge("123456789012345678901234567890123456789012345678901234567890");
    CHECK(BigInt(huge.to_string()) == huge);
    CHECK(BigInt("-17").to_string() == "-17");
    CHECK(BigInt(0).to_string() == "0");
}

TEST_CASE("BigInt arithmetic basics") {
    CHECK(BigInt("99999999999999999999") + BigInt(1) == BigInt("100000000000000000000"));
    CHECK(BigInt(-7) / BigInt(2) == BigInt(-3));
    CHECK(BigInt(-7) % BigInt(2) == BigInt(-1));
    CHECK(BigInt(-7).mod_positive(BigInt(3)) == BigInt(2));
    CHECK(BigInt(7).symmetric_mod(BigInt(5)) == BigInt(2));
    CHECK(BigInt(8).symmetric_mod(BigInt(5)) == BigInt(-2));
    CHECK(BigInt(2).pow(11) * BigInt(7) == BigInt(14336));
    CHECK(BigInt(10).pow(20).isqrt() == BigInt(10).pow(10));
    CHECK(BigInt::valuation(BigInt(14336), BigInt(2)) == 11);
    CHECK(BigInt(3).powmod(BigInt(100), BigInt(101)) == BigInt(1));
}

TEST_CASE("gcd divides both arguments; gcd(a, 0) = |a|") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        BigInt a(static_cast<long long>(rng() % 1000000000));
        BigInt b(static_cast<long long>(rng() % 1000000000));
        if (rng() & 1) a = -a;
        BigInt g = BigInt::gcd(a, b);
        if (!g.is_zero()) {
            CHECK(a.divisible_by(g));
            CHECK(b.divisible_by(g));
        }
    }
    CHECK(BigInt::gcd(BigInt(-12), BigInt(0)) == BigInt(12));
    CHECK(BigInt::gcd(BigInt(0), BigInt(0)) == BigInt(0));
}

TEST_CASE("is_prime on small reference values") {
    CHECK(is_prime(BigInt(7)));
    CHECK_FALSE(is_prime(BigInt(14336))); // even
    // 10125 factors as 3^4 * 5^3 (trial division oracle)
    auto oracle = trial_division_oracle(10125);
    REQUIRE(oracle.size() == 2);
    CHECK(oracle[0] == std::pair<long, unsigned>{3, 4});
    CHECK(oracle[1] == std::pair<long, unsigned>{5, 3});
    CHECK_FALSE(is_prime(BigInt(10125)));
}

TEST_CASE("is_prime agrees with trial division up to 20000") {
    for (long n = 0; n < 20000; ++n) {
        bool naive = n >= 2;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) naive = false;
        CHECK(is_prime(BigInt(n)) == naive);
    }
}

TEST_CASE("is_prime handles large known primes and composites") {
    // 2^89 - 1 is a Mersenne prime
    CHECK(is_prime(BigInt::pow2(89) - BigInt(1)));
    // 2^67 - 1 = 193707721 * 761838257287 (Cole's factorization)
    CHECK_FALSE(is_prime(BigInt::pow2(67) - BigInt(1)));
    CHECK(BigInt("193707721") * BigInt("761838257287") == BigInt::pow2(67) - BigInt(1));
    // Carmichael number 561 and a strong pseudoprime to base 2
    CHECK_FALSE(is_prime(BigInt(561)));
    CHECK_FALSE(is_prime(BigInt(2047)));
}

TEST_CASE("factor_integer on reference values") {
    auto f = factor_integer(BigInt(14336));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == BigInt(2));
    CHECK(f.factors[0].second == 11);
    CHECK(f.factors[1].first == BigInt(7));
    CHECK(f.factors[1].second == 1);
    CHECK(f.complete());

    auto g = factor_integer(BigInt(10125));
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0].first == BigInt(3));
    CHECK(g.factors[0].second == 4);
    CHECK(g.factors[1].first == BigInt(5));
    CHECK(g.factors[1].second == 3);

    auto one = factor_integer(BigInt(1));
    CHECK(one.factors.empty());
    CHECK(one.cofactor.is_one());
    CHECK(one.sign == 1);
}

TEST_CASE("factor_integer reconstruction for random n < 10^12") {
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        long long v = static_cast<long long>(rng() % 1000000000000LL);
        if (v == 0) v = 1;
        if (rng() & 1) v = -v;
        BigInt n(v);
        auto f = factor_integer(n);
        CHECK(f.reconstruct() == n);
        for (const auto& [p, e] : f.factors) CHECK(is_prime(p));
        CHECK(f.complete()); // everything below 10^12 factors over the trial bound + rho
    }
}

TEST_CASE("factor_integer peels large semiprimes with rho") {
    BigInt p("1000003"), q("10000019");
    auto f = factor_integer(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == p);
    CHECK(f.factors[1].first == q);
    CHECK(f.complete());
}

TEST_CASE("Rational is always reduced with positive denominator") {
    Rational r(BigInt(4), BigInt(-6));
    CHECK(r.num() == BigInt(-2));
    CHECK(r.den() == BigInt(3));
    CHECK(Rational(BigInt(0), BigInt(5)).den() == BigInt(1));
    CHECK(Rational("10/4").to_string() == "5/2");
}

TEST_CASE("Rational arithmetic is exact: (p/q + r/s) - r/s == p/q") {
    Rng rng(99);
    for (int i = 0; i < 10000; ++i) {
        auto draw = [&]() {
            BigInt num(static_cast<long long>(rng() % 2000001) - 1000000);
            BigInt den(static_cast<long long>(rng() % 1000000) + 1);
            return Rational(num, den);
        };
        Rational a = draw(), b = draw();
        CHECK((a + b) - b == a);
    }
}

TEST_CASE("Rational valuation") {
    CHECK(Rational(BigInt(4), BigInt(10125)).valuation(BigInt(3)) == -4);
    CHECK(Rational(BigInt(4), BigInt(10125)).valuation(BigInt(5)) == -3);
    CHECK(Rational(BigInt(4), BigInt(10125)).valuation(BigInt(2)) == 2);
    CHECK(Rational(BigInt(18)).valuation(BigInt(3)) == 2);
}
