#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <intersective/certify.hpp>

using namespace intersective;

namespace {

// Brute-force oracle: does some factor have a root modulo p^depth?
// Level-by-level lifting, no Hensel shortcuts.
bool solvable_mod_power(const std::vector<IntPoly>& factors, long p, unsigned depth) {
    for (const auto& f : factors) {
        BigInt bp(p);
        std::vector<BigInt> level;
        for (long r = 0; r < p; ++r)
            if (f.evaluate(BigInt(r)).mod_positive(bp).is_zero()) level.emplace_back(r);
        BigInt mod = bp;
        for (unsigned j = 1; j < depth && !level.empty(); ++j) {
            BigInt next_mod = mod * bp;
            std::vector<BigInt> next;
            for (const auto& r : level)
                for (long i = 0; i < p; ++i) {
                    BigInt cand = r + mod * BigInt(i);
                    if (f.evaluate(cand).mod_positive(next_mod).is_zero()) next.push_back(cand);
                }
            level = std::move(next);
            mod = next_mod;
        }
        if (!level.empty()) return true;
    }
    return false;
}

const IntPoly kF({-2, 0, 1});  // x^2 - 2
const IntPoly kG({7, 0, 1});   // x^2 + 7
const IntPoly kH({14, 0, 1});  // x^2 + 14

} // namespace

TEST_CASE("ramification_bound of the intro example has support {2, 3, 7}") {
    auto rb = ramification_bound({kF, kG, kH});
    CHECK(rb.complete);
    // disc 8, -28, -56; resultants 81, 256, 49
    CHECK(rb.value.abs() ==
          BigInt(8) * BigInt(28) * BigInt(56) * BigInt(81) * BigInt(256) * BigInt(49));
    std::vector<BigInt> expect{BigInt(2), BigInt(3), BigInt(7)};
    CHECK(rb.prime_support == expect);
}

TEST_CASE("ramification_bound of a single linear factor is 1") {
    auto rb = ramification_bound({IntPoly({0, 1})});
    CHECK(rb.value == BigInt(1));
    CHECK(rb.prime_support.empty());
}

TEST_CASE("ramification_bound rejects squareful and shared factors") {
    CHECK_THROWS_AS(ramification_bound({IntPoly({0, 0, 1})}), NotSquarefree);
    // (x-1)(x+1) and (x-1)(x+2) share x-1
    CHECK_THROWS_AS(ramification_bound({IntPoly({-1, 0, 1}), IntPoly({-2, 1, 1})}), SharedFactor);
}

TEST_CASE("certify_prime on the intro example") {
    std::vector<IntPoly> factors{kF, kG, kH};
    auto ev2 = certify_prime(factors, BigInt(2));
    CHECK(ev2.method == "hensel-root");
    CHECK(ev2.factor_index == 1); // x^2 + 7: -7 = 1 mod 8
    CHECK(verify_prime_evidence(factors, ev2));

    auto ev3 = certify_prime(factors, BigInt(3));
    CHECK(ev3.positive());
    CHECK(verify_prime_evidence(factors, ev3));

    auto ev7 = certify_prime(factors, BigInt(7));
    CHECK(ev7.positive());
    CHECK(ev7.factor_index == 0); // 2 is a square mod 7
    CHECK(verify_prime_evidence(factors, ev7));
}

TEST_CASE("certify_prime returns rational-root whenever a rational root exists") {
    Rng rng(808);
    for (int trial = 0; trial < 10; ++trial) {
        long root = static_cast<long>(rng() % 19) - 9;
        IntPoly lin = IntPoly::linear_root(BigInt(root));
        IntPoly other({static_cast<long>(rng() % 7) + 1, static_cast<long>(rng() % 5), 0, 1});
        if (resultant(lin, other).is_zero()) continue;
        std::vector<IntPoly> factors{lin * other};
        if (squarefree_part(factors[0]).degree() != factors[0].degree()) continue;
        for (long p : {2L, 3L, 5L, 7L, 11L}) {
            auto ev = certify_prime(factors, BigInt(p));
            CHECK(ev.method == "rational-root");
            CHECK(verify_prime_evidence(factors, ev));
        }
    }
}

TEST_CASE("certify_prime reports exhausted-no-root as negative evidence") {
    // neither x^2 + 3 nor x^2 + 5 has a 2-adic root
    std::vector<IntPoly> factors{IntPoly({3, 0, 1}), IntPoly({5, 0, 1})};
    auto ev = certify_prime(factors, BigInt(2));
    CHECK(ev.method == "exhausted-no-root");
    CHECK_FALSE(ev.positive());
    CHECK(verify_prime_evidence(factors, ev));
    CHECK_FALSE(solvable_mod_power(factors, 2, 6));
}

TEST_CASE("newton-polygon shortcut certifies a unit segment") {
    // x^3 + 2x + 4 at p = 2: the length-1 segment of slope -1 certifies a
    // single root of valuation 1
    std::vector<IntPoly> factors{IntPoly({4, 2, 0, 1})};
    auto ev = certify_prime(factors, BigInt(2));
    CHECK(ev.method == "newton-polygon-linear-segment");
    CHECK(ev.segment_valuation == Rational(1));
    CHECK(verify_prime_evidence(factors, ev));
    auto rep = roots_in_Zp(factors[0], BigInt(2));
    CHECK(rep.distinct_roots == 1);
}

TEST_CASE("certify_intersective: the intro example is certified unconditionally") {
    IntersectivityCertificate cert = certify_intersective({kF, kG, kH});
    CHECK(cert.verdict == "certified");
    CHECK(cert.group_name == "elementary-abelian-2");
    CHECK(cert.group_unconditional);
    CHECK(cert.covering_valid);
    CHECK(cert.core_trivial);
    REQUIRE(cert.primes.size() == 3);
    std::vector<BigInt> expect{BigInt(2), BigInt(3), BigInt(7)};
    CHECK(cert.bad_prime_support == expect);
    for (const auto& ev : cert.primes) {
        CHECK(ev.positive());
        CHECK(verify_prime_evidence(cert.factors, ev));
    }
    // brute-force agreement at every prime up to 100
    for (long p = 2; p <= 100; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        CHECK(solvable_mod_power({kF, kG, kH}, p, 6));
    }
}

TEST_CASE("certify_intersective: refuted when some prime has no root") {
    auto cert = certify_intersective({IntPoly({3, 0, 1}), IntPoly({5, 0, 1})});
    CHECK(cert.verdict == "refuted");
    CHECK(cert.refuted_at == BigInt(2));
}

TEST_CASE("certify_intersective: structural refusals") {
    auto cert = certify_intersective({kG});
    CHECK(cert.verdict == "refuted"); // no 1-coverable groups

    auto lin = certify_intersective({IntPoly({-1, 1}), IntPoly({7, 0, 1})});
    CHECK(lin.verdict == "refuted"); // rational root: trivially intersective

    CHECK_THROWS_AS(certify_intersective({IntPoly({-1, 0, 1}), kG}), IrreducibilityFailure);
}

TEST_CASE("frobenius_consistency is vacuously consistent for linear x linear") {
    PermGroup triv = PermGroup::generate("trivial", 1, {});
    GroupAction a1 = natural_action(triv);
    GroupAction a2 = natural_action(triv);
    FrobeniusReport rep = frobenius_consistency({IntPoly({-1, 1}), IntPoly({-2, 1})}, triv, a1, a2,
                                                200, {});
    CHECK(rep.consistent);
    CHECK(rep.primes_checked > 0);
}

TEST_CASE("bad_prime_superset: x^3 + t x + 1 matches (x - a)^3 only at p = 3") {
    auto vars = make_vars({"x", "t"});
    MPoly x = MPoly::var(vars, "x");
    MPoly t = MPoly::var(vars, "t");
    FamilyShape shape;
    shape.family = ParamPoly(x.pow(3) + t * x + MPoly::constant(vars, BigInt(1)));
    shape.blocks = {{1, 3}};
    auto rep = bad_prime_superset_parametric(shape);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.complete);
    // 3 must survive the filter; nothing else may
    CHECK(rep.filtered == std::vector<BigInt>{BigInt(3)});
}

TEST_CASE("bad_prime_superset: the identity shape is degenerate") {
    auto vars = make_vars({"x", "t"});
    MPoly x = MPoly::var(vars, "x");
    MPoly t = MPoly::var(vars, "t");
    FamilyShape shape;
    shape.family = ParamPoly(x.pow(2) + t);
    shape.blocks = {{2, 1}};
    auto rep = bad_prime_superset_parametric(shape);
    CHECK(rep.degenerate);
}

TEST_CASE("quadratic group: exact Kummer-dual construction") {
    auto qg = build_quadratic_group({kF, kG, kH});
    REQUIRE(qg.valid);
    CHECK(qg.group().size() == 4); // Q(sqrt 2, sqrt -7): rank 2
    CHECK(qg.stabilizers.size() == 3);
    auto cover = check_k_covering(qg.group(), qg.stabilizers);
    CHECK(cover.valid());
    // dropping x^2+14 breaks the covering
    auto qg2 = build_quadratic_group({kF, kG});
    REQUIRE(qg2.valid);
    auto cover2 = check_k_covering(qg2.group(), qg2.stabilizers);
    CHECK_FALSE(cover2.covered);
}

TEST_CASE("coset action: image order times kernel order equals the group order") {
    NamedGroup ng = construct_named_group("agl2_3");
    for (const Subgroup* u : {&ng.U1, &ng.U2}) {
        CosetAction ca = coset_action(ng.group(), *u);
        CHECK(ca.image_order * ca.kernel_ids.size() == ng.group().size());
    }
}
