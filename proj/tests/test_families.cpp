#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <intersective/families.hpp>
#include <intersective/json_io.hpp>

using namespace intersective;

TEST_CASE("catalog lists the three families with their degrees") {
    auto cat = list_families();
    REQUIRE(cat.size() == 3);
    CHECK(cat[0].name == "psl3_2");
    CHECK(cat[0].degree_f == 7);
    CHECK(cat[0].degree_g == 8);
    CHECK(cat[1].name == "pgammal2_8");
    CHECK(cat[1].degree_f == 9);
    CHECK(cat[1].degree_g == 28);
    CHECK(cat[2].name == "m11");
    CHECK(cat[2].degree_f == 12);
    CHECK(cat[2].degree_g == 11);
}

TEST_CASE("golden data: transcription checksums are pinned") {
    // The loader compares two independent transcriptions of each polynomial;
    // these checksums additionally pin the canonical serialization, so any
    // edit to the embedded data trips this test.
    auto cs1 = family_checksums(family_spec("psl3_2"));
    CHECK(cs1.f == 0xbd4815aa7e0eeb25ULL);
    CHECK(cs1.g == 0xd389c359d7169f59ULL);
    auto cs2 = family_checksums(family_spec("pgammal2_8"));
    CHECK(cs2.f == 0xbf0486e1b95cf12fULL);
    CHECK(cs2.g == 0xd9117f63da071706ULL);
    auto cs3 = family_checksums(family_spec("m11"));
    CHECK(cs3.f == 0xe1e91ea110f236d1ULL);
    CHECK(cs3.g == 0xf21c99b3060b3a53ULL);
}

TEST_CASE("psl3_2 specialization values from the displayed coefficients") {
    auto spec = family_spec("psl3_2");
    // at a=b=c=1, t=0 the constant term is -a^2 (b-4) c^3 = 3
    std::map<std::string, BigInt> at{{"a", BigInt(1)}, {"b", BigInt(1)}, {"c", BigInt(1)},
                                     {"t", BigInt(0)}};
    IntPoly f = specialize(spec.f, at);
    CHECK(f.degree() == 7);
    CHECK(f.coeff(0) == BigInt(3));
    // with t present, degree stays 7 and the t-part has the displayed shape
    at["t"] = BigInt(1);
    IntPoly f1 = specialize(spec.f, at);
    IntPoly tpart = f1 - f;
    CHECK(tpart == IntPoly({0, 0, 1}) * IntPoly({-1, 1}) * IntPoly({1, -1, 1}));
}

TEST_CASE("m11 f at t=1 equals the displayed product form") {
    auto spec = family_spec("m11");
    std::map<std::string, BigInt> at{{"t", BigInt(1)}};
    IntPoly f = specialize(spec.f, at);
    IntPoly expect = IntPoly({-16, -4, 1}).pow(5) * IntPoly({-1, -4, 1}) +
                     IntPoly::constant(BigInt(2)) * IntPoly({0, 0, 0, 1}) *
                         IntPoly({-4, 1}).pow(3) * IntPoly({-128, 0, 0, 1});
    CHECK(f == expect);
    // mod 2 it collapses to x^10 (x+1)^2
    auto fac = factor_mod_p(f, 2);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].first.degree() == 1);
    CHECK(fac.factors[1].first.degree() == 1);
}

TEST_CASE("m11 rational partner: 3^12 g = 2x + 2 mod 3 at t = 1") {
    RatPoly g = family_detail::build_m11_g_rational(BigInt(1));
    CHECK(g.degree() == 11);
    CHECK(g.is_monic());
    RatPoly scaled = g * Rational(BigInt(3).pow(12));
    CHECK(scaled.reduce_mod(BigInt(3)) == IntPoly({2, 2}));
    // the same step fails for t = 2 (not 1 mod 3), which is why the theorem
    // restricts the specializations
    RatPoly g2 = family_detail::build_m11_g_rational(BigInt(2));
    RatPoly scaled2 = g2 * Rational(BigInt(3).pow(12));
    CHECK(scaled2.reduce_mod(BigInt(3)) != IntPoly({2, 2}));
}

TEST_CASE("m11 integer rescale matches the rational polynomial") {
    auto spec = family_spec("m11");
    CHECK(spec.g_rescale_lambda == BigInt(45));
    std::map<std::string, BigInt> at{{"t", BigInt(7)}};
    IntPoly G = specialize(spec.g, at);
    RatPoly g = family_detail::build_m11_g_rational(BigInt(7));
    auto [G2, lambda] = g.monic_integer_rescale();
    CHECK(lambda == BigInt(45));
    CHECK(G == G2);
}

TEST_CASE("family verify: psl3_2 at t = 1") {
    std::map<std::string, BigInt> at{{"a", BigInt(1)}, {"b", BigInt(1)}, {"c", BigInt(1)},
                                     {"t", BigInt(1)}};
    FamilyReport rep = verify_family("psl3_2", at);
    CHECK(rep.predicate_ok);
    CHECK(rep.all_passed);
    CHECK(rep.certificate.verdict == "certified-conditional-on-group");
    for (const auto& s : rep.steps) CHECK(s.passed);
}

TEST_CASE("family verify: psl3_2 at t = 2 violates the predicate and fails mod 2") {
    std::map<std::string, BigInt> at{{"a", BigInt(1)}, {"b", BigInt(1)}, {"c", BigInt(1)},
                                     {"t", BigInt(2)}};
    FamilyReport rep = verify_family("psl3_2", at);
    CHECK_FALSE(rep.predicate_ok);
    bool mod2_failed = false;
    for (const auto& s : rep.steps)
        if (s.id == "mod2" && !s.passed) mod2_failed = true;
    CHECK(mod2_failed);
}

TEST_CASE("family verify: m11 at t = 1 with evidence at 2, 3, 5, 11") {
    std::map<std::string, BigInt> at{{"t", BigInt(1)}};
    FamilyReport rep = verify_family("m11", at);
    CHECK(rep.predicate_ok);
    CHECK(rep.all_passed);
    CHECK(rep.certificate.verdict == "certified-conditional-on-group");
    REQUIRE(rep.certificate.primes.size() == 4);
    std::vector<BigInt> expect{BigInt(2), BigInt(3), BigInt(5), BigInt(11)};
    for (size_t i = 0; i < 4; ++i) {
        CHECK(rep.certificate.primes[i].p == expect[i]);
        CHECK(rep.certificate.primes[i].positive());
    }
}

TEST_CASE("family report serializes to JSON") {
    std::map<std::string, BigInt> at{{"a", BigInt(1)}, {"b", BigInt(1)}, {"c", BigInt(1)},
                                     {"t", BigInt(1)}};
    FamilyReport rep = verify_family("psl3_2", at);
    Json j = family_report_to_json(rep);
    CHECK(j["family"] == "psl3_2");
    CHECK(j["all_passed"] == true);
    CHECK(j["certificate"]["verdict"] == "certified-conditional-on-group");
    // determinism: serializing twice gives identical bytes
    FamilyReport rep2 = verify_family("psl3_2", at);
    CHECK(family_report_to_json(rep2).dump() == j.dump());
}

TEST_CASE("parametric polynomials round-trip through JSON") {
    auto spec = family_spec("pgammal2_8");
    Json j = parampoly_to_json(spec.f);
    ParamPoly back = parampoly_from_json(j);
    CHECK(back.poly == spec.f.poly);
    std::map<std::string, BigInt> at{{"t", BigInt(3)}};
    CHECK(specialize(back, at) == specialize(spec.f, at));
}

TEST_CASE("prime evidence survives a JSON round trip and re-verification") {
    // soundness spot-check: witnesses recheck from the serialized payload
    // alone, with no pipeline recomputation
    std::map<std::string, BigInt> at{{"t", BigInt(1)}};
    FamilyReport rep = verify_family("m11", at);
    REQUIRE(rep.certificate.primes.size() == 4);
    for (const auto& ev : rep.certificate.primes) {
        Json j = evidence_to_json(ev);
        PrimeEvidence back = evidence_from_json(j);
        CHECK(back.method == ev.method);
        CHECK(verify_prime_evidence(rep.certificate.factors, back));
    }
}

TEST_CASE("pgammal2_8 shape filter matches brute force for small primes") {
    auto spec = family_spec("pgammal2_8");
    auto bad = bad_prime_superset_parametric(spec.shape);
    REQUIRE_FALSE(bad.degenerate);
    // brute force: for p <= 13, scan every t in F_p and test the shape via
    // the mod-p factorization
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        bool solvable = false;
        for (uint64_t t0 = 0; t0 < p; ++t0) {
            std::map<std::string, BigInt> at{{"t", BigInt(static_cast<long long>(t0))}};
            IntPoly ft = specialize(spec.f, at);
            Fp fld(p);
            FpPoly fp = FpPoly::from_intpoly(fld, ft);
            if (fp.degree() != ft.degree()) continue;
            auto fac = factor_mod_p(ft, p);
            // group factors into (x-a)^7 (quadratic): need a linear factor of
            // multiplicity >= 7 and the rest forming a quadratic
            for (const auto& [q, mult] : fac.factors) {
                if (q.degree() != 1 || mult < 7) continue;
                unsigned rest = 0;
                for (const auto& [q2, m2] : fac.factors)
                    rest += static_cast<unsigned>(q2.degree()) * m2;
                if (rest == 9 && mult == 7) solvable = true;
                if (mult == 8 || mult == 9) solvable = true; // (x-a)^7 absorbed further
            }
        }
        bool in_filtered = false;
        for (const auto& q : bad.filtered)
            if (q == BigInt(static_cast<unsigned long long>(p))) in_filtered = true;
        CHECK(solvable == in_filtered);
    }
}

TEST_CASE("m11 fingerprint: the order-11 pair ([11], [11,1]) occurs below 10^4") {
    // Chebotarev-flavored and probabilistic: a miss is only a warning
    auto spec = family_spec("m11");
    std::map<std::string, BigInt> at{{"t", BigInt(1)}};
    IntPoly f = specialize(spec.f, at);
    IntPoly g = specialize(spec.g, at);
    BigInt lcd = discriminant(f) * discriminant(g);
    bool seen = false;
    for (uint64_t p = 2; p <= 10000 && !seen; ++p) {
        if (!is_prime(BigInt(static_cast<unsigned long long>(p)))) continue;
        if (lcd.divisible_by(BigInt(static_cast<unsigned long long>(p)))) continue;
        auto pf = factor_mod_p(f, p).degree_partition();
        auto pg = factor_mod_p(g, p).degree_partition();
        if (Partition(pf) == Partition{11, 1} && Partition(pg) == Partition{11}) seen = true;
    }
    WARN(seen);
}
