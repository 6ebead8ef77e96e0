#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <intersective/newton_polygon.hpp>
#include <intersective/padic_roots.hpp>

using namespace intersective;

namespace {

// Independent naive oracle for the number of distinct roots of a squarefree
// monic f in Z_p: enumerate the residues mod p^(2d+1) with f(r) = 0 there
// (level-by-level lifting), then count distinct projections mod p^(d+1),
// d = v_p(disc f). No Hensel steps, no Newton iteration.
unsigned naive_distinct_root_count(const IntPoly& f, long p) {
    BigInt bp(p);
    BigInt disc = discriminant(f);
    REQUIRE(!disc.is_zero());
    unsigned long d = BigInt::valuation(disc, bp);
    unsigned long K = 2 * d + 1;
    std::vector<BigInt> level;
    BigInt mod(1);
    // level 0: all residues mod p — seeded from f mod p
    for (long r = 0; r < p; ++r)
        if (f.evaluate(BigInt(r)).mod_positive(bp).is_zero()) level.emplace_back(r);
    mod = bp;
    for (unsigned long j = 1; j < K; ++j) {
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
    // project to mod p^(d+1)
    BigInt proj = bp.pow(d + 1);
    std::set<std::string> distinct;
    for (const auto& r : level) distinct.insert(r.mod_positive(proj).to_string());
    return static_cast<unsigned>(distinct.size());
}

} // namespace

TEST_CASE("newton polygon: x^2 - 12 at p = 2") {
    NewtonPolygon np = newton_polygon(IntPoly({-12, 0, 1}), BigInt(2));
    REQUIRE(np.vertices.size() == 2);
    CHECK(np.vertices[0] == NewtonVertex{0, 2});
    CHECK(np.vertices[1] == NewtonVertex{2, 0});
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Rational(-1));
    CHECK(np.segments[0].length() == 2);
    auto part = root_valuation_partition(np);
    REQUIRE(part.size() == 1);
    CHECK(part[0].first == Rational(1));
    CHECK(part[0].second == 2);
}

TEST_CASE("newton polygon: x^3 + 2x + 4 at p = 2, against the lifting oracle") {
    IntPoly f({4, 2, 0, 1});
    NewtonPolygon np = newton_polygon(f, BigInt(2));
    REQUIRE(np.vertices.size() == 3);
    CHECK(np.vertices[0] == NewtonVertex{0, 2});
    CHECK(np.vertices[1] == NewtonVertex{1, 1});
    CHECK(np.vertices[2] == NewtonVertex{3, 0});
    REQUIRE(np.segments.size() == 2);
    CHECK(np.segments[0].slope == Rational(-1));
    CHECK(np.segments[0].length() == 1);
    CHECK(np.segments[1].slope == Rational(-1, 2));
    CHECK(np.segments[1].length() == 2);

    // oracle: lifting mod 2^8 finds exactly one Z_2 root, of valuation 1;
    // the remaining valuation mass v_2(f(0)) - 1 = 1 spreads over two
    // conjugate roots of valuation 1/2 each
    std::vector<long> roots_mod256;
    for (long r = 0; r < 256; ++r)
        if (f.evaluate(BigInt(r)).mod_positive(BigInt(256)).is_zero()) roots_mod256.push_back(r);
    // all approximations agree mod 4 and have valuation exactly 1
    REQUIRE(!roots_mod256.empty());
    for (long r : roots_mod256) CHECK(r % 4 == 2);
    unsigned count = naive_distinct_root_count(f, 2);
    CHECK(count == 1);
    auto part = root_valuation_partition(np);
    CHECK(part[0] == std::pair<Rational, unsigned>{Rational(1), 1});
    CHECK(part[1] == std::pair<Rational, unsigned>{Rational(1, 2), 2});
}

TEST_CASE("newton polygon strips x-powers and records them") {
    IntPoly f({0, 0, 4, 1}); // x^2 (x + 4)
    NewtonPolygon np = newton_polygon(f, BigInt(2));
    CHECK(np.stripped_x_power == 2);
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].slope == Rational(-2));
}

TEST_CASE("newton polygon rejects constants") {
    CHECK_THROWS_AS(newton_polygon(IntPoly({5}), BigInt(2)), ConstantPolynomial);
}

TEST_CASE("roots_in_Zp: x^2 + 7 has two 2-adic roots, x^2 - 2 has none") {
    auto rep = roots_in_Zp(IntPoly({7, 0, 1}), BigInt(2));
    CHECK(rep.distinct_roots == 2);
    for (const auto& w : rep.witnesses) CHECK(verify_root_witness(IntPoly({7, 0, 1}), BigInt(2), w));
    CHECK(naive_distinct_root_count(IntPoly({7, 0, 1}), 2) == 2);

    auto rep2 = roots_in_Zp(IntPoly({-2, 0, 1}), BigInt(2));
    CHECK(rep2.distinct_roots == 0);
    CHECK(rep2.method == "exhausted");
    CHECK(naive_distinct_root_count(IntPoly({-2, 0, 1}), 2) == 0);
}

TEST_CASE("roots_in_Zp finds exact integer roots with rational witnesses") {
    IntPoly f = IntPoly({-3, 1}) * IntPoly({5, 1}) * IntPoly({1, 0, 1}); // (x-3)(x+5)(x^2+1)
    auto rep = roots_in_Zp(f, BigInt(7));
    CHECK(rep.distinct_roots >= 2);
    bool saw3 = false, sawm5 = false;
    for (const auto& w : rep.witnesses) {
        CHECK(verify_root_witness(f, BigInt(7), w));
        if (w.method == "rational") {
            BigInt m = BigInt(7).pow(w.precision);
            if (w.value == BigInt(3).mod_positive(m)) saw3 = true;
            if (w.value == BigInt(-5).mod_positive(m)) sawm5 = true;
        }
    }
    CHECK(saw3);
    CHECK(sawm5);
}

TEST_CASE("roots_in_Zp requires a monic input") {
    CHECK_THROWS_AS(roots_in_Zp(IntPoly({1, 2}), BigInt(3)), NonMonicInput);
}

TEST_CASE("roots_in_Zp handles multiplicities through the squarefree part") {
    IntPoly f = IntPoly({-1, 1}).pow(3) * IntPoly({1, 1}); // (x-1)^3 (x+1)
    auto rep = roots_in_Zp(f, BigInt(5));
    CHECK(rep.distinct_roots == 2);
    CHECK(rep.with_multiplicity == 4);
}

TEST_CASE("roots_in_Zp agrees with the naive oracle on random polynomials") {
    Rng rng(4242);
    int trials = 0;
    while (trials < 200) {
        int deg = 2 + static_cast<int>(rng() % 5);
        std::vector<BigInt> c(deg + 1);
        for (int i = 0; i < deg; ++i) c[i] = BigInt(static_cast<long>(rng() % 101) - 50);
        c[deg] = BigInt(1);
        IntPoly f(std::move(c));
        if (squarefree_part(f).degree() != f.degree()) continue;
        ++trials;
        long p = std::vector<long>{2, 3, 5, 7}[rng() % 4];
        auto rep = roots_in_Zp(f, BigInt(p));
        unsigned naive = naive_distinct_root_count(f, p);
        CHECK(rep.distinct_roots == naive);
        for (const auto& w : rep.witnesses) CHECK(verify_root_witness(f, BigInt(p), w));
    }
}

TEST_CASE("subpartition_check on worked examples") {
    CHECK_FALSE(subpartition_check({6, 3, 3}, {10, 2}));
    CHECK(subpartition_check({1, 1, 1, 1}, {2, 2}));
    CHECK(subpartition_check({1, 1, 1, 1}, {4}));
    CHECK(subpartition_check({8, 4}, {12}));
    CHECK(subpartition_check({2, 2}, {4}));
    CHECK_FALSE(subpartition_check({3, 1}, {2, 2}));
    CHECK_THROWS_AS(subpartition_check({3, 1}, {5}), SumMismatch);
}

TEST_CASE("orbit_constraints from a factorization shape") {
    // x^10 (x+1)^2 mod 2: D_p bound [10, 2]; I_p bound [10, 2]
    IntPoly f = IntPoly({0, 1}).pow(10) * IntPoly({1, 1}).pow(2);
    auto fac = factor_mod_p(f, 2);
    auto oc = orbit_constraints(fac);
    CHECK(oc.decomposition_bound == Partition{10, 2});
    CHECK(oc.inertia_bound == Partition{10, 2});
    // the four bad orbit partitions are rejected against [10, 2]
    for (const Partition& bad : {Partition{12}, Partition{8, 4}, Partition{6, 6}, Partition{6, 3, 3}})
        CHECK_FALSE(subpartition_check(bad, oc.decomposition_bound));

    // fully split separable reduction: inertia bound is all ones
    IntPoly g({6, 11, 6, 1}); // (x+1)(x+2)(x+3)
    auto oc2 = orbit_constraints(factor_mod_p(g, 7));
    CHECK(oc2.inertia_bound == Partition{1, 1, 1});
}

TEST_CASE("newton polygon of a constructed product recovers the valuations exactly") {
    // f = prod (x - p^(m_i) u_i) with units u_i: the valuation partition is
    // exactly the multiset {m_i}
    Rng rng(606);
    for (long p : {2L, 3L, 5L}) {
        for (int trial = 0; trial < 40; ++trial) {
            std::map<unsigned, unsigned> expect;
            IntPoly f({1});
            int roots = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < roots; ++i) {
                unsigned m = static_cast<unsigned>(rng() % 4);
                long u = static_cast<long>(rng() % 10) + 1;
                while (u % p == 0) ++u;
                if (rng() & 1) u = -u;
                f = f * IntPoly::linear_root(BigInt(p).pow(m) * BigInt(u));
                expect[m] += 1;
            }
            NewtonPolygon np = newton_polygon(f, BigInt(p));
            std::map<unsigned, unsigned> got;
            for (const auto& [val, count] : root_valuation_partition(np)) {
                REQUIRE(val.is_integer());
                got[static_cast<unsigned>(val.num().to_slong())] += count;
            }
            CHECK(got == expect);
        }
    }
}

TEST_CASE("newton polygon vertices are minimal: slopes strictly increase") {
    Rng rng(707);
    for (int trial = 0; trial < 60; ++trial) {
        int deg = 2 + static_cast<int>(rng() % 8);
        std::vector<BigInt> c(deg + 1);
        for (int i = 0; i <= deg; ++i)
            c[i] = BigInt(static_cast<long>(rng() % 4001) - 2000);
        if (c[0].is_zero()) c[0] = BigInt(6);
        if (c.back().is_zero()) c.back() = BigInt(1);
        IntPoly f(std::move(c));
        NewtonPolygon np = newton_polygon(f, BigInt(2));
        for (size_t i = 0; i + 1 < np.segments.size(); ++i)
            CHECK(np.segments[i].slope < np.segments[i + 1].slope);
        // every coefficient point lies on or above the hull
        for (int i = 0; i <= f.degree(); ++i) {
            if (f.coeff(static_cast<size_t>(i)).is_zero()) continue;
            long v = static_cast<long>(BigInt::valuation(f.coeff(static_cast<size_t>(i)), BigInt(2)));
            for (const auto& s : np.segments) {
                if (i < s.start || i > s.end) continue;
                long v0 = 0, v1 = 0;
                for (const auto& vert : np.vertices) {
                    if (vert.index == s.start) v0 = vert.valuation;
                    if (vert.index == s.end) v1 = vert.valuation;
                }
                // exact comparison: (v - v0) * (end - start) >= (v1 - v0) * (i - start)
                CHECK((v - v0) * (s.end - s.start) >= (v1 - v0) * (i - s.start));
            }
        }
    }
}
