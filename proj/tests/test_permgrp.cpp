#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <intersective/covering.hpp>
#include <intersective/named_groups.hpp>
#include <intersective/permgroup.hpp>

using namespace intersective;

TEST_CASE("Perm basics: composition, inverse, cycle type") {
    Perm a = Perm::from_cycles(5, {{0, 1, 2}});
    Perm b = Perm::from_cycles(5, {{2, 3}});
    Perm ab = a * b; // apply a, then b
    CHECK(ab[0] == 1);
    CHECK(ab[1] == 3);
    CHECK((a * a.inverse()).is_identity());
    CHECK(a.cycle_type() == Partition{3, 1, 1});
    CHECK(a.order() == 3);
    CHECK(Perm::from_cycles(6, {{0, 1}, {2, 3, 4}}).order() == 6);
}

TEST_CASE("PGL2(5): order 120, degree 6, U1 of order 20, U2 of order 12") {
    NamedGroup ng = construct_named_group("pgl2_5");
    CHECK(ng.group().size() == 120);
    CHECK(ng.group().degree() == 6);
    CHECK(ng.U1.order() == 20);
    CHECK(ng.U2.order() == 12);
    // PGL2(5) is abstractly S5: 7 conjugacy classes
    CHECK(ng.group().class_count() == 7);
}

TEST_CASE("trivial group has one class and one subgroup") {
    PermGroup t = PermGroup::generate("trivial", 3, {});
    CHECK(t.size() == 1);
    CHECK(t.class_count() == 1);
    auto subs = enumerate_subgroups(t);
    CHECK(subs.size() == 1);
}

TEST_CASE("PSL3(2): order 168, class sizes {1,21,42,56,24,24}") {
    NamedGroup ng = construct_psl3_2();
    CHECK(ng.group().size() == 168);
    CHECK(ng.group().degree() == 7);
    CHECK(ng.U1.order() == 24);
    CHECK(ng.U2.order() == 21);
    auto sizes = ng.group().class_sizes();
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 21, 24, 24, 42, 56});
}

TEST_CASE("coset actions: PSL3(2) on U2 cosets is faithful and 2-transitive of degree 8") {
    NamedGroup ng = construct_psl3_2();
    CosetAction ca = coset_action(ng.group(), ng.U2);
    CHECK(ca.action.degree == 8);
    CHECK(ca.kernel_ids.size() == 1); // faithful
    CHECK(ca.image_order == 168);
    // 2-transitivity: ordered pairs form one orbit
    std::set<std::pair<uint16_t, uint16_t>> pairs;
    for (const auto& img : ca.action.image) pairs.emplace(img[0], img[1]);
    CHECK(pairs.size() == 8 * 7);
}

TEST_CASE("coset action on the trivial subgroup is the regular action") {
    NamedGroup ng = construct_named_group("pgl2_4");
    CHECK(ng.group().size() == 60); // PGL2(4) = A5
    Subgroup triv;
    triv.parent = &ng.group();
    triv.ids = {0};
    triv.gen_ids = {0};
    CosetAction ca = coset_action(ng.group(), triv);
    CHECK(ca.action.degree == 60);
    CHECK(ca.kernel_ids.size() == 1);
    // regular: no nonidentity element fixes a point
    for (uint32_t id = 1; id < ng.group().size(); ++id) {
        unsigned fixed = 0;
        for (unsigned pt = 0; pt < 60; ++pt)
            if (ca.action.image[id][pt] == pt) ++fixed;
        CHECK(fixed == 0);
    }
}

TEST_CASE("check_k_covering: PGL2(5) is 2-covered, never 1-covered") {
    NamedGroup ng = construct_named_group("pgl2_5");
    auto cert = check_k_covering(ng.group(), {ng.U1, ng.U2});
    CHECK(cert.covered);
    CHECK(cert.core_trivial);
    CHECK(cert.valid());
    CHECK(verify_covering_certificate(ng.group(), {ng.U1, ng.U2}, cert));
    CHECK(covered_naive(ng.group(), {ng.U1, ng.U2}));

    auto cert1 = check_k_covering(ng.group(), {ng.U1});
    CHECK_FALSE(cert1.covered);
    // the witness element genuinely avoids all conjugates of U1
    bool in_some_conjugate = false;
    for (uint32_t x = 0; x < ng.group().size(); ++x)
        if (ng.U1.contains_id(ng.group().conj(cert1.uncovered_element, x))) in_some_conjugate = true;
    CHECK_FALSE(in_some_conjugate);
}

TEST_CASE("class-based covering agrees with the naive oracle on small groups") {
    for (const char* name : {"pgl2_4", "pgl2_5", "psl3_2", "agl2_2", "agl2_3"}) {
        NamedGroup ng = construct_named_group(name);
        REQUIRE(ng.group().size() <= 5000);
        auto cert = check_k_covering(ng.group(), {ng.U1, ng.U2});
        CHECK(cert.covered == covered_naive(ng.group(), {ng.U1, ng.U2}));
        // drop U2: the two methods must still agree
        auto cert1 = check_k_covering(ng.group(), {ng.U1});
        CHECK(cert1.covered == covered_naive(ng.group(), {ng.U1}));
    }
}

TEST_CASE("AGL2(3): construction and the metacyclic lemma") {
    NamedGroup ng = construct_named_group("agl2_3");
    CHECK(ng.group().size() == 9 * 48);
    CHECK(ng.U1.order() == 48);
    CHECK(ng.U2.order() == 9 * 12); // V : H with |H| = 12
    auto cert = check_k_covering(ng.group(), {ng.U1, ng.U2});
    CHECK(cert.valid());
    auto rep = metacyclic_subgroups_covered(ng.group(), ng.U1, ng.U2);
    CHECK(rep.all_covered);
    CHECK(rep.exceptions.empty());
}

TEST_CASE("AGL3(2): covering and the metacyclic lemma") {
    NamedGroup ng = construct_named_group("agl3_2");
    CHECK(ng.group().size() == 8 * 168);
    auto cert = check_k_covering(ng.group(), {ng.U1, ng.U2});
    CHECK(cert.valid());
    auto rep = metacyclic_subgroups_covered(ng.group(), ng.U1, ng.U2);
    CHECK(rep.all_covered);
}

TEST_CASE("subgroup membership - fixed point equivalence") {
    NamedGroup ng = construct_psl3_2();
    CosetAction c1 = coset_action(ng.group(), ng.U1);
    Rng rng(3);
    for (int i = 0; i < 30; ++i) {
        uint32_t g = static_cast<uint32_t>(rng() % ng.group().size());
        std::vector<uint32_t> gens{g};
        bool fixes = c1.action.fixes_any_point(gens);
        bool contained = false;
        for (uint32_t x = 0; x < ng.group().size() && !contained; ++x)
            if (ng.U1.contains_id(ng.group().conj(g, x))) contained = true;
        CHECK(fixes == contained);
    }
}

TEST_CASE("PSL3(2): uncovered solvable subgroups are exactly S4 and A4") {
    NamedGroup ng = construct_psl3_2();
    auto subs = enumerate_subgroups(ng.group(), &ng.U1, &ng.U2);
    std::set<std::string> uncovered_solvable;
    for (const auto& s : subs) {
        if (s.order == ng.group().size()) continue;
        if (s.solvable && !s.covered) uncovered_solvable.insert(s.label);
        // every proper metacyclic subgroup is covered
        if (s.metacyclic && s.order > 1 && s.order < ng.group().size()) CHECK(s.covered);
    }
    CHECK(uncovered_solvable == std::set<std::string>{"S4", "A4"});
}

TEST_CASE("cycle_type_pairs: order-7 elements of PSL3(2) give ([7], [7,1])") {
    NamedGroup ng = construct_psl3_2();
    auto pairs = cycle_type_pairs(ng.group(), ng.action1, ng.action2);
    CHECK(pairs.count({Partition{7}, Partition{7, 1}}) == 1);
    CHECK(pairs.count({Partition{1, 1, 1, 1, 1, 1, 1}, Partition{1, 1, 1, 1, 1, 1, 1, 1}}) == 1);
    for (const auto& [p1, p2] : pairs)
        if (p1 == Partition{7}) CHECK(p2 == Partition{7, 1});
}

TEST_CASE("M11: order, transitivity, index-12 subgroup, Frobenius fingerprint") {
    NamedGroup ng = construct_named_group("m11");
    CHECK(ng.group().size() == 7920);
    CHECK(ng.U1.order() == 720);
    CHECK(ng.U2.order() == 660);
    CHECK(ng.action2.degree == 12);
    auto pairs = cycle_type_pairs(ng.group(), ng.action1, ng.action2);
    CHECK(pairs.count({Partition{11}, Partition{11, 1}}) == 1);
    auto cert = check_k_covering(ng.group(), {ng.U1, ng.U2});
    CHECK(cert.valid());
}

TEST_CASE("orbit partitions of subgroups") {
    NamedGroup ng = construct_named_group("pgl2_5");
    // the Singer cycle inside U2 acts regularly on the 6 points
    uint32_t singer = 0;
    for (uint32_t id = 1; id < ng.group().size(); ++id)
        if (element_order(ng.group(), id) == 6) {
            singer = id;
            break;
        }
    REQUIRE(singer != 0);
    std::vector<uint32_t> cyc{singer};
    Subgroup s;
    s.parent = &ng.group();
    s.gen_ids = cyc;
    s.ids = closure_ids(ng.group(), cyc);
    CHECK(orbit_partitions_of_subgroup(s, ng.action1) == Partition{6});
    // a point stabilizer has a fixed point
    auto part = orbit_partitions_of_subgroup(ng.U1, ng.action1);
    CHECK(std::find(part.begin(), part.end(), 1u) != part.end());
}

TEST_CASE("isomorphism labels recognize the named small groups") {
    NamedGroup ng = construct_psl3_2();
    CHECK(isomorphism_label(ng.group(), ng.U1.ids) == "S4");
    auto subs = enumerate_subgroups(ng.group(), nullptr, nullptr);
    bool saw_a4 = false, saw_s4 = false, saw_c7 = false;
    for (const auto& s : subs) {
        if (s.label == "A4") saw_a4 = true;
        if (s.label == "S4") saw_s4 = true;
        if (s.label == "C7") saw_c7 = true;
    }
    CHECK(saw_a4);
    CHECK(saw_s4);
    CHECK(saw_c7);
}

TEST_CASE("construct_named_group rejects out-of-scope groups") {
    CHECK_THROWS_AS(construct_named_group("agsp4_3"), TooLarge);
    CHECK_THROWS_AS(construct_named_group("nonsense"), std::invalid_argument);
}
