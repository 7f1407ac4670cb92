#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "supercauchy/json_io.hpp"

#include "generators.hpp"

using namespace supercauchy;

namespace {

Json complex_doc() {
    return Json{
        {"name", "C"},
        {"p_plus_1", 2},
        {"q", 0},
        {"gamma", Json::array({
            Json::array({Json::array({1, 0}), Json::array({0, 1})}),
            Json::array({Json::array({0, 1}), Json::array({-1, 0})}),
        })}};
}

// Lambda_1 = eps_1 Lambda_0 over a 2-dim Lambda_0 with e_1^2 = sign e_0;
// eps_j = eps_1 e_{j-1}, all eps products vanish.
AlgebraPtr epsilon_extension(int sign) {
    const int d = 4;
    RatVec g(d * d * d, Rat(0));
    auto set = [&](int i, int j, int k, int v) { g[(i * d + j) * d + k] = v; };
    for (int j = 0; j < d; ++j) {
        set(0, j, j, 1);
        set(j, 0, j, 1);
    }
    set(1, 1, 0, sign);
    set(1, 2, 3, 1);  // e1 eps1 = eps2
    set(2, 1, 3, 1);
    set(1, 3, 2, sign);  // e1 eps2 = e1^2 eps1 = sign eps1
    set(3, 1, 2, sign);
    A1Data a1;
    a1.s = {1, 3};
    Element e0(d), e1(d);
    e0.c[0] = 1;
    e1.c[1] = 1;
    a1.a = {e0, e1};
    return std::make_shared<Algebra>(sign < 0 ? "C+epsC" : "H+epsH", 2, 2, g, a1);
}

}  // namespace

TEST_CASE("parse: complex document") {
    AlgebraPtr a = algebra_from_json(complex_doc());
    CHECK(a->name() == "C");
    CHECK(a->p_plus_1() == 2);
    CHECK(a->q() == 0);
    CHECK(a->mul(a->basis(1), a->basis(1)) == -a->basis(0));
}

TEST_CASE("parse: unit axiom failure reports the offending indices") {
    Json doc = complex_doc();
    doc["gamma"][0][1][1] = 0;  // gamma(0,1,1) must be 1
    CHECK_THROWS_WITH_AS(algebra_from_json(doc), "unit axiom violated at (0,1)",
                         Error);
}

TEST_CASE("parse: example4 document round-trips") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    const Json doc = algebra_to_json(*e4);
    AlgebraPtr back = algebra_from_json(doc);
    CHECK(back->p_plus_1() == 6);
    CHECK(back->q() == 4);
    const int d = e4->dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) CHECK(back->gamma(i, j, k) == e4->gamma(i, j, k));
    CHECK(back->check_A1().pass);
}

TEST_CASE("parse: a1 witness rows of full length") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    Json doc = algebra_to_json(*e4);
    for (auto& row : doc["a1"]["a"])
        for (int k = 0; k < e4->q(); ++k) row.push_back(0);  // pad to p+1+q
    AlgebraPtr back = algebra_from_json(doc);
    CHECK(back->check_A1().pass);
}

TEST_CASE("parse: rational encodings") {
    CHECK(rat_from_string("-0.25") == Rat(-1, 4));
    CHECK(rat_from_string("0.125") == Rat(1, 8));
    CHECK(rat_from_string("-3/4") == Rat(-3, 4));
    CHECK(rat_from_string("01/002") == Rat(1, 2));
    CHECK(rat_from_string("7") == Rat(7));
    CHECK_THROWS_AS(rat_from_string("1/0"), Error);
    CHECK_THROWS_AS(rat_from_string("1.2.3"), Error);
    CHECK_THROWS_AS(rat_from_string("x"), Error);

    // decimal strings in documents parse exactly
    Json doc = complex_doc();
    doc["gamma"][1][1][0] = "-1.0";
    AlgebraPtr a = algebra_from_json(doc);
    CHECK(a->gamma(1, 1, 0) == Rat(-1));
}

TEST_CASE("parse: dimension mismatch") {
    Json doc = complex_doc();
    doc["gamma"][1].erase(1);
    CHECK_THROWS_AS(algebra_from_json(doc), Error);
}

TEST_CASE("multiply") {
    AlgebraPtr c = Algebra::builtin("complex");
    CHECK(c->mul(c->basis(1), c->basis(1)) == -c->basis(0));

    AlgebraPtr e4 = Algebra::builtin("example4");
    SplitMix64 rng(7);
    const Element a = testgen::random_element(*e4, rng);
    CHECK(e4->mul(e4->basis(0), a) == a);

    // eps1 eps3 = -e3 (basis indices 6 and 8)
    CHECK(e4->mul(e4->basis(6), e4->basis(8)) == -e4->basis(3));

    Element tooshort(3);
    CHECK_THROWS_AS(e4->mul(tooshort, a), Error);
}

TEST_CASE("supercommutator vanishes on a valid CSA and detects corruption") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    for (int i = 0; i < e4->dim(); ++i)
        for (int j = 0; j < e4->dim(); ++j)
            CHECK(e4->supercommutator(e4->basis(i), e4->basis(j)).is_zero());

    CHECK(e4->supercommutator(e4->basis(0), e4->basis(0)).is_zero());

    // corrupt the table: eps1 eps2 = eps2 eps1 = e2 != 0 breaks antisymmetry
    Json doc = algebra_to_json(*e4);
    doc["gamma"][6][7][2] = 1;
    doc["gamma"][7][6][2] = 1;
    AlgebraPtr bad = algebra_from_json(doc);
    const Element br = bad->supercommutator(bad->basis(6), bad->basis(7));
    CHECK_FALSE(br.is_zero());
    CHECK(br == Rat(2) * bad->basis(2));
}

TEST_CASE("validate_csa: example4 passes exhaustively") {
    const ValidationReport rep = Algebra::builtin("example4")->validate();
    for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.witness);
        CHECK(c.pass);
    }
    CHECK(rep.valid());
}

TEST_CASE("validate_csa: clifford(2) is graded but not supercommutative") {
    // generators square to -e0, so odd-odd supercommutators cannot vanish;
    // unit, parity closure and associativity do hold
    const AlgebraPtr cl = Algebra::builtin("clifford(2)");
    const ValidationReport rep = cl->validate();
    CHECK(rep.find("unit")->pass);
    CHECK(rep.find("parity_closure")->pass);
    CHECK(rep.find("associativity")->pass);
    CHECK_FALSE(rep.find("supercommutativity")->pass);
}

TEST_CASE("validate_csa: broken antisymmetry is caught with a witness") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    Json doc = algebra_to_json(*e4);
    doc["gamma"][8][6][3] = -1;  // eps3 eps1 = -e3 = eps1 eps3: now symmetric
    AlgebraPtr bad = algebra_from_json(doc);
    const ValidationReport rep = bad->validate();
    CHECK_FALSE(rep.valid());
    const CheckItem* sym = rep.find("supercommutativity");
    CHECK_FALSE(sym->pass);
    CHECK(sym->witness.find("(6,8)") != std::string::npos);
}

TEST_CASE("check_A0 verdicts") {
    auto verdict = [](const char* name) {
        return Algebra::builtin(name)->check_A0().second;
    };
    CHECK(verdict("complex"));
    CHECK_FALSE(verdict("hyperbolic"));
    CHECK(verdict("example4"));
    CHECK(verdict("clifford(2)"));
    CHECK_FALSE(verdict("clifford(4)"));
    CHECK(verdict("clifford(6)"));

    const auto [s, ok] = Algebra::builtin("hyperbolic")->check_A0();
    CHECK_FALSE(ok);
    CHECK(s == Rat(2) * Algebra::builtin("hyperbolic")->basis(0));
}

TEST_CASE("check_A0 is basis-order independent") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    // permute e1 <-> e3 in the Lambda_0 basis and rebuild the table
    const int d = e4->dim();
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    std::swap(perm[1], perm[3]);
    RatVec g(d * d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                g[(i * d + j) * d + k] = e4->gamma(perm[i], perm[j], perm[k]);
    Algebra permuted("example4-permuted", 6, 4, g);
    CHECK(permuted.check_A0().second == e4->check_A0().second);
    CHECK(permuted.check_A0().first.is_zero());
}

TEST_CASE("check_A1") {
    SUBCASE("example4 witness") {
        const A1Report rep = Algebra::builtin("example4")->check_A1();
        CHECK(rep.pass);
        REQUIRE(rep.block_sums.size() == 2);
        CHECK(rep.block_sums[0].is_zero());
        CHECK(rep.block_sums[1].is_zero());
        CHECK(rep.relation_fails.empty());
    }
    SUBCASE("q = 0 is vacuous") {
        CHECK(Algebra::builtin("complex")->check_A1().pass);
    }
    SUBCASE("missing witness") {
        AlgebraPtr e4 = Algebra::builtin("example4");
        Json doc = algebra_to_json(*e4);
        doc.erase("a1");
        const A1Report rep = algebra_from_json(doc)->check_A1();
        CHECK_FALSE(rep.pass);
        CHECK(!rep.error.empty());
    }
    SUBCASE("Lambda_1 = eps_1 Lambda_0 reduces (A1) to (A0)") {
        AlgebraPtr good = epsilon_extension(-1);  // complex core: (A0) holds
        CHECK(good->validate().valid());
        CHECK(good->check_A0().second);
        CHECK(good->check_A1().pass);

        AlgebraPtr bad = epsilon_extension(+1);  // hyperbolic core: (A0) fails
        CHECK(bad->validate().valid());
        CHECK_FALSE(bad->check_A0().second);
        CHECK_FALSE(bad->check_A1().pass);
    }
}

TEST_CASE("annihilator") {
    SUBCASE("example4: span(e2..e5)") {
        AlgebraPtr e4 = Algebra::builtin("example4");
        const auto ann = e4->annihilator();
        CHECK(ann.size() == 4);
        for (const auto& lam : ann)
            for (int l = 0; l < e4->q(); ++l)
                CHECK(e4->mul(lam, e4->basis(e4->p_plus_1() + l)).is_zero());
        // each of e2..e5 lies in the span
        RatMat cols(e4->dim(), RatVec(ann.size()));
        for (size_t j = 0; j < ann.size(); ++j)
            for (int k = 0; k < e4->dim(); ++k) cols[k][j] = ann[j].c[k];
        for (int target = 2; target <= 5; ++target)
            CHECK(solve_consistent(cols, e4->basis(target).c).has_value());
    }
    SUBCASE("q = 0: the whole algebra") {
        CHECK(Algebra::builtin("complex")->annihilator().size() == 2);
    }
    SUBCASE("clifford(2): trivial") {
        CHECK(Algebra::builtin("clifford(2)")->annihilator().empty());
    }
}

TEST_CASE("min-norm representative modulo the annihilator") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    Element x = e4->basis(0) + e4->basis(2) - e4->basis(4);  // e0 + ann parts
    const Element rep = e4->min_norm_mod_annihilator(x);
    CHECK(rep == e4->basis(0));
}

TEST_CASE("builtin") {
    CHECK(Algebra::builtin("complex")->p_plus_1() == 2);
    CHECK(Algebra::builtin("example4")->dim() == 10);

    AlgebraPtr cl2 = Algebra::builtin("clifford(2)");
    CHECK(cl2->dim() == 4);
    CHECK(cl2->p_plus_1() == 2);
    // Lambda_0 = span(1, e1 e2) and (e1 e2)^2 = -1
    CHECK(cl2->mul(cl2->basis(1), cl2->basis(1)) == -cl2->basis(0));

    CHECK_THROWS_AS(Algebra::builtin("octonion"), Error);
    CHECK_THROWS_AS(Algebra::builtin("clifford(9)"), Error);
}

TEST_CASE("clifford generators anticommute: e_i e_j + e_j e_i = -2 delta_ij") {
    for (int k = 2; k <= 4; ++k) {
        AlgebraPtr cl = Algebra::builtin("clifford(" + std::to_string(k) + ")");
        // mirror the documented basis order to locate single-generator masks
        std::vector<int> order;
        for (int pass = 0; pass < 2; ++pass)
            for (int mask = 0; mask < (1 << k); ++mask)
                if (__builtin_popcount(unsigned(mask)) % 2 == pass) order.push_back(mask);
        std::vector<int> gen;
        for (int i = 0; i < (1 << k); ++i)
            if (__builtin_popcount(unsigned(order[i])) == 1) gen.push_back(i);
        REQUIRE(static_cast<int>(gen.size()) == k);
        for (int a : gen)
            for (int b : gen) {
                const Element lhs =
                    cl->mul(cl->basis(a), cl->basis(b)) + cl->mul(cl->basis(b), cl->basis(a));
                if (a == b)
                    CHECK(lhs == Rat(-2) * cl->basis(0));
                else
                    CHECK(lhs.is_zero());
            }
    }
}

TEST_CASE("multiply is bilinear (exact)") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    SplitMix64 rng(99);
    for (int t = 0; t < 25; ++t) {
        const Element a = testgen::random_element(*e4, rng);
        const Element b = testgen::random_element(*e4, rng);
        const Element c = testgen::random_element(*e4, rng);
        CHECK(e4->mul(a + b, c) == e4->mul(a, c) + e4->mul(b, c));
        const Rat s = testgen::small_rat(rng);
        CHECK(e4->mul(s * a, c) == s * e4->mul(a, c));
    }
}

TEST_CASE("double-precision product mirrors the exact one") {
    AlgebraPtr e4 = Algebra::builtin("example4");
    SplitMix64 rng(3);
    for (int t = 0; t < 10; ++t) {
        const Element a = testgen::random_element(*e4, rng);
        const Element b = testgen::random_element(*e4, rng);
        const VecD ad = a.to_doubles(), bd = b.to_doubles();
        VecD out(e4->dim());
        e4->mul_d(ad.data(), bd.data(), out.data());
        const VecD want = e4->mul(a, b).to_doubles();
        for (int k = 0; k < e4->dim(); ++k) CHECK(out[k] == doctest::Approx(want[k]).epsilon(1e-12));
    }
}
