#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "masseylab/cohomology.hpp"
#include "masseylab/expr.hpp"
#include "masseylab/models.hpp"
#include "support.hpp"

#include <random>

using namespace masseylab;

namespace {

Matrix random_symmetric(std::mt19937& gen, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rational v = testsupport::random_small_rational(gen);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    return m;
}

Matrix random_nondegenerate_symmetric(std::mt19937& gen, std::size_t n) {
    for (;;) {
        Matrix m = random_symmetric(gen, n);
        if (testsupport::oracle_rank(m) == n) return m;
    }
}

Matrix random_invertible(std::mt19937& gen, std::size_t n) {
    for (;;) {
        Matrix m = testsupport::random_matrix(gen, n, n);
        if (testsupport::oracle_rank(m) == n) return m;
    }
}

} // namespace

TEST_CASE("qk orbifold algebra: bases, betti, validation") {
    auto a = qk_orbifold_algebra({2, {}});
    CHECK(a->basis_names(2) == std::vector<std::string>{"a1", "a2"});
    CHECK(a->basis_names(4) == std::vector<std::string>{"Omega"});
    CHECK(betti_vector(a, 4) == std::vector<std::size_t>{1, 0, 2, 0, 1});
    CHECK(betti_vector(qk_orbifold_algebra({1, {}}), 4) ==
          std::vector<std::size_t>{1, 0, 1, 0, 1});
    CHECK(a->label() == "qk-orbifold(k=2,lambda=[1,1])");

    // a_i a_j = delta_ij lambda_i Omega
    auto b = qk_orbifold_algebra({2, {Rational(2), Rational(-3)}});
    CHECK(multiply(parse_expression("a1", b), parse_expression("a1", b)).to_string() ==
          "2*Omega");
    CHECK(multiply(parse_expression("a2", b), parse_expression("a2", b)).to_string() ==
          "-3*Omega");
    CHECK(multiply(parse_expression("a1", b), parse_expression("a2", b)).is_zero());

    CHECK_THROWS_AS(qk_orbifold_algebra({0, {}}), DomainError);
    CHECK_THROWS_AS(qk_orbifold_algebra({2, {Rational(1)}}), DomainError);
    CHECK_THROWS_AS(qk_orbifold_algebra({2, {Rational(1), Rational(0)}}), DomainError);
}

TEST_CASE("three-sasakian model: betti vector (1,0,k,0,0,k,0,1)") {
    for (int k = 1; k <= 4; ++k) {
        auto n = three_sasakian_model({k, {}});
        std::vector<std::size_t> expect = {1, 0, static_cast<std::size_t>(k), 0,
                                           0, static_cast<std::size_t>(k), 0, 1};
        CHECK(betti_vector(n, 7) == expect);
    }
    auto n2 = three_sasakian_model({2, {}});
    CHECK(n2->label() == "three-sasakian(k=2,lambda=[1,1])");
    CHECK(differentiate(parse_expression("z", n2)).to_string() == "Omega");
    auto h5 = cohomology_basis(n2, 5);
    REQUIRE(h5.dim() == 2);
    CHECK(h5.representatives[0].to_string() == "a1*z");
    CHECK(h5.representatives[1].to_string() == "a2*z");
    // nonzero lambdas only scale the table, never the betti vector
    auto skew = three_sasakian_model({3, {Rational(5), Rational(-1, 2), Rational(7, 3)}});
    CHECK(betti_vector(skew, 7) == std::vector<std::size_t>{1, 0, 3, 0, 0, 3, 0, 1});
}

TEST_CASE("cp3 blowup algebra: relations and betti") {
    auto m = cp3_blowup_algebra({4, RelationSign::minus});
    CHECK(betti_vector(m, 6) == std::vector<std::size_t>{1, 0, 5, 0, 5, 0, 1});
    CHECK(betti_vector(cp3_blowup_algebra({1, RelationSign::minus}), 6) ==
          std::vector<std::size_t>{1, 0, 2, 0, 2, 0, 1});
    CHECK(m->basis_names(2) ==
          std::vector<std::string>{"b", "a1", "a2", "a3", "a4"});
    CHECK(m->basis_names(6) == std::vector<std::string>{"b^3"});

    CHECK(multiply(parse_expression("b", m), parse_expression("b^2", m)).to_string() == "b^3");
    CHECK(multiply(parse_expression("a1", m), parse_expression("a1^2", m)).to_string() ==
          "-b^3");
    CHECK(multiply(parse_expression("a1", m), parse_expression("a2^2", m)).is_zero());
    CHECK(multiply(parse_expression("b", m), parse_expression("a1", m)).is_zero());
    CHECK(multiply(parse_expression("a1", m), parse_expression("a1", m)).to_string() == "a1^2");

    auto p = cp3_blowup_algebra({4, RelationSign::plus});
    CHECK(multiply(parse_expression("a1", p), parse_expression("a1^2", p)).to_string() == "b^3");
    CHECK(betti_vector(p, 6) == std::vector<std::size_t>{1, 0, 5, 0, 5, 0, 1});

    CHECK_THROWS_AS(cp3_blowup_algebra({0, RelationSign::minus}), DomainError);
}

TEST_CASE("sasaki circle model: betti, euler differential, l-independence") {
    auto c = sasaki_circle_model({4, 10, RelationSign::minus});
    CHECK(betti_vector(c, 7) == std::vector<std::size_t>{1, 0, 4, 0, 0, 4, 0, 1});
    CHECK(differentiate(parse_expression("x", c)) ==
          parse_expression("10*b - a1 - a2 - a3 - a4", c));
    CHECK(betti_vector(sasaki_circle_model({2, 7, RelationSign::minus}), 7) ==
          std::vector<std::size_t>{1, 0, 2, 0, 0, 2, 0, 1});
    for (int l : {1, 10, 1000}) {
        auto cl = sasaki_circle_model({3, l, RelationSign::minus});
        CHECK(betti_vector(cl, 7) == std::vector<std::size_t>{1, 0, 3, 0, 0, 3, 0, 1});
    }
    CHECK(c->label() == "sasaki-circle(k=4,l=10)");
    CHECK_THROWS_AS(sasaki_circle_model({4, 0, RelationSign::minus}), DomainError);
    CHECK_THROWS_AS(sasaki_circle_model({4, -3, RelationSign::minus}), DomainError);
}

TEST_CASE("H^5 of the circle model: dimension k two independent ways") {
    for (int k : {1, 3, 4}) {
        const int l = 10;
        auto c = sasaki_circle_model({k, l, RelationSign::minus});
        CHECK(betti_number(c, 5) == static_cast<std::size_t>(k));

        // independent way: kernel of multiplication by the Euler class,
        // H^4(M) -> H^6(M), computed in the base ring
        auto base = cp3_blowup_algebra({k, RelationSign::minus});
        Vec coords(base->dim(2), Rational(0));
        coords[0] = l;
        for (std::size_t i = 1; i < coords.size(); ++i) coords[i] = -1;
        auto euler_class = *class_of(Cochain(base, 2, coords));
        const std::size_t h4 = betti_number(base, 4);
        Matrix mult(betti_number(base, 6), h4);
        for (std::size_t t = 0; t < h4; ++t) {
            Vec image = cup(euler_class, basis_class(base, 4, t)).coords();
            for (std::size_t r = 0; r < image.size(); ++r) mult.at(r, t) = image[r];
        }
        CHECK(h4 - testsupport::oracle_rank(mult) == static_cast<std::size_t>(k));
    }
}

TEST_CASE("H^5 family: sign convention decides which printed basis closes") {
    const int k = 4, l = 10;
    auto minus = sasaki_circle_model({k, l, RelationSign::minus});
    auto plus = sasaki_circle_model({k, l, RelationSign::plus});
    for (int i = 1; i <= k; ++i) {
        const std::string ai = "a" + std::to_string(i);
        const std::string family_minus = std::to_string(l) + "*" + ai + "^2*x - b^2*x";
        const std::string family_plus = std::to_string(l) + "*" + ai + "^2*x + b^2*x";
        // with a_i^3 = -b^3 (printed relation), the closed family is (l a_i^2 - b^2) x
        CHECK(differentiate(parse_expression(family_minus, minus)).is_zero());
        CHECK(!differentiate(parse_expression(family_plus, minus)).is_zero());
        CHECK(!class_of(parse_expression(family_minus, minus))->is_zero());
        // with a_i^3 = +b^3, the printed family (l a_i^2 + b^2) x is the closed one
        CHECK(differentiate(parse_expression(family_plus, plus)).is_zero());
        CHECK(!differentiate(parse_expression(family_minus, plus)).is_zero());
    }
}

TEST_CASE("every built-in model passes the axiom suite") {
    std::vector<AlgebraHandle> models;
    models.push_back(qk_orbifold_algebra({1, {}}));
    models.push_back(qk_orbifold_algebra({3, {Rational(2), Rational(1), Rational(-1, 3)}}));
    models.push_back(three_sasakian_model({2, {}}));
    models.push_back(cp3_blowup_algebra({3, RelationSign::minus}));
    models.push_back(cp3_blowup_algebra({2, RelationSign::plus}));
    models.push_back(sasaki_circle_model({4, 10, RelationSign::minus}));
    for (const auto& m : models) {
        AxiomReport report = verify_axioms(m);
        CHECK(report.ok());
        CHECK(report.checks_run > 0);
    }
}

TEST_CASE("model variant dispatch and determinism") {
    ModelSpec specs[] = {
        QKOrbifoldSpec{2, {}},
        ThreeSasakianSpec{{2, {}}},
        BlowupSpec{3, RelationSign::minus},
        CircleBundleSpec{2, 5, RelationSign::minus},
    };
    for (const auto& spec : specs) {
        auto first = build_model(spec);
        auto second = build_model(spec);
        CHECK(first->same_tables(*second));
        CHECK(model_label(spec) == first->label());
    }
    CHECK(model_label(ThreeSasakianSpec{{2, {}}}) == "three-sasakian(k=2,lambda=[1,1])");
    CHECK(model_label(BlowupSpec{3, RelationSign::plus}) == "cp3-blowup(k=3,sign=+)");
}

TEST_CASE("poincare pairing: qk and blowup Gram matrices") {
    auto id3 = poincare_gram(qk_orbifold_algebra({3, {}}), 4);
    CHECK(id3.all_nondegenerate);
    REQUIRE(id3.entries.size() == 3); // j = 0, 1, 2
    CHECK(id3.entries[2].gram == Matrix::identity(3));
    CHECK(id3.entries[1].gram.rows() == 0);

    auto skew = poincare_gram(qk_orbifold_algebra({2, {Rational(2), Rational(-3)}}), 4);
    Matrix expect(2, 2);
    expect.at(0, 0) = 2;
    expect.at(1, 1) = -3;
    CHECK(skew.entries[2].gram == expect);
    CHECK(skew.all_nondegenerate);

    auto blow = poincare_gram(cp3_blowup_algebra({4, RelationSign::minus}), 6);
    REQUIRE(blow.entries.size() == 4); // j = 0..3
    const Matrix& g24 = blow.entries[2].gram;
    REQUIRE(g24.rows() == 5);
    CHECK(rank(g24) == 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(g24.at(i, j) == (i == j ? (i == 0 ? Rational(1) : Rational(-1)) : Rational(0)));
    CHECK(blow.all_nondegenerate);

    auto sas = poincare_gram(three_sasakian_model({2, {Rational(2), Rational(-3)}}), 7);
    REQUIRE(sas.entries.size() == 4);
    Matrix l22(2, 2);
    l22.at(0, 0) = 2;
    l22.at(1, 1) = -3;
    CHECK(sas.entries[2].gram == l22);
    CHECK(sas.all_nondegenerate);
}

TEST_CASE("poincare pairing rejects and flags degenerate shapes") {
    // top degree must be one-dimensional
    CHECK_THROWS_AS(poincare_gram(cp3_blowup_algebra({1, RelationSign::minus}), 4), DomainError);

    // b2 = 1 with a^2 = 0: pairing in degree 2 is the 1x1 zero matrix
    ScAlgebraSpec sc;
    sc.degree_bound = 8;
    sc.basis_by_degree = {{"1"}, {}, {"a"}, {}, {"t"}};
    sc.basis_by_degree.resize(9);
    sc.unit = "1";
    sc.products = {{"a", "a", {}}, {"a", "t", {}}, {"t", "a", {}}, {"t", "t", {}}};
    auto degenerate = build_sc_algebra(sc);
    auto report = poincare_gram(degenerate, 4);
    CHECK(!report.all_nondegenerate);
    CHECK(report.entries[2].gram == Matrix(1, 1));
    CHECK(!report.entries[2].nondegenerate);
    CHECK(report.entries[0].nondegenerate); // H^0 x H^4 pairs 1 with t
}

TEST_CASE("diagonalize_pairing: frozen examples") {
    auto id = diagonalize_pairing(Matrix::identity(4));
    CHECK(id.transform == Matrix::identity(4));
    CHECK(id.diagonal == Matrix::identity(4));

    Matrix hyperbolic(2, 2);
    hyperbolic.at(0, 1) = 1;
    hyperbolic.at(1, 0) = 1;
    auto hd = diagonalize_pairing(hyperbolic);
    CHECK(hd.diagonal.at(0, 0) == Rational(2));
    CHECK(hd.diagonal.at(1, 1) == Rational(-1, 2));
    CHECK(hd.diagonal.at(0, 1) == Rational(0));
    CHECK(hd.transform.at(0, 0) == Rational(1));
    CHECK(hd.transform.at(1, 0) == Rational(1));
    CHECK(hd.transform.at(0, 1) == Rational(-1, 2));
    CHECK(hd.transform.at(1, 1) == Rational(1, 2));
    CHECK(hd.transform.transposed() * hyperbolic * hd.transform == hd.diagonal);

    Matrix degenerate(2, 2);
    degenerate.at(0, 0) = 1;
    CHECK_THROWS_AS(diagonalize_pairing(degenerate), DomainError);

    Matrix asym(2, 2);
    asym.at(0, 1) = 1;
    asym.at(1, 0) = 2;
    CHECK_THROWS_AS(diagonalize_pairing(asym), DomainError);

    Matrix rect(2, 3);
    CHECK_THROWS_AS(diagonalize_pairing(rect), DomainError);
}

TEST_CASE("diagonalize_pairing: P^T G P = D on 50 random nondegenerate inputs") {
    std::mt19937 gen(929292);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix g = random_nondegenerate_symmetric(gen, 5);
        auto result = diagonalize_pairing(g);
        CHECK(result.transform.transposed() * g * result.transform == result.diagonal);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(result.diagonal.at(i, i) != 0);
            for (std::size_t j = 0; j < 5; ++j)
                if (i != j) CHECK(result.diagonal.at(i, j) == 0);
        }
        CHECK(testsupport::oracle_rank(result.transform) == 5);
    }
}

TEST_CASE("signature is invariant under congruence") {
    std::mt19937 gen(939393);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix g = random_nondegenerate_symmetric(gen, 4);
        Matrix p = random_invertible(gen, 4);
        Matrix congruent = p.transposed() * g * p;
        auto s1 = signature_of_diagonal(diagonalize_pairing(g).diagonal);
        auto s2 = signature_of_diagonal(diagonalize_pairing(congruent).diagonal);
        CHECK(s1 == s2);
        CHECK(s1.first + s1.second == 4);
    }
}
