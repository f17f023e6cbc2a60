#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "opforge/matrix.hpp"

using namespace opforge;

namespace {

Matrix mat(const CoeffRing& ring, std::vector<std::vector<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(ring, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rows[i][j]) m.set(i, j, rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("ring scalar arithmetic") {
    CoeffRing q = CoeffRing::rationals();
    CoeffRing z = CoeffRing::integers();
    CoeffRing f5 = CoeffRing::prime_field(5);

    CHECK(q.div(mpq_class(1), mpq_class(3)) == mpq_class(1, 3));
    CHECK_THROWS_AS(z.norm(mpq_class(1, 2)), WrongRing);
    CHECK(z.div(mpq_class(6), mpq_class(3)) == 2);
    CHECK_THROWS_AS(z.div(mpq_class(5), mpq_class(3)), WrongRing);
    CHECK(f5.norm(mpq_class(7)) == 2);
    CHECK(f5.norm(mpq_class(1, 2)) == 3);  // 2^{-1} = 3 mod 5
    CHECK(f5.inv(mpq_class(4)) == 4);
    CHECK(f5.mul(mpq_class(3), mpq_class(4)) == 2);
    CHECK_THROWS(CoeffRing::prime_field(6));
    CHECK(parse_scalar("-3/6") == mpq_class(-1, 2));
    CHECK(scalar_to_string(mpq_class(-1, 2)) == "-1/2");
}

TEST_CASE("matrix basics") {
    CoeffRing q = CoeffRing::rationals();
    Matrix a = mat(q, {{1, 2}, {3, 4}});
    Matrix b = mat(q, {{0, 1}, {1, 0}});
    CHECK((a * b) == mat(q, {{2, 1}, {4, 3}}));
    CHECK((a + b) == mat(q, {{1, 3}, {4, 4}}));
    CHECK(a.transpose() == mat(q, {{1, 3}, {2, 4}}));
    CHECK(a.hstack(b).cols() == 4);
    CHECK(a.vstack(b).rows() == 4);
    CHECK(b.is_signed_permutation());
    CHECK(!a.is_signed_permutation());
    CHECK(mat(q, {{-1, 0}, {0, 1}}).is_signed_permutation());
}

TEST_CASE("rank kernel solve over Z and Q") {
    CoeffRing z = CoeffRing::integers();
    Matrix m = mat(z, {{2, 4}, {6, 8}});
    CHECK(rank(m) == 2);

    Matrix row = mat(z, {{2, 4}});
    Matrix k = kernel_basis(row);
    CHECK(k.cols() == 1);
    // kernel lattice generated by (2, -1)
    Matrix expect = mat(z, {{2}, {-1}});
    CHECK((k == expect || k == -expect));
    CHECK((row * k).is_zero());

    // integral solvability
    auto s1 = solve(m, mat(z, {{2}, {6}}));
    REQUIRE(s1.has_value());
    CHECK((m * *s1) == mat(z, {{2}, {6}}));
    CHECK(!solve(m, mat(z, {{1}, {0}})).has_value());

    // same system over Q is solvable
    CoeffRing q = CoeffRing::rationals();
    Matrix mq = mat(q, {{2, 4}, {6, 8}});
    auto s2 = solve(mq, mat(q, {{1}, {0}}));
    REQUIRE(s2.has_value());
    CHECK((mq * *s2) == mat(q, {{1}, {0}}));
}

TEST_CASE("smith normal form frozen values") {
    CoeffRing z = CoeffRing::integers();
    Matrix m = mat(z, {{2, 4}, {6, 8}});
    SmithDecomposition s = smith_normal_form(m);
    REQUIRE(s.invariant_factors.size() == 2);
    CHECK(s.invariant_factors[0] == 2);
    CHECK(s.invariant_factors[1] == 4);
    CHECK((s.left * s.left_inv) == Matrix::identity(z, 2));
    CHECK((s.right * s.right_inv) == Matrix::identity(z, 2));
    Matrix d = s.left * m * s.right;
    CHECK(d == mat(z, {{2, 0}, {0, 4}}));

    CokernelPresentation ck = cokernel_presentation(m);
    CHECK(ck.free_rank == 0);
    REQUIRE(ck.torsion.size() == 2);
    CHECK(ck.torsion[0] == 2);
    CHECK(ck.torsion[1] == 4);
}

TEST_CASE("smith normal form randomized divisibility chain") {
    CoeffRing z = CoeffRing::integers();
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 8), val(-20, 20);
    for (int trial = 0; trial < 40; ++trial) {
        int r = dim(rng), c = dim(rng);
        Matrix m(z, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                int v = val(rng);
                if (v) m.set(i, j, v);
            }
        SmithDecomposition s = smith_normal_form(m);
        Matrix d = s.left * m * s.right;
        for (const auto& [rc, v] : d.entries()) {
            CHECK(rc.first == rc.second);
            CHECK(rc.first < static_cast<int>(s.invariant_factors.size()));
        }
        for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
            CHECK(d.get(static_cast<int>(i), static_cast<int>(i)) == s.invariant_factors[i]);
            CHECK(s.invariant_factors[i] > 0);
            if (i + 1 < s.invariant_factors.size()) {
                mpq_class ratio = s.invariant_factors[i + 1] / s.invariant_factors[i];
                ratio.canonicalize();
                CHECK(ratio.get_den() == 1);
            }
        }
        CHECK((s.left * s.left_inv) == Matrix::identity(z, r));
        CHECK((s.right * s.right_inv) == Matrix::identity(z, c));
        CHECK(static_cast<int>(s.invariant_factors.size()) == rank(m));
    }
}

TEST_CASE("span basis and membership") {
    CoeffRing z = CoeffRing::integers();
    Matrix span = mat(z, {{2, 4, 2}, {0, 2, 4}});
    Matrix basis = span_basis(span);
    CHECK(basis.cols() == 2);
    // (2,0) and (0,2) generate; (1,1) is not in the lattice
    CHECK(in_span(span, mat(z, {{2}, {2}})));
    CHECK(!in_span(span, mat(z, {{1}, {1}})));

    CoeffRing q = CoeffRing::rationals();
    Matrix spq = mat(q, {{1, 2, 3}, {2, 4, 6}});
    CHECK(span_basis(spq).cols() == 1);
    CHECK(in_span(spq, mat(q, {{5}, {10}})));
    CHECK(!in_span(spq, mat(q, {{1}, {0}})));
}

TEST_CASE("quotient by span") {
    CoeffRing q = CoeffRing::rationals();
    // quotient of Q^3 by span{(1,1,0),(0,1,1)}
    Matrix span = mat(q, {{1, 0}, {1, 1}, {0, 1}});
    QuotientData qd = quotient_by_span(span, 3, q);
    CHECK(qd.quotient_rank == 1);
    CHECK((qd.projection * span).is_zero());
    CHECK((qd.projection * qd.section) == Matrix::identity(q, 1));

    CoeffRing z = CoeffRing::integers();
    // saturated sublattice: free quotient
    Matrix sat = mat(z, {{1}, {2}, {0}});
    QuotientData zq = quotient_by_span(sat, 3, z);
    CHECK(zq.quotient_rank == 2);
    CHECK((zq.projection * sat).is_zero());
    CHECK((zq.projection * zq.section) == Matrix::identity(z, 2));
    // non-saturated: Z/2 torsion appears
    Matrix unsat = mat(z, {{2}, {0}});
    CHECK_THROWS_AS(quotient_by_span(unsat, 2, z), TorsionQuotient);
}

TEST_CASE("sigma_2 coinvariants") {
    CoeffRing q = CoeffRing::rationals();
    // regular representation on k^2: swap
    Matrix swap = mat(q, {{0, 1}, {1, 0}});
    CoinvariantsResult co = group_coinvariants({swap}, {{1, 1}}, 2);
    CHECK(co.free_rank == 1);
    CHECK(co.torsion.empty());
    // both basis vectors map to the same class
    CHECK(co.projection.columns({0}) == co.projection.columns({1}));

    // sign representation over Q: coinvariants vanish
    Matrix sign = mat(q, {{-1}});
    CoinvariantsResult cs = group_coinvariants({sign}, {{1, 1}}, 1);
    CHECK(cs.free_rank == 0);

    // sign representation over F_2 is trivial: rank 1
    CoeffRing f2 = CoeffRing::prime_field(2);
    Matrix sign2 = mat(f2, {{-1}});
    CoinvariantsResult c2 = group_coinvariants({sign2}, {{1, 1}}, 1);
    CHECK(c2.free_rank == 1);

    // relation that fails to act as the identity is rejected
    CHECK_THROWS_AS(group_coinvariants({swap}, {{1}}, 2), NotAnAction);
}

TEST_CASE("coinvariants agree with averaging idempotent in char 0") {
    CoeffRing q = CoeffRing::rationals();
    std::mt19937 rng(777);
    // a few small permutation/signed actions on k^n
    struct Case {
        std::vector<Matrix> gens;
        std::vector<std::vector<int>> rels;
        int dim;
    };
    std::vector<Case> cases;
    // S_3 on k^3 by permutation matrices, gens = (12), (23)
    Matrix s12 = mat(q, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    Matrix s23 = mat(q, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
    cases.push_back({{s12, s23}, {{1, 1}, {2, 2}, {1, 2, 1, 2, 1, 2}}, 3});
    // C_4 acting on k^2 by rotation-by-signs
    Matrix rot = mat(q, {{0, -1}, {1, 0}});
    cases.push_back({{rot}, {{1, 1, 1, 1}}, 2});
    for (const auto& cse : cases) {
        std::vector<Matrix> grp = generate_matrix_group(cse.gens, cse.dim, 24);
        Matrix avg(q, cse.dim, cse.dim);
        for (const Matrix& g : grp) avg = avg + g;
        avg = avg.scaled(mpq_class(1, static_cast<long>(grp.size())));
        CoinvariantsResult co = group_coinvariants(cse.gens, cse.rels, cse.dim);
        CHECK(co.free_rank == rank(avg));
    }
}

TEST_CASE("generate_matrix_group sizes") {
    CoeffRing q = CoeffRing::rationals();
    Matrix s12 = mat(q, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
    Matrix s23 = mat(q, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
    CHECK(generate_matrix_group({s12, s23}, 3).size() == 6);
    CHECK_THROWS_AS(generate_matrix_group({s12, s23}, 3, 4), NotAnAction);
}
