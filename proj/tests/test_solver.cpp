#include <catch2/catch_amalgamated.hpp>

#include "qll/numkernel/intmat.hpp"
#include "qll/numkernel/zerodim.hpp"

using namespace qll;

static MPoly parse_terms(const FieldPtr& K, int nv,
                         std::initializer_list<std::pair<std::vector<int>, long>> terms) {
    MPoly p(nv);
    for (auto& [e, c] : terms) {
        MPoly::Expo ex(nv);
        for (int i = 0; i < nv; ++i) ex[i] = (std::uint16_t)e[i];
        p.add_term(ex, NFElem(K, rat_of(c)));
    }
    return p;
}

TEST_CASE("smith normal form") {
    auto check = [](IMat M) {
        auto s = smith_normal_form(M);
        // U M V == D
        IMat P = s.U * M * s.V;
        for (int i = 0; i < P.rows; ++i)
            for (int j = 0; j < P.cols; ++j) REQUIRE(P[i][j] == s.D[i][j]);
        for (size_t i = 0; i + 1 < s.diag.size(); ++i)
            if (sgn(s.diag[i]) != 0)
                REQUIRE(sgn(s.diag[i + 1] % s.diag[i]) == 0);
        // unimodular transforms
        Mat<Rat> U(P.rows, P.rows);
        for (int i = 0; i < P.rows; ++i)
            for (int j = 0; j < P.rows; ++j) U[i][j] = Rat(s.U[i][j]);
        REQUIRE(abs(mat_det(U)) == Rat(1));
    };
    IMat A(2, 2);
    A[0][0] = 2; A[1][1] = 2;
    check(A);
    auto s = smith_normal_form(A);
    REQUIRE(s.diag == std::vector<Int>{Int(2), Int(2)});

    IMat B(2, 2);
    B[0][0] = 8; B[0][1] = 4; B[1][0] = 4; B[1][1] = 8;
    check(B);
    auto sb = smith_normal_form(B);
    REQUIRE(sb.diag == std::vector<Int>{Int(4), Int(12)});

    IMat I3 = imat_identity(3);
    auto si = smith_normal_form(I3);
    REQUIRE(si.diag == std::vector<Int>{Int(1), Int(1), Int(1)});

    // singular matrix
    IMat C(2, 3);
    C[0][0] = 2; C[0][1] = 4; C[0][2] = 6;
    C[1][0] = 1; C[1][1] = 2; C[1][2] = 3;
    check(C);
    auto sc = smith_normal_form(C);
    REQUIRE(sc.diag[0] == 1);
    REQUIRE(sc.diag[1] == 0);
}

TEST_CASE("lattice enumeration") {
    Mat<Rat> A(2, 2);
    A[0][0] = Rat(1); A[1][1] = Rat(1);
    std::vector<Rat> w{Rat(0), Rat(0)};
    int count = 0;
    enumerate_form_values(A, w, rat_of(2), [&](const std::vector<Int>& x) {
        REQUIRE(x[0] * x[0] + x[1] * x[1] == 2);
        ++count;
    });
    REQUIRE(count == 4);

    // shifted center: (x+1/2)^2 + y^2 = 1/4 -> x in {0,-1}, y = 0
    std::vector<Rat> w2{rat_of(1, 2), Rat(0)};
    count = 0;
    enumerate_form_values(A, w2, rat_of(1, 4), [&](const std::vector<Int>&) { ++count; });
    REQUIRE(count == 2);
}

TEST_CASE("LLL on a skewed gram") {
    // gram of basis (1,0), (1000,1): huge first entry reduces
    Mat<Rat> G(2, 2);
    G[0][0] = Rat(1); G[0][1] = Rat(1000); G[1][0] = Rat(1000); G[1][1] = Rat(1000001);
    auto r = lll_reduce_gram(G);
    REQUIRE(r.gram[0][0] <= Rat(2));
    REQUIRE(r.gram[1][1] <= Rat(2));
}

TEST_CASE("zero-dim: u^2 - 2") {
    auto K = NumberField::rationals();
    auto p = parse_terms(K, 1, {{{2}, 1}, {{0}, -2}});
    auto sol = solve_zero_dim({mpoly_to_gb(p)}, 1, K);
    REQUIRE(sol.count() == 2);
    REQUIRE(sol.quotient_dim == 2);
    REQUIRE(sol.factors.size() == 1);
}

TEST_CASE("zero-dim: circle and line") {
    auto K = NumberField::rationals();
    auto f1 = parse_terms(K, 2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}});
    auto f2 = parse_terms(K, 2, {{{1, 0}, 1}, {{0, 1}, -1}});
    auto sol = solve_zero_dim({mpoly_to_gb(f1), mpoly_to_gb(f2)}, 2, K);
    REQUIRE(sol.count() == 2);
    // both coordinates should agree (x = y on the line)
    REQUIRE(sol.coords[0] == sol.coords[1]);
}

TEST_CASE("zero-dim: multiplicity handled by radical") {
    auto K = NumberField::rationals();
    // (x-1)^2 = 0, y - 2 = 0 : one solution, quotient dim 2
    auto f1 = parse_terms(K, 2, {{{2, 0}, 1}, {{1, 0}, -2}, {{0, 0}, 1}});
    auto f2 = parse_terms(K, 2, {{{0, 1}, 1}, {{0, 0}, -2}});
    auto sol = solve_zero_dim({mpoly_to_gb(f1), mpoly_to_gb(f2)}, 2, K);
    REQUIRE(sol.quotient_dim == 2);
    REQUIRE(sol.count() == 1);
}

TEST_CASE("zero-dim: positive dimensional detected") {
    auto K = NumberField::rationals();
    auto f1 = parse_terms(K, 2, {{{1, 0}, 1}, {{0, 1}, -1}}); // x - y only
    REQUIRE_THROWS_AS(solve_zero_dim({mpoly_to_gb(f1)}, 2, K), positive_dimensional);
}

TEST_CASE("zero-dim: count invariant under linear change of unknowns") {
    auto K = NumberField::rationals();
    auto f1 = parse_terms(K, 2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -5}});
    auto f2 = parse_terms(K, 2, {{{1, 1}, 1}, {{0, 0}, -2}});
    auto sol = solve_zero_dim({mpoly_to_gb(f1), mpoly_to_gb(f2)}, 2, K);
    REQUIRE(sol.count() == 4);

    // substitute x -> x + y, y -> x - 2y  (invertible)
    auto X = parse_terms(K, 2, {{{1, 0}, 1}, {{0, 1}, 1}});
    auto Y = parse_terms(K, 2, {{{1, 0}, 1}, {{0, 1}, -2}});
    auto g1 = f1.subst({X, Y});
    auto g2 = f2.subst({X, Y});
    auto sol2 = solve_zero_dim({mpoly_to_gb(g1), mpoly_to_gb(g2)}, 2, K);
    REQUIRE(sol2.count() == 4);
}

TEST_CASE("zero-dim: solve over a number field") {
    auto K = NumberField::create("s", {Int(-2), Int(0), Int(1)}); // Q(sqrt 2)
    auto s = NFElem::generator(K);
    // x^2 - s = 0 (roots: 2^(1/4) etc.), y - x = 0
    MPoly f1(2), f2(2);
    f1.add_term({2, 0}, NFElem::one_of(K));
    f1.add_term({0, 0}, -s);
    f2.add_term({0, 1}, NFElem::one_of(K));
    f2.add_term({1, 0}, -NFElem::one_of(K));
    auto sol = solve_zero_dim({mpoly_to_gb(f1), mpoly_to_gb(f2)}, 2, K);
    REQUIRE(sol.count() == 2);
    REQUIRE(sol.factors.size() == 1); // x^2 - s irreducible over Q(sqrt2)
}
