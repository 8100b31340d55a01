#include <catch2/catch_amalgamated.hpp>

#include "qll/numkernel/roots.hpp"
#include "qll/numkernel/zfactor.hpp"

#include <random>

using namespace qll;

static Poly<Rat> qp(std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (auto c : cs) v.push_back(rat_of(c));
    return Poly<Rat>(std::move(v));
}

TEST_CASE("polynomial basics over Q") {
    auto p = qp({-1, 0, 1});          // x^2 - 1
    auto q = qp({1, 1});              // x + 1
    auto [d, r] = poly_divmod(p, q);
    REQUIRE(r.zero());
    REQUIRE(d == qp({-1, 1}));
    REQUIRE(poly_gcd(p, q) == qp({1, 1}));
    REQUIRE(p.eval(rat_of(3)) == rat_of(8));
    REQUIRE(p.derivative() == qp({0, 2}));
}

TEST_CASE("squarefree decomposition") {
    // (t-1)^2 (t+2)
    auto p = qp({1, -2, 1}) * qp({2, 1});
    auto dec = poly_squarefree_decomposition(p);
    REQUIRE(dec.size() == 2);
    REQUIRE(dec[0].first == qp({2, 1}));
    REQUIRE(dec[0].second == 1);
    REQUIRE(dec[1].first == qp({-1, 1}));
    REQUIRE(dec[1].second == 2);

    // t^5
    auto t5 = Poly<Rat>(std::vector<Rat>{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});
    auto dec2 = poly_squarefree_decomposition(t5);
    REQUIRE(dec2.size() == 1);
    REQUIRE(dec2[0].second == 5);
    REQUIRE(dec2[0].first == qp({0, 1}));
}

TEST_CASE("resultants") {
    // res(t-1, t+1) = 2
    REQUIRE(poly_resultant(qp({-1, 1}), qp({1, 1})) == rat_of(2));
    // res(t^2, t+c) = c^2 with c = 5
    REQUIRE(poly_resultant(qp({0, 0, 1}), qp({5, 1})) == rat_of(25));
    // common root -> 0
    REQUIRE(poly_resultant(qp({-1, 1}) * qp({1, 1}), qp({-1, 1})) == Rat(0));
}

TEST_CASE("factorization over Z") {
    // (x^2+1)(x-3)(x+3)
    auto f = qp({1, 0, 1}) * qp({-3, 1}) * qp({3, 1});
    auto facs = qpoly_factor(f);
    REQUIRE(facs.size() == 3);
    int deg2 = 0;
    for (auto& [g, m] : facs) {
        REQUIRE(m == 1);
        if (g.degree() == 2) {
            ++deg2;
            REQUIRE(g == qp({1, 0, 1}));
        }
    }
    REQUIRE(deg2 == 1);

    // cyclotomic-ish: x^4+1 irreducible
    auto c8 = qpoly_factor(qp({1, 0, 0, 0, 1}));
    REQUIRE(c8.size() == 1);
    REQUIRE(c8[0].first.degree() == 4);

    // x^12 - 1 factors into cyclotomics: phi counts 1,1,2,2,2,4
    auto c12 = qpoly_factor(qp({-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
    REQUIRE(c12.size() == 6);
    int total = 0;
    for (auto& [g, m] : c12) total += g.degree() * m;
    REQUIRE(total == 12);
}

TEST_CASE("number field arithmetic Q(sqrt2)") {
    auto K = NumberField::create("s", {Int(-2), Int(0), Int(1)});
    auto s = NFElem::generator(K);
    REQUIRE((s * s) == NFElem(K, rat_of(2)));
    auto x = s + NFElem::one_of(K);
    auto y = x.inv();
    REQUIRE((x * y) == NFElem::one_of(K));
    // (1+s)^-1 = s - 1 ... check: (1+s)(s-1) = s^2-1 = 1
    REQUIRE(y == s - NFElem::one_of(K));
}

TEST_CASE("field axioms randomized") {
    auto K = NumberField::create("a", {Int(1), Int(3), Int(2), Int(-3), Int(1)});
    std::mt19937_64 rng(42);
    auto rnd = [&] {
        std::vector<Rat> c;
        for (int i = 0; i < K->degree(); ++i) c.push_back(rat_of((long)(rng() % 19) - 9, 1 + (long)(rng() % 5)));
        return NFElem(K, std::move(c));
    };
    for (int t = 0; t < 1000; ++t) {
        auto x = rnd(), y = rnd(), z = rnd();
        REQUIRE(((x * y) * z) == (x * (y * z)));
        REQUIRE((x * (y + z)) == (x * y + x * z));
        if (!x.zero()) REQUIRE((x * x.inv()) == NFElem::one_of(K));
    }
}

TEST_CASE("irreducibility guard") {
    REQUIRE_THROWS_AS(NumberField::create("t", {Int(-1), Int(0), Int(1)}), input_error); // t^2-1
    REQUIRE_NOTHROW(NumberField::create("t", {Int(-2), Int(0), Int(1)}));                // t^2-2
    // the degree-3 field used for one of the registry surfaces
    REQUIRE_NOTHROW(NumberField::create("p", {Int(-19), Int(111), Int(-201), Int(1)}));
}

TEST_CASE("factorization over a number field (Trager)") {
    auto K = NumberField::create("s", {Int(-2), Int(0), Int(1)}); // Q(sqrt2)
    // x^2 - 2 = (x - s)(x + s) over K
    auto h = poly_to_field(qp({-2, 0, 1}), K);
    auto facs = nfpoly_factor_squarefree(h, K);
    REQUIRE(facs.size() == 2);
    for (auto& f : facs) REQUIRE(f.degree() == 1);
    REQUIRE((facs[0] * facs[1]) == h);

    // x^2 + 1 stays irreducible over Q(sqrt2)
    auto h2 = poly_to_field(qp({1, 0, 1}), K);
    auto facs2 = nfpoly_factor_squarefree(h2, K);
    REQUIRE(facs2.size() == 1);

    // x^4 - 2 = (x^2 - s)(x^2 + s)
    auto h3 = poly_to_field(qp({-2, 0, 0, 0, 1}), K);
    auto facs3 = nfpoly_factor_squarefree(h3, K);
    REQUIRE(facs3.size() == 2);
    REQUIRE((facs3[0] * facs3[1]) == h3);
}

TEST_CASE("root isolation: certified disks") {
    // x^2 - 2: two real roots
    auto coeffs_at = [&](mpfr_prec_t p) {
        std::vector<CBox> cs;
        cs.push_back(CBox::exact(rat_of(-2), Rat(0), p));
        cs.push_back(CBox::zero(p));
        cs.push_back(CBox::exact(rat_of(1), Rat(0), p));
        return cs;
    };
    auto disks = isolate_roots_escalate(coeffs_at, 64, 1 << 16);
    REQUIRE(disks.size() == 2);
    double r0 = mpfr_get_d(disks[0].center.re.get(), MPFR_RNDN);
    double r1 = mpfr_get_d(disks[1].center.re.get(), MPFR_RNDN);
    REQUIRE(r0 == Catch::Approx(-1.41421356).margin(1e-6));
    REQUIRE(r1 == Catch::Approx(1.41421356).margin(1e-6));
}

TEST_CASE("root isolation: cyclotomic x^4+1") {
    auto coeffs_at = [&](mpfr_prec_t p) {
        std::vector<CBox> cs;
        cs.push_back(CBox::exact(rat_of(1), Rat(0), p));
        for (int i = 0; i < 3; ++i) cs.push_back(CBox::zero(p));
        cs.push_back(CBox::exact(rat_of(1), Rat(0), p));
        return cs;
    };
    auto disks = isolate_roots_escalate(coeffs_at, 64, 1 << 16);
    REQUIRE(disks.size() == 4);
    for (auto& d : disks) {
        double a = mpfr_get_d(d.center.re.get(), MPFR_RNDN);
        double b = mpfr_get_d(d.center.im.get(), MPFR_RNDN);
        REQUIRE(std::abs(a * a + b * b - 1.0) < 1e-9);
    }
}

TEST_CASE("field embeddings") {
    auto K = NumberField::create("p", {Int(-19), Int(111), Int(-201), Int(1)});
    REQUIRE(field_embedding_count(K) == 3);
    auto b = field_generator_box(K, 0, 128);
    REQUIRE(!b.contains_zero());
}
