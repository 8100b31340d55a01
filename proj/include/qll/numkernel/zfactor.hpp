#pragma once

#include "qll/numkernel/numberfield.hpp"

#include <random>

namespace qll {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x] for word-sized primes (p < 2^62), used for modular
// factorization.  Polynomials are coefficient vectors, constant term first,
// trailing zeroes trimmed.
// ---------------------------------------------------------------------------
namespace fp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using FPoly = std::vector<u64>;

inline u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulm(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }
inline u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
inline u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

inline void trim(FPoly& f) { while (!f.empty() && f.back() == 0) f.pop_back(); }
inline int deg(const FPoly& f) { return (int)f.size() - 1; }

inline FPoly add(const FPoly& a, const FPoly& b, u64 p) {
    FPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = addm(x, y, p);
    }
    trim(r);
    return r;
}
inline FPoly sub(const FPoly& a, const FPoly& b, u64 p) {
    FPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = subm(x, y, p);
    }
    trim(r);
    return r;
}
inline FPoly mul(const FPoly& a, const FPoly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!b[j]) continue;
            r[i + j] = (u64)(((u128)a[i] * b[j] + r[i + j]) % p);
        }
    }
    trim(r);
    return r;
}
inline FPoly scal(const FPoly& a, u64 s, u64 p) {
    FPoly r = a;
    for (auto& x : r) x = mulm(x, s, p);
    trim(r);
    return r;
}
inline FPoly rem(FPoly a, const FPoly& b, u64 p) {
    if (b.empty()) throw math_error("fp: division by zero poly");
    u64 inv = invm(b.back(), p);
    while (deg(a) >= deg(b)) {
        u64 f = mulm(a.back(), inv, p);
        int k = deg(a) - deg(b);
        for (int i = 0; i <= deg(b); ++i)
            a[i + k] = subm(a[i + k], mulm(f, b[i], p), p);
        trim(a);
    }
    return a;
}
inline std::pair<FPoly, FPoly> divmod(FPoly a, const FPoly& b, u64 p) {
    if (b.empty()) throw math_error("fp: division by zero poly");
    FPoly q;
    if (deg(a) >= deg(b)) q.assign(deg(a) - deg(b) + 1, 0);
    u64 inv = invm(b.back(), p);
    while (deg(a) >= deg(b)) {
        u64 f = mulm(a.back(), inv, p);
        int k = deg(a) - deg(b);
        q[k] = f;
        for (int i = 0; i <= deg(b); ++i)
            a[i + k] = subm(a[i + k], mulm(f, b[i], p), p);
        trim(a);
    }
    return {q, a};
}
inline FPoly gcd(FPoly a, FPoly b, u64 p) {
    while (!b.empty()) {
        FPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = scal(a, invm(a.back(), p), p);
    return a;
}
inline FPoly deriv(const FPoly& a, u64 p) {
    FPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(mulm(a[i], i % p, p));
    trim(r);
    return r;
}
inline FPoly powmod(FPoly base, Int e, const FPoly& f, u64 p) {
    FPoly r{1};
    base = rem(std::move(base), f, p);
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base, p), f, p);
        base = rem(mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// Distinct-degree factorization of a squarefree monic f.  Returns pairs
// (product of all irreducible factors of degree d, d).
inline std::vector<std::pair<FPoly, int>> ddf(FPoly f, u64 p) {
    std::vector<std::pair<FPoly, int>> out;
    FPoly x{0, 1};
    FPoly h = x;
    int d = 0;
    while (deg(f) >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, Int((unsigned long)p), f, p);
        FPoly g = gcd(sub(h, x, p), f, p);
        if (deg(g) > 0) {
            out.push_back({g, d});
            f = divmod(f, g, p).first;
            h = rem(h, f, p);
        }
    }
    if (deg(f) > 0) out.push_back({f, deg(f)});
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (p odd).
inline void edf(const FPoly& f, int d, u64 p, std::mt19937_64& rng, std::vector<FPoly>& out) {
    if (deg(f) == d) {
        out.push_back(scal(f, invm(f.back(), p), p));
        return;
    }
    Int e = (int_pow(Int((unsigned long)p), d) - 1) / 2;
    while (true) {
        FPoly r(deg(f), 0);
        for (auto& c : r) c = rng() % p;
        trim(r);
        if (deg(r) < 1) continue;
        FPoly g = gcd(r, f, p);
        if (deg(g) == 0) {
            FPoly b = powmod(r, e, f, p);
            if (b.empty()) continue;
            b[0] = subm(b[0], 1, p);
            trim(b);
            g = gcd(b, f, p);
        }
        if (deg(g) > 0 && deg(g) < deg(f)) {
            edf(g, d, p, rng, out);
            edf(divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

// Full factorization of a squarefree monic polynomial mod p.
inline std::vector<FPoly> factor_squarefree(const FPoly& f, u64 p, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xabcdef1234567ULL);
    std::vector<FPoly> out;
    for (auto& [g, d] : ddf(f, p)) edf(g, d, p, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fp

// ---------------------------------------------------------------------------
// Integer polynomial helpers.
// ---------------------------------------------------------------------------

inline Poly<Int> zpoly_from_rat(const Poly<Rat>& p, Int* scale = nullptr) {
    Int l(1);
    for (auto& q : p.c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Int> cs;
    cs.reserve(p.c.size());
    for (auto& q : p.c) cs.emplace_back(num(q) * (l / den(q)));
    if (scale) *scale = l;
    Poly<Int> r;
    r.c = std::move(cs);
    r.trim();
    return r;
}

inline Poly<Rat> rat_from_zpoly(const Poly<Int>& p) {
    std::vector<Rat> cs;
    cs.reserve(p.c.size());
    for (auto& z : p.c) cs.emplace_back(Rat(z));
    Poly<Rat> r(std::move(cs));
    return r;
}

inline Int zpoly_content(const Poly<Int>& p) {
    Int g(0);
    for (auto& z : p.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    return g;
}

inline Poly<Int> zpoly_primitive(Poly<Int> p) {
    Int g = zpoly_content(p);
    if (sgn(g) == 0) return p;
    if (sgn(p.c.back()) < 0) g = -g;
    for (auto& z : p.c) z /= g;
    return p;
}

inline fp::FPoly zpoly_mod(const Poly<Int>& f, fp::u64 p) {
    fp::FPoly r(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) {
        Int m = f.c[i] % Int((unsigned long)p);
        if (sgn(m) < 0) m += Int((unsigned long)p);
        r[i] = m.get_ui();
    }
    fp::trim(r);
    return r;
}

// symmetric representative in (-m/2, m/2]
inline Int sym_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (sgn(r) < 0) r += m;
    if (r * 2 > m) r -= m;
    return r;
}

namespace detail {

// Hensel step (von zur Gathen & Gerhard, Alg. 15.10): lifts f = g*h and
// s*g + t*h = 1 from mod m to mod m^2.  f, g, h, s, t integer polys; h monic.
struct HenselPair {
    Poly<Int> g, h, s, t;
};

inline Poly<Int> zp_reduce(const Poly<Int>& f, const Int& m) {
    Poly<Int> r = f;
    for (auto& c : r.c) c = sym_mod(c, m);
    r.trim();
    return r;
}

inline Poly<Int> zp_mul(const Poly<Int>& a, const Poly<Int>& b, const Int& m) {
    return zp_reduce(a * b, m);
}

// division with monic divisor, coefficients mod m
inline std::pair<Poly<Int>, Poly<Int>> zp_divmod_monic(Poly<Int> a, const Poly<Int>& b, const Int& m) {
    Poly<Int> q;
    if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, Int(0));
    while (a.degree() >= b.degree()) {
        Int f = a.lc();
        int k = a.degree() - b.degree();
        q.c[k] = f;
        for (int i = 0; i <= b.degree(); ++i)
            a.c[i + k] = sym_mod(a.c[i + k] - f * b.c[i], m);
        a.trim();
    }
    q.trim();
    return {zp_reduce(q, m), zp_reduce(a, m)};
}

inline void hensel_step(const Poly<Int>& f, HenselPair& P, const Int& m) {
    Int m2 = m * m;
    auto e = zp_reduce(f - zp_mul(P.g, P.h, m2), m2);
    auto [q, r] = zp_divmod_monic(zp_mul(P.s, e, m2), P.h, m2);
    Poly<Int> gstar = zp_reduce(P.g + zp_mul(P.t, e, m2) + zp_mul(q, P.g, m2), m2);
    Poly<Int> hstar = zp_reduce(P.h + r, m2);
    auto b = zp_reduce(zp_mul(P.s, gstar, m2) + zp_mul(P.t, hstar, m2) - Poly<Int>::constant(Int(1)), m2);
    auto [c, d] = zp_divmod_monic(zp_mul(P.s, b, m2), hstar, m2);
    P.s = zp_reduce(P.s - d, m2);
    P.t = zp_reduce(P.t - zp_mul(P.t, b, m2) - zp_mul(c, gstar, m2), m2);
    P.g = gstar;
    P.h = hstar;
}

inline Poly<Int> zpoly_from_fp(const fp::FPoly& f, fp::u64 p) {
    Poly<Int> r;
    r.c.reserve(f.size());
    Int P((unsigned long)p);
    for (auto c : f) r.c.push_back(sym_mod(Int((unsigned long)c), P));
    r.trim();
    return r;
}

// Lifts the monic factorization f = prod facs (mod p) to mod p^(2^levels),
// recursively on a balanced tree.  f must be monic mod the final modulus in
// the sense that its leading coefficient is 1 (callers pass f made monic
// modulo p^(2^levels)).
inline void hensel_tree(const Poly<Int>& f, const std::vector<fp::FPoly>& facs,
                        fp::u64 p, int levels, const Int& mfinal,
                        std::vector<Poly<Int>>& out) {
    if (facs.size() == 1) {
        out.push_back(zp_reduce(f, mfinal));
        return;
    }
    size_t half = facs.size() / 2;
    std::vector<fp::FPoly> L(facs.begin(), facs.begin() + half);
    std::vector<fp::FPoly> R(facs.begin() + half, facs.end());
    fp::FPoly gm{1}, hm{1};
    for (auto& x : L) gm = fp::mul(gm, x, p);
    for (auto& x : R) hm = fp::mul(hm, x, p);
    // Bezout mod p
    fp::FPoly r0 = gm, r1 = hm, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = fp::divmod(r0, r1, p);
        fp::FPoly s2 = fp::sub(s0, fp::mul(q, s1, p), p);
        fp::FPoly t2 = fp::sub(t0, fp::mul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (fp::deg(r0) != 0) throw math_error("hensel: factors not coprime mod p");
    fp::u64 inv = fp::invm(r0[0], p);
    s0 = fp::scal(s0, inv, p);
    t0 = fp::scal(t0, inv, p);

    HenselPair P{zpoly_from_fp(gm, p), zpoly_from_fp(hm, p), zpoly_from_fp(s0, p), zpoly_from_fp(t0, p)};
    Int m((unsigned long)p);
    for (int i = 0; i < levels; ++i) {
        hensel_step(f, P, m);
        m = m * m;
    }
    hensel_tree(zp_reduce(P.g, mfinal), L, p, levels, mfinal, out);
    hensel_tree(zp_reduce(P.h, mfinal), R, p, levels, mfinal, out);
}

} // namespace detail

// Factorization of a primitive squarefree integer polynomial into irreducible
// integer factors (Zassenhaus).  Deterministic for a fixed input.
inline std::vector<Poly<Int>> zpoly_factor_squarefree(const Poly<Int>& fin) {
    std::vector<Poly<Int>> out;
    if (fin.degree() <= 1) {
        out.push_back(fin);
        return out;
    }
    Poly<Int> f = fin;

    // pick a prime keeping f squarefree, with few modular factors
    static const fp::u64 primes[] = {1073741827ULL, 1073741831ULL, 1073741833ULL,
                                     1073741839ULL, 1073741843ULL, 1073741857ULL,
                                     1073741891ULL, 1073741909ULL, 1073741939ULL,
                                     1073741953ULL};
    std::uint64_t seed = 0;
    for (auto& c : f.c) seed = hash_int(seed, c);

    fp::u64 bestp = 0;
    std::vector<fp::FPoly> bestfacs;
    int tried = 0;
    for (fp::u64 p : primes) {
        if (sgn(f.lc() % Int((unsigned long)p)) == 0) continue;
        auto fm = zpoly_mod(f, p);
        fm = fp::scal(fm, fp::invm(fm.back(), p), p);
        auto g = fp::gcd(fm, fp::deriv(fm, p), p);
        if (fp::deg(g) != 0) continue;
        auto facs = fp::factor_squarefree(fm, p, seed);
        if (bestp == 0 || facs.size() < bestfacs.size()) {
            bestp = p;
            bestfacs = std::move(facs);
        }
        if (++tried >= 4 || bestfacs.size() == 1) break;
    }
    if (bestp == 0) throw math_error("zpoly_factor: no usable prime found");
    if (bestfacs.size() == 1) {
        out.push_back(f);
        return out;
    }

    // Landau-Mignotte style bound on factor coefficients: 2^n * ||f||_2 * |lc|
    Int norm2(0);
    for (auto& c : f.c) norm2 += c * c;
    Int B = Int(1) << (unsigned long)(f.degree() + 1);
    Int sq = sqrt(norm2) + 1;
    B = B * sq * abs(f.lc()) * 2 + 1;
    int levels = 0;
    Int m((unsigned long)bestp);
    while (m < B) {
        m = m * m;
        ++levels;
    }

    // Make f monic modulo m (lc invertible since p doesn't divide it)
    Int lc = f.lc();
    Int lcinv;
    if (mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t()) == 0)
        throw math_error("zpoly_factor: leading coefficient not invertible");
    Poly<Int> fmonic = f;
    for (auto& c : fmonic.c) c = sym_mod(c * lcinv, m);

    std::vector<Poly<Int>> lifted;
    detail::hensel_tree(fmonic, bestfacs, bestp, levels, m, lifted);

    // recombination
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) alive[i] = (int)i;
    Poly<Int> rest = f;

    auto try_subset = [&](const std::vector<int>& subset) -> bool {
        Poly<Int> prod = Poly<Int>::constant(Int(1));
        for (int i : subset) prod = detail::zp_mul(prod, lifted[i], m);
        // scale by current leading coefficient and take primitive part
        Poly<Int> cand = prod;
        Int rl = rest.lc();
        for (auto& c : cand.c) c = sym_mod(c * rl, m);
        cand = zpoly_primitive(cand);
        if (cand.degree() <= 0) return false;
        // cheap constant-term divisibility prune (Gauss lemma)
        if (sgn(rest.c[0]) != 0 && sgn(cand.c[0]) != 0 &&
            !mpz_divisible_p(rest.c[0].get_mpz_t(), cand.c[0].get_mpz_t()))
            return false;
        auto [q, r] = poly_divmod(rat_from_zpoly(rest), rat_from_zpoly(cand));
        if (!r.zero()) return false;
        out.push_back(cand);
        rest = zpoly_primitive(zpoly_from_rat(q));
        return true;
    };

    size_t card = 1;
    while (!alive.empty() && 2 * card <= alive.size()) {
        std::vector<int> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = (int)i;
        bool found = false;
        while (true) {
            std::vector<int> subset;
            subset.reserve(card);
            for (auto i : idx) subset.push_back(alive[i]);
            int dsum = 0;
            for (int i : subset) dsum += lifted[i].degree();
            if (dsum <= rest.degree() && try_subset(subset)) {
                std::vector<int> nalive;
                size_t k = 0;
                for (size_t i = 0; i < alive.size(); ++i) {
                    if (k < idx.size() && (int)i == idx[k]) { ++k; continue; }
                    nalive.push_back(alive[i]);
                }
                alive = std::move(nalive);
                found = true;
                break;
            }
            int i = (int)card - 1;
            while (i >= 0 && idx[i] == (int)(alive.size() - card + i)) --i;
            if (i < 0) break;
            ++idx[i];
            for (size_t j = (size_t)i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++card; // same cardinality re-scanned after each removal
    }
    if (rest.degree() > 0) out.push_back(zpoly_primitive(rest));
    std::sort(out.begin(), out.end(), [](const Poly<Int>& a, const Poly<Int>& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int i = a.degree(); i >= 0; --i)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    });
    return out;
}

// Factorization over Q: returns monic irreducible factors with multiplicity.
inline std::vector<std::pair<Poly<Rat>, int>> qpoly_factor(const Poly<Rat>& p) {
    if (p.zero()) throw math_error("factor of zero polynomial");
    std::vector<std::pair<Poly<Rat>, int>> out;
    if (p.degree() == 0) return out;
    for (auto& [sf, mult] : poly_squarefree_decomposition(p)) {
        auto z = zpoly_primitive(zpoly_from_rat(sf));
        for (auto& f : zpoly_factor_squarefree(z))
            out.push_back({poly_monic(rat_from_zpoly(f)), mult});
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i)
            if (!(a.first.c[i] == b.first.c[i])) return a.first.c[i] < b.first.c[i];
        return a.second < b.second;
    });
    return out;
}

namespace detail {
inline bool zpoly_is_irreducible(const Poly<Rat>& m) {
    // quick modular certificate first
    Poly<Int> z = zpoly_primitive(zpoly_from_rat(m));
    static const fp::u64 primes[] = {1000003ULL, 1000033ULL, 1000037ULL, 1000039ULL, 1000081ULL};
    for (fp::u64 p : primes) {
        if (sgn(z.lc() % Int((unsigned long)p)) == 0) continue;
        auto fm = zpoly_mod(z, p);
        fm = fp::scal(fm, fp::invm(fm.back(), p), p);
        auto g = fp::gcd(fm, fp::deriv(fm, p), p);
        if (fp::deg(g) != 0) continue;
        auto dd = fp::ddf(fm, p);
        if (dd.size() == 1 && dd[0].second == fp::deg(fm)) return true;
    }
    auto facs = qpoly_factor(m);
    return facs.size() == 1 && facs[0].second == 1;
}
} // namespace detail

// ---------------------------------------------------------------------------
// Factorization over a number field K (Trager's method via norms).
// ---------------------------------------------------------------------------

// Norm of h(u - s*g) down to Q[x], computed as Res_g(m(g), h(x - s g)) by
// evaluation/interpolation in x.
inline Poly<Rat> trager_norm(const Poly<NFElem>& h, const FieldPtr& K, long s) {
    int d = K->degree();
    int e = h.degree();
    int N = d * e;
    // substitute u -> x - s*g, coefficients as bivariate in (x, g):
    // represent as Poly in g of Poly<Rat> in x.
    // h(x - s g) = sum_i c_i(g) (x - s g)^i
    std::vector<Poly<Rat>> bi(d); // bi[j] in Q[x] multiplies g^j
    // (x - s g)^i expanded iteratively
    std::vector<std::vector<Poly<Rat>>> pw; // pw[i][j] coeff of g^j, poly in x
    pw.push_back({Poly<Rat>::constant(Rat(1))});
    {
        for (int i = 1; i <= e; ++i) {
            const auto& prev = pw.back();
            std::vector<Poly<Rat>> cur(prev.size() + 1);
            // multiply prev by (x - s g)
            Poly<Rat> x_poly(std::vector<Rat>{Rat(0), Rat(1)});
            for (size_t j = 0; j < prev.size(); ++j) {
                cur[j] = cur[j] + prev[j] * x_poly;
                cur[j + 1] = cur[j + 1] - prev[j] * rat_of(s);
            }
            pw.push_back(std::move(cur));
        }
    }
    int maxg = d;
    std::vector<Poly<Rat>> acc(e + maxg + 2);
    for (int i = 0; i <= e; ++i) {
        const auto& ci = h.coeff(i).universal_zero()
                             ? std::vector<Rat>(d, Rat(0))
                             : h.coeff(i).coeffs();
        for (int j = 0; j < (int)ci.size(); ++j) {
            if (sgn(ci[j]) == 0) continue;
            for (size_t k = 0; k < pw[i].size(); ++k) {
                if (pw[i][k].zero()) continue;
                acc[j + k] = acc[j + k] + pw[i][k] * ci[j];
            }
        }
    }
    // now resultant in g of m(g) (deg d) and A(g) = sum acc[j] g^j, coeffs in Q[x]
    // by evaluation at x = 0,1,-1,2,... and interpolation (degree <= N)
    std::vector<Rat> xs, ys;
    long x0 = 0;
    int need = N + 1;
    while ((int)xs.size() < need) {
        Rat xv = rat_of(x0);
        // evaluate A coefficients at xv to get poly in g over Q
        std::vector<Rat> ag;
        for (auto& c : acc) ag.push_back(c.eval(xv));
        Poly<Rat> A(std::move(ag));
        Rat rv;
        if (A.zero())
            rv = Rat(0);
        else
            rv = poly_resultant(K->minpoly(), A);
        xs.push_back(xv);
        ys.push_back(rv);
        x0 = x0 > 0 ? -x0 : -x0 + 1;
    }
    // Lagrange interpolation (Newton form)
    std::vector<Rat> coef(ys); // divided differences
    for (int j = 1; j < need; ++j)
        for (int i = need - 1; i >= j; --i)
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    Poly<Rat> r = Poly<Rat>::constant(coef[need - 1]);
    for (int i = need - 2; i >= 0; --i) {
        Poly<Rat> xmxi(std::vector<Rat>{-xs[i], Rat(1)});
        r = r * xmxi + Poly<Rat>::constant(coef[i]);
    }
    return r;
}

// Factors a monic squarefree polynomial over K into monic irreducible factors.
inline std::vector<Poly<NFElem>> nfpoly_factor_squarefree(const Poly<NFElem>& h, const FieldPtr& K) {
    std::vector<Poly<NFElem>> out;
    if (h.degree() <= 1) {
        out.push_back(h);
        return out;
    }
    if (K->is_rational()) {
        auto hr = rat_from_zpoly(zpoly_primitive(zpoly_from_rat([&] {
            std::vector<Rat> cs;
            for (auto& c : h.c) cs.push_back(c.universal_zero() ? Rat(0) : c.coeffs()[0]);
            return Poly<Rat>(std::move(cs));
        }())));
        for (auto& f : zpoly_factor_squarefree(zpoly_from_rat(hr)))
            out.push_back(poly_to_field(poly_monic(rat_from_zpoly(f)), K));
        return out;
    }
    for (long s = 0;; s = (s > 0 ? -s : -s + 1)) {
        auto norm = trager_norm(h, K, s);
        if (norm.degree() != h.degree() * K->degree()) continue; // degenerate shift
        auto g = poly_gcd(norm, norm.derivative());
        if (g.degree() != 0) continue; // norm not squarefree, try another shift
        auto nf = qpoly_factor(norm);
        if (nf.size() == 1) {
            out.push_back(poly_monic(h));
            return out;
        }
        NFElem gen = NFElem::generator(K);
        for (auto& [Ni, mult] : nf) {
            (void)mult;
            // factor = gcd_K(h(u), Ni(u + s*g))
            auto NiK = poly_to_field(Ni, K);
            // substitute u -> u + s*g
            Poly<NFElem> sub;
            {
                Poly<NFElem> arg; // u + s*g
                arg.c.assign(2, NFElem{});
                arg.c[1] = NFElem::one_of(K);
                arg.c[0] = gen * rat_of(s);
                arg.trim();
                for (auto it = NiK.c.rbegin(); it != NiK.c.rend(); ++it)
                    sub = sub * arg + Poly<NFElem>::constant(*it);
            }
            auto fac = poly_gcd(h, sub);
            if (fac.degree() > 0) out.push_back(fac);
        }
        int dsum = 0;
        for (auto& f : out) dsum += f.degree();
        if (dsum != h.degree()) throw math_error("nfpoly_factor: factor degrees inconsistent");
        std::sort(out.begin(), out.end(), [](const Poly<NFElem>& a, const Poly<NFElem>& b) {
            if (a.degree() != b.degree()) return a.degree() < b.degree();
            for (int i = a.degree(); i >= 0; --i) {
                auto ha = a.c[i].hash(), hb = b.c[i].hash();
                if (ha != hb) return ha < hb;
            }
            return false;
        });
        return out;
    }
}

// Factorization over K with multiplicities (general polynomial).
inline std::vector<std::pair<Poly<NFElem>, int>> nfpoly_factor(const Poly<NFElem>& p, const FieldPtr& K) {
    std::vector<std::pair<Poly<NFElem>, int>> out;
    if (p.zero()) throw math_error("factor of zero polynomial");
    if (p.degree() == 0) return out;
    for (auto& [sf, mult] : poly_squarefree_decomposition(p))
        for (auto& f : nfpoly_factor_squarefree(sf, K))
            out.push_back({f, mult});
    return out;
}

} // namespace qll
