#pragma once

#include "qll/numkernel/groebner.hpp"
#include "qll/numkernel/multipoly.hpp"
#include "qll/numkernel/zfactor.hpp"

namespace qll {

struct positive_dimensional : math_error {
    int witness_var;
    explicit positive_dimensional(int v)
        : math_error("ideal is not zero-dimensional (unbounded staircase in variable " +
                     std::to_string(v) + ")"),
          witness_var(v) {}
};

// Shape-lemma description of the solutions of a zero-dimensional system: a
// separating linear form u, its squarefree eliminant h over K (factored),
// and each unknown expressed as a polynomial in u modulo h.
struct ZeroDimSolution {
    FieldPtr K;
    int nvars = 0;
    std::vector<Rat> separating;            // u = sum separating[i] * x_i
    Poly<NFElem> eliminant;                 // squarefree; degree = #solutions
    std::vector<Poly<NFElem>> factors;      // pairwise coprime, product = eliminant
    std::vector<Poly<NFElem>> coords;       // coords[i](u) = value of x_i
    int quotient_dim = 0;                   // dim of K[x]/I (with multiplicities)
    std::vector<std::vector<int>> var_multiplicities; // Yun multiplicities per variable

    int count() const { return eliminant.degree(); }
};

namespace zerodetail {

struct QuotientAlgebra {
    const Groebner* gb;
    std::vector<GbMono> basis;                 // staircase monomials
    std::map<std::uint64_t, int> index;        // mono key -> basis position
    // multiplication tables: col[v][j] = coordinates of NF(x_v * basis[j])
    std::vector<std::vector<std::vector<std::pair<int, NFElem>>>> col;
    FieldPtr K;
    int nvars;

    int dim() const { return (int)basis.size(); }

    std::vector<NFElem> coords_of(const GbPoly& reduced) const {
        std::vector<NFElem> v(dim());
        for (auto& [m, c] : reduced.t) {
            auto it = index.find(m.key);
            if (it == index.end()) throw math_error("quotient: monomial outside staircase");
            v[it->second] = c;
        }
        return v;
    }

    std::vector<NFElem> mul_var(int var, const std::vector<NFElem>& x) const {
        std::vector<NFElem> r(dim());
        for (int j = 0; j < dim(); ++j) {
            if (x[j].zero()) continue;
            for (auto& [i, c] : col[var][j]) r[i] = r[i] + c * x[j];
        }
        return r;
    }
};

inline QuotientAlgebra build_quotient(const Groebner& gb, int nvars, const FieldPtr& K) {
    QuotientAlgebra A;
    A.gb = &gb;
    A.K = K;
    A.nvars = nvars;
    // pure-power bound per variable
    std::array<int, 4> bound{-1, -1, -1, -1};
    for (auto& e : gb.basis()) {
        const auto& m = e.p.lm();
        for (int v = 0; v < nvars; ++v) {
            bool pure = true;
            for (int w = 0; w < nvars; ++w)
                if (w != v && m.e[w] != 0) pure = false;
            if (pure && m.e[v] > 0) {
                if (bound[v] < 0 || m.e[v] < bound[v]) bound[v] = m.e[v];
            }
        }
    }
    for (int v = 0; v < nvars; ++v)
        if (bound[v] < 0) throw positive_dimensional(v);
    // enumerate monomials below bounds not divisible by any leading term
    std::array<std::uint16_t, 4> e{0, 0, 0, 0};
    std::function<void(int)> rec = [&](int v) {
        if (v == nvars) {
            GbMono m = GbMono::make(e);
            for (auto& be : gb.basis())
                if (be.p.lm().divides(m)) return;
            A.basis.push_back(m);
            return;
        }
        for (int k = 0; k < bound[v]; ++k) {
            e[v] = (std::uint16_t)k;
            rec(v + 1);
        }
        e[v] = 0;
    };
    rec(0);
    std::sort(A.basis.begin(), A.basis.end(), [](const GbMono& a, const GbMono& b) { return a.key < b.key; });
    for (int i = 0; i < (int)A.basis.size(); ++i) A.index[A.basis[i].key] = i;
    // multiplication tables
    A.col.assign(nvars, {});
    for (int v = 0; v < nvars; ++v) {
        A.col[v].resize(A.basis.size());
        for (size_t j = 0; j < A.basis.size(); ++j) {
            GbMono m = A.basis[j] * GbMono::var(v);
            std::vector<std::pair<int, NFElem>> entry;
            auto it = A.index.find(m.key);
            if (it != A.index.end()) {
                entry.push_back({it->second, NFElem::one_of(A.K)});
            } else {
                GbPoly r = gb.nf(GbPoly::term(m, NFElem::one_of(A.K)));
                for (auto& [mm, cc] : r.t) {
                    auto it2 = A.index.find(mm.key);
                    if (it2 == A.index.end()) throw math_error("quotient: reduction left staircase");
                    entry.push_back({it2->second, cc});
                }
            }
            A.col[v][j] = std::move(entry);
        }
    }
    return A;
}

// Minimal polynomial of the multiplication by `mulstep` applied to the
// vector 1, via incremental Gaussian elimination; also returns the Krylov
// vectors (coordinates of u^k) if requested.
inline Poly<NFElem> krylov_minpoly(const QuotientAlgebra& A,
                                   const std::function<std::vector<NFElem>(const std::vector<NFElem>&)>& mul,
                                   std::vector<std::vector<NFElem>>* krylov_out = nullptr) {
    int D = A.dim();
    const FieldPtr& K = A.K;
    std::vector<NFElem> v(D);
    // vector "1"
    auto it = A.index.find(GbMono::one().key);
    if (it == A.index.end()) throw math_error("quotient: 1 not in staircase (unit ideal?)");
    v[it->second] = NFElem::one_of(K);

    // rows: echelonized vectors, each with pivot and expression in Krylov basis
    struct Row {
        std::vector<NFElem> vec;
        std::vector<NFElem> expr; // combination of u^0..u^k
        int pivot;
    };
    std::vector<Row> rows;
    std::vector<std::vector<NFElem>> krylov;
    for (int k = 0; k <= D; ++k) {
        krylov.push_back(v);
        Row r;
        r.vec = v;
        r.expr.assign(k + 1, NFElem{});
        r.expr[k] = NFElem::one_of(K);
        // reduce against existing rows
        for (auto& row : rows) {
            if (r.vec[row.pivot].zero()) continue;
            NFElem f = r.vec[row.pivot];
            for (int i = 0; i < D; ++i)
                if (!row.vec[i].zero()) r.vec[i] = r.vec[i] - f * row.vec[i];
            for (size_t i = 0; i < row.expr.size(); ++i)
                if (!row.expr[i].zero()) {
                    if (r.expr.size() <= i) r.expr.resize(i + 1);
                    r.expr[i] = r.expr[i] - f * row.expr[i];
                }
        }
        int p = -1;
        for (int i = 0; i < D; ++i)
            if (!r.vec[i].zero()) { p = i; break; }
        if (p < 0) {
            // dependency: minpoly coefficients = expr (monic in u^k)
            std::vector<NFElem> cs(r.expr.begin(), r.expr.end());
            Poly<NFElem> h{std::move(cs)};
            if (krylov_out) {
                krylov.pop_back();
                *krylov_out = std::move(krylov);
            }
            return h;
        }
        // normalize pivot to 1
        NFElem inv = r.vec[p].inv();
        for (int i = 0; i < D; ++i)
            if (!r.vec[i].zero()) r.vec[i] = r.vec[i] * inv;
        for (auto& c : r.expr)
            if (!c.zero()) c = c * inv;
        r.pivot = p;
        rows.push_back(std::move(r));
        v = mul(v);
    }
    throw math_error("krylov_minpoly: no relation found (dimension overflow)");
}

} // namespace zerodetail

// Solves a zero-dimensional polynomial system over K: lexicographic-free
// shape-lemma route (generic separating form + Krylov linear algebra on the
// quotient algebra; radical via Seidenberg squarefree closure).
inline ZeroDimSolution solve_zero_dim(std::vector<GbPoly> gens, int nvars, const FieldPtr& K) {
    using namespace zerodetail;
    ZeroDimSolution sol;
    sol.K = K;
    sol.nvars = nvars;

    Groebner gb1(gens);
    if (gb1.is_unit_ideal()) {
        sol.quotient_dim = 0;
        sol.eliminant = poly_to_field(Poly<Rat>::constant(Rat(1)), K);
        sol.separating.assign(nvars, Rat(0));
        sol.coords.assign(nvars, Poly<NFElem>{});
        return sol;
    }
    auto A1 = build_quotient(gb1, nvars, K);
    sol.quotient_dim = A1.dim();

    // per-variable minimal polynomials; radical via squarefree parts
    bool radical = true;
    std::vector<GbPoly> extra;
    sol.var_multiplicities.assign(nvars, {});
    for (int v = 0; v < nvars; ++v) {
        auto mv = krylov_minpoly(A1, [&](const std::vector<NFElem>& x) { return A1.mul_var(v, x); });
        auto dec = poly_squarefree_decomposition(mv);
        for (auto& [f, m] : dec) sol.var_multiplicities[v].push_back(m);
        bool sf = dec.size() == 1 && dec[0].second == 1;
        if (!sf) {
            radical = false;
            Poly<NFElem> s = poly_squarefree_part(mv);
            GbPoly g;
            for (int i = s.degree(); i >= 0; --i)
                if (!s.c[i].zero()) g.t.push_back({GbMono::var(v, i), s.c[i]});
            extra.push_back(std::move(g));
        }
    }

    const Groebner* gb = &gb1;
    std::optional<Groebner> gb2;
    std::optional<QuotientAlgebra> A2;
    const QuotientAlgebra* A = &A1;
    if (!radical) {
        std::vector<GbPoly> gens2;
        for (auto& e : gb1.basis()) gens2.push_back(e.p);
        for (auto& g : extra) gens2.push_back(g);
        gb2.emplace(std::move(gens2));
        A2 = build_quotient(*gb2, nvars, K);
        gb = &*gb2;
        A = &*A2;
    }
    (void)gb;

    int D = A->dim();
    // separating form search (deterministic sequence)
    static const long table[][4] = {{1, 0, 0, 0},  {0, 1, 0, 0},  {1, 1, 0, 0},   {1, -1, 0, 0},
                                    {1, 2, 0, 0},  {1, 1, 1, 0},  {1, -1, 2, 0},  {1, 2, 3, 0},
                                    {1, 1, 1, 1},  {1, -1, 2, -2}, {1, 2, 4, 8},  {1, 3, 9, 27},
                                    {1, -2, 4, -8}, {2, 3, 5, 7}, {1, 5, 25, 125}, {3, 1, 4, 1}};
    std::vector<std::vector<NFElem>> krylov;
    for (auto& lam : table) {
        std::vector<Rat> sep;
        for (int i = 0; i < nvars; ++i) sep.push_back(rat_of(lam[i]));
        auto mul = [&](const std::vector<NFElem>& x) {
            std::vector<NFElem> r(D);
            for (int v = 0; v < nvars; ++v) {
                if (sgn(sep[v]) == 0) continue;
                auto mv = A->mul_var(v, x);
                for (int i = 0; i < D; ++i)
                    if (!mv[i].zero()) r[i] = r[i] + mv[i] * sep[v];
            }
            return r;
        };
        krylov.clear();
        auto h = krylov_minpoly(*A, mul, &krylov);
        if (h.degree() != D) continue; // not separating (or shape fails); retry
        sol.separating = sep;
        sol.eliminant = h;
        break;
    }
    if (sol.eliminant.zero())
        throw math_error("solve_zero_dim: no separating form found");

    // solve coords: x_v = sum c_k u^k with Krylov matrix columns u^k
    Mat<NFElem> Kr(D, D);
    for (int k = 0; k < D; ++k)
        for (int i = 0; i < D; ++i) Kr[i][k] = krylov[k][i];
    sol.coords.assign(nvars, Poly<NFElem>{});
    for (int v = 0; v < nvars; ++v) {
        // coords of NF(x_v) = M_v applied to 1
        std::vector<NFElem> one(D);
        one[A->index.at(GbMono::one().key)] = NFElem::one_of(K);
        auto xv = A->mul_var(v, one);
        auto c = mat_solve(Kr, xv);
        sol.coords[v] = Poly<NFElem>{std::move(c)};
    }

    sol.factors = nfpoly_factor_squarefree(poly_monic(sol.eliminant), K);

    // exact verification: every generator vanishes on the parametrized locus
    for (auto& g : gens) {
        // evaluate g at x_v = coords[v] modulo eliminant
        Poly<NFElem> acc;
        for (auto& [m, c] : g.t) {
            Poly<NFElem> term = Poly<NFElem>::constant(c);
            for (int v = 0; v < nvars; ++v)
                for (int k = 0; k < m.e[v]; ++k) term = (term * sol.coords[v]) % sol.eliminant;
            acc = (acc + term) % sol.eliminant;
        }
        if (!acc.zero()) throw math_error("solve_zero_dim: verification failed");
    }
    return sol;
}

// Convenience: convert MPoly (<=4 variables) to GbPoly.
inline GbPoly mpoly_to_gb(const MPoly& p) {
    if (p.nvars > 4) throw math_error("mpoly_to_gb: too many variables");
    std::vector<std::pair<GbMono, NFElem>> terms;
    for (auto& [e, c] : p.t) {
        std::array<std::uint16_t, 4> a{0, 0, 0, 0};
        for (int i = 0; i < p.nvars; ++i) a[i] = e[i];
        terms.push_back({GbMono::make(a), c});
    }
    std::sort(terms.begin(), terms.end(),
              [](auto& x, auto& y) { return x.first.key > y.first.key; });
    GbPoly g;
    g.t = std::move(terms);
    return g;
}

} // namespace qll
