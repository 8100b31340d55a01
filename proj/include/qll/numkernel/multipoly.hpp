#pragma once

#include "qll/numkernel/numberfield.hpp"

namespace qll {

// Sparse multivariate polynomial over a coefficient field C (NFElem by
// default; instantiated over extension elements in the fibration code).
// Monomials are exponent vectors with a fixed variable count; the map
// ordering (lexicographic on exponent vectors) is the canonical term order
// of the instance.
template <class C>
struct MPolyT {
    using Expo = std::vector<std::uint16_t>;
    int nvars = 0;
    std::map<Expo, C> t;

    MPolyT() = default;
    explicit MPolyT(int nv) : nvars(nv) {}

    static MPolyT constant(int nv, C v) {
        MPolyT p(nv);
        if (!is_zero(v)) p.t.emplace(Expo(nv, 0), std::move(v));
        return p;
    }
    static MPolyT variable(int nv, int i, C one) {
        MPolyT p(nv);
        Expo e(nv, 0);
        e[i] = 1;
        p.t.emplace(std::move(e), std::move(one));
        return p;
    }

    bool zero() const { return t.empty(); }

    void add_term(const Expo& e, const C& c) {
        if (is_zero(c)) return;
        auto it = t.find(e);
        if (it == t.end()) {
            t.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (is_zero(it->second)) t.erase(it);
        }
    }

    MPolyT operator+(const MPolyT& o) const {
        MPolyT r = *this;
        for (auto& [e, c] : o.t) r.add_term(e, c);
        return r;
    }
    MPolyT operator-() const {
        MPolyT r = *this;
        for (auto& [e, c] : r.t) c = -c;
        return r;
    }
    MPolyT operator-(const MPolyT& o) const { return *this + (-o); }
    MPolyT operator*(const MPolyT& o) const {
        MPolyT r(nvars);
        for (auto& [e1, c1] : t)
            for (auto& [e2, c2] : o.t) {
                C c = c1 * c2;
                if (is_zero(c)) continue;
                Expo e(nvars);
                for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                r.add_term(e, c);
            }
        return r;
    }
    MPolyT operator*(const C& s) const {
        MPolyT r(nvars);
        for (auto& [e, c] : t) r.add_term(e, c * s);
        return r;
    }

    MPolyT pow(unsigned k) const {
        MPolyT r = *this;
        if (k == 0) throw math_error("MPolyT::pow: use explicit constant for power 0");
        MPolyT acc(nvars);
        bool first = true;
        MPolyT base = *this;
        while (k) {
            if (k & 1) {
                if (first) { acc = base; first = false; }
                else acc = acc * base;
            }
            k >>= 1;
            if (k) base = base * base;
        }
        return acc;
    }

    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : t) {
            int s = 0;
            for (auto x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
    bool homogeneous(int d) const {
        for (auto& [e, c] : t) {
            int s = 0;
            for (auto x : e) s += x;
            if (s != d) return false;
        }
        return true;
    }
    int degree_in(int var) const {
        int d = 0;
        for (auto& [e, c] : t) d = std::max(d, (int)e[var]);
        return d;
    }

    MPolyT derivative(int var) const {
        MPolyT r(nvars);
        for (auto& [e, c] : t) {
            if (e[var] == 0) continue;
            Expo e2 = e;
            e2[var] -= 1;
            r.add_term(e2, Poly<C>::mul_by_int(c, e[var]));
        }
        return r;
    }

    // substitute variable i -> subs[i] (a polynomial in possibly different
    // variable count nv2); all subs must share nv2.
    MPolyT subst(const std::vector<MPolyT>& subs) const {
        if ((int)subs.size() != nvars) throw math_error("subst: wrong substitution count");
        int nv2 = subs.empty() ? nvars : subs[0].nvars;
        MPolyT r(nv2);
        // cache powers
        std::vector<std::vector<MPolyT>> pw(nvars);
        for (auto& [e, c] : t) {
            MPolyT term = MPolyT::constant(nv2, c);
            for (int i = 0; i < nvars; ++i) {
                if (e[i] == 0) continue;
                auto& cache = pw[i];
                if (cache.empty()) cache.push_back(subs[i]); // power 1
                while ((int)cache.size() < e[i]) cache.push_back(cache.back() * subs[i]);
                term = term * cache[e[i] - 1];
            }
            r = r + term;
        }
        return r;
    }

    // evaluate at a full point
    C eval(const std::vector<C>& x) const {
        C acc{};
        for (auto& [e, c] : t) {
            C v = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) v = v * x[i];
            acc = acc + v;
        }
        return acc;
    }

    // collect as univariate in `var` with MPolyT coefficients (var removed
    // from the exponent, variable count unchanged)
    Poly<MPolyT> collect(int var) const {
        std::vector<MPolyT> cs;
        for (auto& [e, c] : t) {
            int k = e[var];
            if ((int)cs.size() <= k) cs.resize(k + 1, MPolyT(nvars));
            Expo e2 = e;
            e2[var] = 0;
            cs[k].add_term(e2, c);
        }
        return Poly<MPolyT>(std::move(cs));
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0x7f4a7c15;
        for (auto& [e, c] : t) {
            for (auto x : e) h = hash_mix(h, x);
            h = hash_mix(h, c.hash());
        }
        return h;
    }
};

template <class C>
bool is_zero(const MPolyT<C>& p) { return p.zero(); }

using MPoly = MPolyT<NFElem>;

} // namespace qll
