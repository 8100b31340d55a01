#pragma once

#include "qll/numkernel/numberfield.hpp"

namespace qll {

// Monomials in at most 4 variables with a packed degrevlex key: higher key =
// larger monomial.  Exponents must stay below 2^15 (line systems stay far
// below this).
struct GbMono {
    std::uint64_t key = 0;
    std::array<std::uint16_t, 4> e{0, 0, 0, 0};

    static GbMono make(std::array<std::uint16_t, 4> exps) {
        GbMono m;
        m.e = exps;
        std::uint64_t deg = (std::uint64_t)exps[0] + exps[1] + exps[2] + exps[3];
        m.key = (deg << 48) | ((std::uint64_t)(0xffffu - exps[3]) << 32) |
                ((std::uint64_t)(0xffffu - exps[2]) << 16) | (std::uint64_t)(0xffffu - exps[1]);
        return m;
    }
    static GbMono one() { return make({0, 0, 0, 0}); }
    static GbMono var(int i, int pow = 1) {
        std::array<std::uint16_t, 4> v{0, 0, 0, 0};
        v[i] = (std::uint16_t)pow;
        return make(v);
    }
    unsigned deg() const { return (unsigned)(key >> 48); }
    bool is_one() const { return deg() == 0; }
    bool operator==(const GbMono& o) const { return key == o.key && e == o.e; }
    bool operator<(const GbMono& o) const { return key < o.key; }

    GbMono operator*(const GbMono& o) const {
        return make({(std::uint16_t)(e[0] + o.e[0]), (std::uint16_t)(e[1] + o.e[1]),
                     (std::uint16_t)(e[2] + o.e[2]), (std::uint16_t)(e[3] + o.e[3])});
    }
    bool divides(const GbMono& o) const {
        return e[0] <= o.e[0] && e[1] <= o.e[1] && e[2] <= o.e[2] && e[3] <= o.e[3];
    }
    GbMono quotient(const GbMono& d) const {
        return make({(std::uint16_t)(e[0] - d.e[0]), (std::uint16_t)(e[1] - d.e[1]),
                     (std::uint16_t)(e[2] - d.e[2]), (std::uint16_t)(e[3] - d.e[3])});
    }
    static GbMono lcm(const GbMono& a, const GbMono& b) {
        return make({std::max(a.e[0], b.e[0]), std::max(a.e[1], b.e[1]),
                     std::max(a.e[2], b.e[2]), std::max(a.e[3], b.e[3])});
    }
    static bool coprime(const GbMono& a, const GbMono& b) {
        return (a.e[0] == 0 || b.e[0] == 0) && (a.e[1] == 0 || b.e[1] == 0) &&
               (a.e[2] == 0 || b.e[2] == 0) && (a.e[3] == 0 || b.e[3] == 0);
    }
};

// Sparse polynomial, terms sorted by decreasing monomial key.
struct GbPoly {
    std::vector<std::pair<GbMono, NFElem>> t;

    bool zero() const { return t.empty(); }
    const GbMono& lm() const { return t.front().first; }
    const NFElem& lc() const { return t.front().second; }

    static GbPoly term(GbMono m, NFElem c) {
        GbPoly p;
        if (!c.zero()) p.t.push_back({m, std::move(c)});
        return p;
    }

    GbPoly operator-() const {
        GbPoly r = *this;
        for (auto& [m, c] : r.t) c = -c;
        return r;
    }

    // this + c * mono * g
    GbPoly fma(const NFElem& c, const GbMono& mono, const GbPoly& g) const {
        GbPoly r;
        r.t.reserve(t.size() + g.t.size());
        size_t i = 0, j = 0;
        while (i < t.size() || j < g.t.size()) {
            if (j >= g.t.size()) {
                r.t.push_back(t[i++]);
                continue;
            }
            GbMono gm = g.t[j].first * mono;
            if (i >= t.size()) {
                NFElem v = c * g.t[j].second;
                if (!v.zero()) r.t.push_back({gm, std::move(v)});
                ++j;
                continue;
            }
            if (t[i].first.key > gm.key) {
                r.t.push_back(t[i++]);
            } else if (t[i].first.key < gm.key) {
                NFElem v = c * g.t[j].second;
                if (!v.zero()) r.t.push_back({gm, std::move(v)});
                ++j;
            } else {
                NFElem v = t[i].second + c * g.t[j].second;
                if (!v.zero()) r.t.push_back({gm, std::move(v)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    void scale_primitive() {
        if (t.empty()) return;
        Int l(1), g(0);
        for (auto& [m, c] : t) {
            if (c.universal_zero()) continue;
            for (auto& q : c.coeffs()) {
                if (sgn(q) == 0) continue;
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
            }
        }
        for (auto& [m, c] : t) {
            if (c.universal_zero()) continue;
            for (auto& q : c.coeffs()) {
                if (sgn(q) == 0) continue;
                Int nn = num(q) * (l / den(q));
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nn.get_mpz_t());
            }
        }
        if (sgn(g) == 0) return;
        Rat s(l, g);
        s.canonicalize();
        if (s == Rat(1)) return;
        for (auto& [m, c] : t) c = c * s;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 0x9e3779b9;
        for (auto& [m, c] : t) {
            h = hash_mix(h, m.key);
            h = hash_mix(h, c.hash());
        }
        return h;
    }
};

// Full normal form of f with respect to basis G.  Each basis entry carries a
// cached inverse of its leading coefficient.
struct GbBasisEntry {
    GbPoly p;
    NFElem lcinv;
};

inline GbPoly gb_normal_form(GbPoly f, const std::vector<GbBasisEntry>& G) {
    GbPoly out;
    while (!f.zero()) {
        bool reduced = false;
        const GbMono& m = f.lm();
        for (auto& ge : G) {
            if (!ge.p.lm().divides(m)) continue;
            NFElem c = -(f.lc() * ge.lcinv);
            f = f.fma(c, m.quotient(ge.p.lm()), ge.p);
            reduced = true;
            break;
        }
        if (!reduced) {
            out.t.push_back(f.t.front());
            f.t.erase(f.t.begin());
        }
    }
    return out;
}

// Buchberger with the Gebauer-Moeller pair criteria.  Inputs need not be
// interreduced.  Output: reduced basis (tail-reduced, primitive-scaled).
class Groebner {
public:
    explicit Groebner(std::vector<GbPoly> gens) {
        for (auto& g : gens) add_generator(std::move(g));
        run();
        interreduce();
    }

    const std::vector<GbBasisEntry>& basis() const { return G_; }
    GbPoly nf(GbPoly f) const { return gb_normal_form(std::move(f), G_); }
    bool is_unit_ideal() const {
        return G_.size() == 1 && G_[0].p.lm().is_one();
    }

private:
    struct Pair {
        int i, j;
        GbMono lcm;
    };

    void add_generator(GbPoly g) {
        if (g.zero()) return;
        g.scale_primitive();
        pending_.push_back(std::move(g));
    }

    void install(GbPoly h) {
        h.scale_primitive();
        int t = (int)G_.size();
        GbMono lt = h.lm();
        // old-pair elimination
        std::vector<Pair> keep;
        keep.reserve(P_.size());
        for (auto& pr : P_) {
            GbMono l = pr.lcm;
            if (lt.divides(l) && !(GbMono::lcm(G_[pr.i].p.lm(), lt) == l) &&
                !(GbMono::lcm(G_[pr.j].p.lm(), lt) == l))
                continue;
            keep.push_back(pr);
        }
        P_ = std::move(keep);
        // new pairs with M/F/B criteria
        std::vector<Pair> cand;
        for (int i = 0; i < t; ++i)
            cand.push_back({i, t, GbMono::lcm(G_[i].p.lm(), lt)});
        std::vector<bool> dead(cand.size(), false);
        for (size_t a = 0; a < cand.size(); ++a)
            for (size_t b = 0; b < cand.size(); ++b) {
                if (a == b || dead[a] || dead[b]) continue;
                if (cand[b].lcm.divides(cand[a].lcm) && !(cand[b].lcm == cand[a].lcm))
                    dead[a] = true;
            }
        // among equal lcms keep the first
        for (size_t a = 0; a < cand.size(); ++a) {
            if (dead[a]) continue;
            for (size_t b = a + 1; b < cand.size(); ++b)
                if (!dead[b] && cand[b].lcm == cand[a].lcm) dead[b] = true;
        }
        for (size_t a = 0; a < cand.size(); ++a) {
            if (dead[a]) continue;
            if (GbMono::coprime(G_[cand[a].i].p.lm(), lt)) continue;
            P_.push_back(cand[a]);
        }
        GbBasisEntry e;
        e.lcinv = h.lc().inv();
        e.p = std::move(h);
        G_.push_back(std::move(e));
    }

    void run() {
        for (auto& g : pending_) {
            GbPoly r = gb_normal_form(g, G_);
            if (!r.zero()) install(std::move(r));
        }
        pending_.clear();
        while (!P_.empty()) {
            // normal selection: minimal lcm degree, then minimal key
            size_t best = 0;
            for (size_t k = 1; k < P_.size(); ++k) {
                if (P_[k].lcm.key < P_[best].lcm.key) best = k;
            }
            Pair pr = P_[best];
            P_[best] = P_.back();
            P_.pop_back();
            const GbPoly& f = G_[pr.i].p;
            const GbPoly& g = G_[pr.j].p;
            // spoly = lc_g * (lcm/lt_f) f - lc_f * (lcm/lt_g) g
            GbPoly left = GbPoly{}.fma(g.lc(), pr.lcm.quotient(f.lm()), f);
            GbPoly spoly = left.fma(-f.lc(), pr.lcm.quotient(g.lm()), g);
            GbPoly r = gb_normal_form(std::move(spoly), G_);
            if (!r.zero()) install(std::move(r));
        }
    }

    void interreduce() {
        // tail-reduce every element against the others; drop redundant ones
        std::vector<GbBasisEntry> out;
        // drop elements whose lm is divisible by another's
        std::vector<bool> drop(G_.size(), false);
        for (size_t i = 0; i < G_.size(); ++i)
            for (size_t j = 0; j < G_.size(); ++j) {
                if (i == j || drop[i] || drop[j]) continue;
                if (G_[j].p.lm().divides(G_[i].p.lm()) &&
                    !(G_[i].p.lm() == G_[j].p.lm() && j > i))
                    drop[i] = true;
            }
        std::vector<GbBasisEntry> kept;
        for (size_t i = 0; i < G_.size(); ++i)
            if (!drop[i]) kept.push_back(std::move(G_[i]));
        for (size_t i = 0; i < kept.size(); ++i) {
            std::vector<GbBasisEntry> others;
            for (size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            GbPoly r = gb_normal_form(kept[i].p, others);
            r.scale_primitive();
            if (r.zero()) continue;
            GbBasisEntry e;
            e.lcinv = r.lc().inv();
            e.p = std::move(r);
            out.push_back(std::move(e));
        }
        std::sort(out.begin(), out.end(), [](const GbBasisEntry& a, const GbBasisEntry& b) {
            return a.p.lm().key < b.p.lm().key;
        });
        G_ = std::move(out);
    }

    std::vector<GbPoly> pending_;
    std::vector<GbBasisEntry> G_;
    std::vector<Pair> P_;
};

} // namespace qll
