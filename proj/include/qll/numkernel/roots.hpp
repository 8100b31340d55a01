#pragma once

#include "qll/numkernel/intervals.hpp"

#include <complex>
#include <mutex>

namespace qll {

// Complex arithmetic on midpoints (non-rigorous; used only to produce
// candidate roots which are then certified with interval arithmetic).
struct MpC {
    MpF re, im;
    explicit MpC(mpfr_prec_t p = 64) : re(p), im(p) {}
    static MpC of(double r, double i, mpfr_prec_t p) {
        MpC z(p);
        mpfr_set_d(z.re.get(), r, MPFR_RNDN);
        mpfr_set_d(z.im.get(), i, MPFR_RNDN);
        return z;
    }
    mpfr_prec_t prec() const { return re.prec(); }
    MpC operator+(const MpC& o) const {
        MpC r(std::max(prec(), o.prec()));
        mpfr_add(r.re.get(), re.get(), o.re.get(), MPFR_RNDN);
        mpfr_add(r.im.get(), im.get(), o.im.get(), MPFR_RNDN);
        return r;
    }
    MpC operator-(const MpC& o) const {
        MpC r(std::max(prec(), o.prec()));
        mpfr_sub(r.re.get(), re.get(), o.re.get(), MPFR_RNDN);
        mpfr_sub(r.im.get(), im.get(), o.im.get(), MPFR_RNDN);
        return r;
    }
    MpC operator*(const MpC& o) const {
        mpfr_prec_t p = std::max(prec(), o.prec());
        MpC r(p);
        MpF t1(p), t2(p);
        mpfr_mul(t1.get(), re.get(), o.re.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), im.get(), o.im.get(), MPFR_RNDN);
        mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_mul(t1.get(), re.get(), o.im.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), im.get(), o.re.get(), MPFR_RNDN);
        mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
        return r;
    }
    MpC operator/(const MpC& o) const {
        mpfr_prec_t p = std::max(prec(), o.prec());
        MpC r(p);
        MpF d(p), t1(p), t2(p);
        mpfr_mul(t1.get(), o.re.get(), o.re.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), o.im.get(), o.im.get(), MPFR_RNDN);
        mpfr_add(d.get(), t1.get(), t2.get(), MPFR_RNDN);
        // (a+bi)(c-di)/d
        mpfr_mul(t1.get(), re.get(), o.re.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), im.get(), o.im.get(), MPFR_RNDN);
        mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_div(r.re.get(), t1.get(), d.get(), MPFR_RNDN);
        mpfr_mul(t1.get(), im.get(), o.re.get(), MPFR_RNDN);
        mpfr_mul(t2.get(), re.get(), o.im.get(), MPFR_RNDN);
        mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
        mpfr_div(r.im.get(), t1.get(), d.get(), MPFR_RNDN);
        return r;
    }
    double abs2d() const {
        double a = re.d(), b = im.d();
        return a * a + b * b;
    }
};

// A certified isolating disk for one root: |z - center| <= radius, with the
// guarantee that exactly one root of the polynomial lies inside.
struct RootDisk {
    MpC center;
    MpF radius;

    CBox box() const {
        mpfr_prec_t p = center.prec();
        RIv re{MpF(p), MpF(p)}, im{MpF(p), MpF(p)};
        mpfr_sub(re.lo.get(), center.re.get(), radius.get(), MPFR_RNDD);
        mpfr_add(re.hi.get(), center.re.get(), radius.get(), MPFR_RNDU);
        mpfr_sub(im.lo.get(), center.im.get(), radius.get(), MPFR_RNDD);
        mpfr_add(im.hi.get(), center.im.get(), radius.get(), MPFR_RNDU);
        return {re, im};
    }
    bool is_certainly_real() const { return false; } // decided elsewhere exactly
};

namespace rootdetail {

inline std::vector<MpC> aberth(const std::vector<MpC>& coeffs, mpfr_prec_t prec,
                               const std::vector<MpC>* warm = nullptr) {
    int n = (int)coeffs.size() - 1;
    std::vector<MpC> z;
    if (warm && (int)warm->size() == n) {
        z = *warm;
        for (auto& w : z) {
            MpC t(prec);
            mpfr_set(t.re.get(), w.re.get(), MPFR_RNDN);
            mpfr_set(t.im.get(), w.im.get(), MPFR_RNDN);
            w = t;
        }
    } else {
        // initial guesses on a circle of the Cauchy radius
        double maxr = 0;
        double lead = std::sqrt(std::max(coeffs[n].abs2d(), 1e-300));
        for (int i = 0; i < n; ++i) {
            double m = std::sqrt(coeffs[i].abs2d()) / lead;
            double r = std::pow(std::max(m, 1e-300), 1.0 / (n - i));
            maxr = std::max(maxr, r);
        }
        maxr = 2 * maxr + 1;
        for (int i = 0; i < n; ++i) {
            double th = 2 * 3.14159265358979323846 * i / n + 0.40123;
            z.push_back(MpC::of(maxr * std::cos(th), maxr * std::sin(th), prec));
        }
    }
    std::vector<MpC> dcoeffs;
    for (int i = 1; i <= n; ++i) {
        MpC c(prec);
        mpfr_mul_ui(c.re.get(), coeffs[i].re.get(), i, MPFR_RNDN);
        mpfr_mul_ui(c.im.get(), coeffs[i].im.get(), i, MPFR_RNDN);
        dcoeffs.push_back(c);
    }
    auto evalp = [&](const std::vector<MpC>& cs, const MpC& x) {
        MpC acc(prec);
        for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    int iters = 40 + 6 * n + (int)(prec / 2);
    for (int it = 0; it < iters; ++it) {
        double maxstep = 0;
        for (int i = 0; i < n; ++i) {
            MpC p = evalp(coeffs, z[i]);
            MpC dp = evalp(dcoeffs, z[i]);
            if (dp.abs2d() == 0) continue;
            MpC newt = p / dp;
            MpC s(prec);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                MpC d = z[i] - z[j];
                if (d.abs2d() == 0) {
                    // nudge coincident iterates apart
                    mpfr_nextabove(z[i].re.get());
                    d = z[i] - z[j];
                }
                MpC one = MpC::of(1, 0, prec);
                s = s + one / d;
            }
            MpC denom = MpC::of(1, 0, prec) - newt * s;
            MpC w = denom.abs2d() == 0 ? newt : newt / denom;
            z[i] = z[i] - w;
            maxstep = std::max(maxstep, w.abs2d());
        }
        if (maxstep < 1e-4 && it > n) {
            // steps below double noise: allow a few polish rounds then stop
            if (maxstep == 0) break;
            if (it > iters - 5) break;
        }
    }
    return z;
}

} // namespace rootdetail

// Isolates all roots of a squarefree polynomial given interval enclosures of
// its complex coefficients (the enclosures must not allow the leading
// coefficient to vanish).  Returns certified pairwise-disjoint disks, one per
// root.  Throws math_error if certification fails at this precision.
inline std::vector<RootDisk> isolate_roots_boxes(const std::vector<CBox>& coeffs,
                                                 mpfr_prec_t prec,
                                                 const std::vector<MpC>* warm = nullptr) {
    int n = (int)coeffs.size() - 1;
    if (n <= 0) return {};
    if (coeffs[n].contains_zero())
        throw math_error("isolate_roots: leading coefficient interval contains zero");
    std::vector<MpC> mid;
    mid.reserve(coeffs.size());
    for (auto& c : coeffs) {
        MpC z(prec);
        mpfr_set(z.re.get(), c.re.mid().get(), MPFR_RNDN);
        mpfr_set(z.im.get(), c.im.mid().get(), MPFR_RNDN);
        mid.push_back(z);
    }
    auto zs = rootdetail::aberth(mid, prec, warm);

    // derivative coefficient boxes
    std::vector<CBox> dcoeffs;
    for (int i = 1; i <= n; ++i) {
        RIv fi = RIv::exact(rat_of(i), prec);
        dcoeffs.push_back({coeffs[i].re * fi, coeffs[i].im * fi});
    }

    std::vector<RootDisk> disks;
    for (auto& z : zs) {
        CBox zb{RIv::of(z.re), RIv::of(z.im)};
        CBox pv = poly_box_eval(coeffs, zb, prec);
        CBox dv = poly_box_eval(dcoeffs, zb, prec);
        MpF up = pv.mag();
        MpF lo = dv.mig();
        if (lo.sgn() <= 0) throw math_error("isolate_roots: derivative bound failed");
        MpF r(prec);
        mpfr_div(r.get(), up.get(), lo.get(), MPFR_RNDU);
        mpfr_mul_ui(r.get(), r.get(), (unsigned long)n, MPFR_RNDU);
        disks.push_back(RootDisk{z, r});
    }
    // pairwise disjoint?
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            MpF d(prec), t(prec);
            mpfr_sub(d.get(), disks[i].center.re.get(), disks[j].center.re.get(), MPFR_RNDN);
            mpfr_sqr(d.get(), d.get(), MPFR_RNDD);
            mpfr_sub(t.get(), disks[i].center.im.get(), disks[j].center.im.get(), MPFR_RNDN);
            mpfr_sqr(t.get(), t.get(), MPFR_RNDD);
            mpfr_add(d.get(), d.get(), t.get(), MPFR_RNDD);
            mpfr_sqrt(d.get(), d.get(), MPFR_RNDD);
            mpfr_add(t.get(), disks[i].radius.get(), disks[j].radius.get(), MPFR_RNDU);
            if (!(mpfr_cmp(t.get(), d.get()) < 0))
                throw math_error("isolate_roots: disks not separated");
        }
    // canonical order: by (re, im) midpoints
    std::sort(disks.begin(), disks.end(), [](const RootDisk& a, const RootDisk& b) {
        int c = mpfr_cmp(a.center.re.get(), b.center.re.get());
        if (c != 0) return c < 0;
        return mpfr_cmp(a.center.im.get(), b.center.im.get()) < 0;
    });
    return disks;
}

// Same, with automatic precision escalation.
inline std::vector<RootDisk> isolate_roots_escalate(
    const std::function<std::vector<CBox>(mpfr_prec_t)>& coeffs_at,
    mpfr_prec_t start_prec, mpfr_prec_t max_prec, mpfr_prec_t* used = nullptr) {
    for (mpfr_prec_t p = start_prec; p <= max_prec; p *= 2) {
        try {
            auto r = isolate_roots_boxes(coeffs_at(p), p);
            if (used) *used = p;
            return r;
        } catch (const math_error&) {
            if (p * 2 > max_prec) throw;
        }
    }
    throw math_error("isolate_roots: exceeded precision cap");
}

// ---------------------------------------------------------------------------
// Embeddings of a number field: certified boxes for the roots of the minimal
// polynomial, in a canonical order.  Cached on the field object.
// ---------------------------------------------------------------------------

struct EmbeddingTable {
    std::vector<RootDisk> roots; // canonical order
    mpfr_prec_t prec = 0;
    std::mutex mtx;
};

inline EmbeddingTable& field_embeddings(const FieldPtr& K, mpfr_prec_t want_prec = 128) {
    if (!K->embedding_cache) {
        auto tab = std::make_shared<EmbeddingTable>();
        auto coeffs_at = [&](mpfr_prec_t p) {
            std::vector<CBox> cs;
            for (auto& q : K->minpoly().c) cs.push_back(CBox::exact(q, Rat(0), p));
            return cs;
        };
        mpfr_prec_t used = 0;
        tab->roots = isolate_roots_escalate(coeffs_at, 64, mpfr_prec_t(1) << 22, &used);
        tab->prec = used;
        K->embedding_cache = tab;
    }
    auto tab = std::static_pointer_cast<EmbeddingTable>(K->embedding_cache);
    if (tab->prec < want_prec) {
        std::lock_guard<std::mutex> g(tab->mtx);
        if (tab->prec < want_prec) {
            auto coeffs_at = [&](mpfr_prec_t p) {
                std::vector<CBox> cs;
                for (auto& q : K->minpoly().c) cs.push_back(CBox::exact(q, Rat(0), p));
                return cs;
            };
            std::vector<MpC> warm;
            for (auto& rd : tab->roots) warm.push_back(rd.center);
            // keep the existing canonical order by re-matching on old disks
            auto fresh = isolate_roots_boxes(coeffs_at(want_prec), want_prec, &warm);
            std::vector<RootDisk> reordered(fresh.size(), RootDisk{MpC(64), MpF(64)});
            std::vector<bool> usedf(fresh.size(), false);
            for (size_t i = 0; i < tab->roots.size(); ++i) {
                bool placed = false;
                for (size_t j = 0; j < fresh.size(); ++j) {
                    if (usedf[j]) continue;
                    if (!fresh[j].box().disjoint(tab->roots[i].box())) {
                        reordered[i] = fresh[j];
                        usedf[j] = true;
                        placed = true;
                        break;
                    }
                }
                if (!placed) throw math_error("field_embeddings: refinement lost a root");
            }
            tab->roots = std::move(reordered);
            tab->prec = want_prec;
        }
    }
    return *tab;
}

inline int field_embedding_count(const FieldPtr& K) {
    if (K->is_rational()) return 1;
    return (int)field_embeddings(K).roots.size();
}

// Box of the field generator under embedding `emb` at the given precision.
inline CBox field_generator_box(const FieldPtr& K, int emb, mpfr_prec_t prec) {
    if (K->is_rational()) {
        Rat g0 = -K->minpoly().c[0];
        return CBox::exact(g0, Rat(0), prec);
    }
    auto& tab = field_embeddings(K, prec);
    if (emb < 0 || emb >= (int)tab.roots.size()) throw input_error("embedding index out of range");
    return tab.roots[emb].box();
}

// Interval enclosure of an NFElem under embedding `emb`.
inline CBox nf_embed_box(const NFElem& x, int emb, mpfr_prec_t prec) {
    if (x.universal_zero()) return CBox::zero(prec);
    return nf_box(x, field_generator_box(x.field(), emb, prec), prec);
}

} // namespace qll
