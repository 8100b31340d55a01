#pragma once

#include "qll/numkernel/roots.hpp"

namespace qll {

struct ExtCtx;
using ExtPtr = std::shared_ptr<const ExtCtx>;

// Thrown when arithmetic meets a zero divisor modulo a reducible modulus;
// carries the discovered factor so callers can split (dynamic evaluation).
struct ext_split : math_error {
    Poly<NFElem> factor;
    explicit ext_split(Poly<NFElem> f)
        : math_error("extension modulus split detected"), factor(std::move(f)) {}
};

// Simple extension L = K[u]/(h) of a number field, h monic (normally
// irreducible; a reducible modulus surfaces as ext_split during inversion).
// Carries lazily isolated roots of h under a fixed embedding of K.
struct ExtCtx : std::enable_shared_from_this<ExtCtx> {
    FieldPtr K;
    Poly<NFElem> h; // monic, degree >= 1
    int embedding = 0;

    struct RootTable {
        std::vector<RootDisk> roots;
        mpfr_prec_t prec = 0;
        std::mutex mtx;
    };
    mutable std::shared_ptr<RootTable> roots_cache;

    static ExtPtr create(FieldPtr K, Poly<NFElem> h_monic, int embedding = 0) {
        auto c = std::make_shared<ExtCtx>();
        c->K = std::move(K);
        c->h = std::move(h_monic);
        c->embedding = embedding;
        if (c->h.degree() < 1) throw math_error("ExtCtx: modulus must have degree >= 1");
        return c;
    }

    int degree() const { return h.degree(); }

    std::uint64_t hash() const {
        std::uint64_t hh = K->hash();
        for (auto& c : h.c) hh = hash_mix(hh, c.hash());
        return hash_mix(hh, (std::uint64_t)embedding);
    }

    const RootTable& roots(mpfr_prec_t want) const {
        if (!roots_cache) roots_cache = std::make_shared<RootTable>();
        auto& tab = *roots_cache;
        std::lock_guard<std::mutex> g(tab.mtx);
        if (tab.prec >= want && !tab.roots.empty()) return tab;
        auto coeffs_at = [&](mpfr_prec_t p) {
            std::vector<CBox> cs;
            for (auto& c : h.c) cs.push_back(nf_embed_box(nf_or_zero(c), embedding, p));
            return cs;
        };
        if (tab.roots.empty()) {
            mpfr_prec_t used = 0;
            tab.roots = isolate_roots_escalate(coeffs_at, std::max<mpfr_prec_t>(64, want), mpfr_prec_t(1) << 22, &used);
            tab.prec = used;
        } else {
            std::vector<MpC> warm;
            for (auto& rd : tab.roots) warm.push_back(rd.center);
            mpfr_prec_t p = std::max<mpfr_prec_t>(want, 2 * tab.prec);
            auto fresh = isolate_roots_boxes(coeffs_at(p), p, &warm);
            // keep previous ordering
            std::vector<RootDisk> reordered(fresh.size(), RootDisk{MpC(64), MpF(64)});
            std::vector<bool> used(fresh.size(), false);
            for (size_t i = 0; i < tab.roots.size(); ++i) {
                bool ok = false;
                for (size_t j = 0; j < fresh.size(); ++j) {
                    if (used[j]) continue;
                    if (!fresh[j].box().disjoint(tab.roots[i].box())) {
                        reordered[i] = fresh[j];
                        used[j] = true;
                        ok = true;
                        break;
                    }
                }
                if (!ok) throw math_error("ExtCtx: root refinement mismatch");
            }
            tab.roots = std::move(reordered);
            tab.prec = p;
        }
        return tab;
    }

private:
    NFElem nf_or_zero(const NFElem& x) const {
        if (x.universal_zero()) return NFElem::zero_of(K);
        return x;
    }
};

// Element of a simple extension; universal zero when ctx is null.
class ExtElem {
public:
    ExtElem() = default;
    ExtElem(ExtPtr L, Poly<NFElem> rep) : L_(std::move(L)), rep_(std::move(rep)) {
        reduce();
    }
    static ExtElem from_base(const ExtPtr& L, const NFElem& x) {
        return ExtElem(L, Poly<NFElem>::constant(x));
    }
    static ExtElem generator(const ExtPtr& L) {
        std::vector<NFElem> c{NFElem::zero_of(L->K), NFElem::one_of(L->K)};
        return ExtElem(L, Poly<NFElem>{std::move(c)});
    }
    static ExtElem one_of(const ExtPtr& L) { return from_base(L, NFElem::one_of(L->K)); }

    bool universal_zero() const { return !L_; }
    const ExtPtr& ctx() const { return L_; }
    const Poly<NFElem>& rep() const { return rep_; }
    bool zero() const { return rep_.zero(); }

    bool operator==(const ExtElem& o) const {
        if (universal_zero()) return o.zero();
        if (o.universal_zero()) return zero();
        check(o);
        return rep_ == o.rep_;
    }

    ExtElem operator-() const { return ExtElem{L_, -rep_, tag{}}; }
    ExtElem operator+(const ExtElem& o) const {
        if (universal_zero()) return o;
        if (o.universal_zero()) return *this;
        check(o);
        return ExtElem{L_, rep_ + o.rep_, tag{}};
    }
    ExtElem operator-(const ExtElem& o) const { return *this + (-o); }
    ExtElem operator*(const ExtElem& o) const {
        if (universal_zero() || o.universal_zero()) return ExtElem{};
        check(o);
        return ExtElem(L_, rep_ * o.rep_);
    }

    ExtElem inv() const {
        if (zero() || universal_zero()) throw math_error("ExtElem: inverse of zero");
        auto [g, s, t] = poly_xgcd(rep_, L_->h);
        (void)t;
        if (g.degree() != 0) throw ext_split(g); // zero divisor: modulus splits
        return ExtElem(L_, s);
    }

    std::uint64_t hash() const {
        std::uint64_t h = L_ ? L_->hash() : 0;
        for (auto& c : rep_.c) h = hash_mix(h, c.hash());
        return h;
    }

    // interval enclosure at a given root index of the modulus
    CBox box(int root, mpfr_prec_t prec) const {
        if (universal_zero()) return CBox::zero(prec);
        auto& tab = L_->roots(prec);
        CBox u = tab.roots[root].box();
        CBox acc = CBox::zero(prec);
        for (auto it = rep_.c.rbegin(); it != rep_.c.rend(); ++it) {
            acc = acc * u;
            acc = acc + nf_embed_box(it->universal_zero() ? NFElem::zero_of(L_->K) : *it,
                                     L_->embedding, prec);
        }
        return acc;
    }

private:
    struct tag {};
    ExtElem(ExtPtr L, Poly<NFElem> rep, tag) : L_(std::move(L)), rep_(std::move(rep)) {}
    void check(const ExtElem& o) const {
        if (L_.get() != o.L_.get()) throw math_error("ExtElem: mixing extensions");
    }
    void reduce() {
        if (L_ && rep_.degree() >= L_->h.degree()) rep_ = rep_ % L_->h;
    }

    ExtPtr L_;
    Poly<NFElem> rep_;
};

inline bool is_zero(const ExtElem& x) { return x.zero(); }
inline ExtElem field_inv(const ExtElem& x) { return x.inv(); }

} // namespace qll
