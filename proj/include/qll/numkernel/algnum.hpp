#pragma once

#include "qll/numkernel/extfield.hpp"
#include "qll/numkernel/multipoly.hpp"

namespace qll {

// A specific algebraic number: root #root of the modulus of an extension.
struct Anchor {
    ExtPtr ctx;
    int root = 0;
};

// Multivariate expressions in several anchors, with NFElem coefficients
// (variable i of the MPoly is anchor i).  The zero test is certified:
// interval exclusion one way, a resultant-based separation bound the other.
//
// Soundness of the bound: eliminating each anchor u_i against its modulus
// h_i(u_i) by (pseudo-)resultants yields a nonzero R(v) in K[v] having the
// exact value of the expression among its roots.  If R = v^k * S with
// S(0) != 0 then either the value is 0 or |value| >= (lower bound of the
// smallest root modulus of S).  Extraneous factors only shrink the bound,
// never break soundness.
class AlgebraicTester {
public:
    explicit AlgebraicTester(std::vector<Anchor> anchors) : anchors_(std::move(anchors)) {}

    const std::vector<Anchor>& anchors() const { return anchors_; }

    CBox box_of(const MPoly& expr, mpfr_prec_t prec) const {
        std::vector<CBox> pts;
        pts.reserve(anchors_.size());
        for (auto& a : anchors_) pts.push_back(a.ctx->roots(prec).roots[a.root].box());
        int emb = anchors_.empty() ? 0 : anchors_[0].ctx->embedding;
        return eval_box(expr, pts, emb, prec);
    }

    // Certified zero test of the expression value.
    bool is_zero_value(const MPoly& expr) const {
        if (expr.zero()) return true;
        if (anchors_.empty()) {
            NFElem acc;
            for (auto& [e, c] : expr.t) acc = acc + c;
            return acc.zero();
        }
        // cheap interval rounds first
        for (mpfr_prec_t p = 96; p <= 1536; p *= 2) {
            CBox b = box_of(expr, p);
            if (!b.contains_zero()) return false;
        }
        MpF bound = separation_bound(expr);
        // refine until the enclosure is decisively under or over the bound
        for (mpfr_prec_t p = 1536;; p *= 2) {
            CBox b = box_of(expr, p);
            if (!b.contains_zero()) return false;
            if (mpfr_cmp(b.mag().get(), bound.get()) < 0) return true;
            if (p > (mpfr_prec_t(1) << 22))
                throw math_error("algebraic zero test: exceeded precision cap");
        }
    }

    // Certified sign of a real-valued expression (throws if imaginary part
    // cannot be excluded and the value is non-real).
    int sign_value(const MPoly& expr) const {
        if (is_zero_value(expr)) return 0;
        for (mpfr_prec_t p = 96;; p *= 2) {
            CBox b = box_of(expr, p);
            int s = b.re.sign();
            if (s != 0) return s;
            if (p > (mpfr_prec_t(1) << 22))
                throw math_error("algebraic sign test: exceeded precision cap");
        }
    }

private:
    std::vector<Anchor> anchors_;

    static CBox eval_box(const MPoly& e, const std::vector<CBox>& pts, int emb, mpfr_prec_t prec) {
        CBox acc = CBox::zero(prec);
        for (auto& [ex, c] : e.t) {
            CBox v = c.universal_zero() ? CBox::zero(prec) : nf_embed_box(c, emb, prec);
            for (size_t i = 0; i < pts.size(); ++i)
                for (int k = 0; k < (int)ex[i]; ++k) v = v * pts[i];
            acc = acc + v;
        }
        return acc;
    }

    // Eliminates all anchors, producing R(v) with the value among its roots,
    // then returns a positive lower bound for nonzero roots of R.
    MpF separation_bound(const MPoly& expr) const {
        int n = (int)anchors_.size();
        const FieldPtr K = anchors_.empty() ? FieldPtr{} : anchors_[0].ctx->K;
        // polynomial ring in variables (v, u_1..u_n): v is variable 0
        MPoly cur(n + 1);
        // v - expr
        {
            MPoly::Expo ev(n + 1, 0);
            ev[0] = 1;
            cur.add_term(ev, NFElem::one_of(K));
            for (auto& [e, c] : expr.t) {
                MPoly::Expo e2(n + 1, 0);
                for (int i = 0; i < n; ++i) e2[i + 1] = e[i];
                cur.add_term(e2, -c);
            }
        }
        for (int i = n; i >= 1; --i) {
            // eliminate variable i against h_i(u_i)
            MPoly hm(n + 1);
            const auto& h = anchors_[i - 1].ctx->h;
            for (int k = 0; k <= h.degree(); ++k) {
                if (h.c[k].zero()) continue;
                MPoly::Expo e(n + 1, 0);
                e[i] = (std::uint16_t)k;
                hm.add_term(e, h.c[k]);
            }
            cur = elim_resultant(cur, hm, i);
            if (cur.zero()) throw math_error("separation bound: vanishing resultant");
        }
        // cur is univariate in v over K
        Poly<NFElem> R;
        {
            std::vector<NFElem> cs;
            for (auto& [e, c] : cur.t) {
                int k = e[0];
                if ((int)cs.size() <= k) cs.resize(k + 1, NFElem{});
                cs[k] = cs[k] + c;
            }
            R = Poly<NFElem>{std::move(cs)};
        }
        int strip = 0;
        while (strip <= R.degree() && R.coeff(strip).zero()) ++strip;
        if (strip > R.degree()) throw math_error("separation bound: zero polynomial");
        std::vector<NFElem> scoef(R.c.begin() + strip, R.c.end());
        Poly<NFElem> S{std::move(scoef)};
        // Cauchy-type bound: |root| >= |c0| / (|c0| + max_i |c_i|)
        int emb = anchors_[0].ctx->embedding;
        for (mpfr_prec_t p = 128;; p *= 2) {
            CBox c0 = nf_embed_box(S.c[0].universal_zero() ? NFElem::zero_of(K) : S.c[0], emb, p);
            MpF lo = c0.mig();
            if (lo.sgn() <= 0) {
                if (p > (mpfr_prec_t(1) << 20))
                    throw math_error("separation bound: constant term enclosure stuck at zero");
                continue;
            }
            MpF mx(p);
            mpfr_set_zero(mx.get(), 1);
            for (int i = 1; i <= S.degree(); ++i) {
                if (S.c[i].zero()) continue;
                CBox ci = nf_embed_box(S.c[i], emb, p);
                MpF m = ci.mag();
                if (mpfr_cmp(m.get(), mx.get()) > 0) mx = m;
            }
            MpF denom(p), r(p);
            mpfr_add(denom.get(), lo.get(), mx.get(), MPFR_RNDU);
            mpfr_div(r.get(), lo.get(), denom.get(), MPFR_RNDD);
            // halve for safety margin (strict inequality)
            mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDD);
            if (r.sgn() > 0) return r;
            if (p > (mpfr_prec_t(1) << 20))
                throw math_error("separation bound failed");
        }
    }

    // Resultant of a and b with respect to variable `var` via a primitive
    // pseudo-remainder sequence; may carry extraneous factors (harmless for
    // the separation bound).
    static MPoly elim_resultant(MPoly a, MPoly b, int var) {
        Poly<MPoly> A = a.collect(var), B = b.collect(var);
        if (A.zero() || B.zero()) return MPoly(a.nvars);
        if (A.degree() < B.degree()) std::swap(A, B);
        while (B.degree() > 0) {
            MPoly lcB = B.lc();
            Poly<MPoly> R = A;
            while (!R.zero() && R.degree() >= B.degree()) {
                // R := lcB * R - lc(R) x^(degR-degB) * B
                int k = R.degree() - B.degree();
                Poly<MPoly> t1, t2;
                t1.c.resize(R.c.size());
                for (size_t i = 0; i < R.c.size(); ++i) t1.c[i] = lcB * R.c[i];
                t1.trim();
                t2.c.assign(B.c.size() + k, MPoly(a.nvars));
                for (size_t i = 0; i < B.c.size(); ++i) t2.c[i + k] = R.lc() * B.c[i];
                t2.trim();
                R = t1 - t2;
            }
            if (R.zero()) return MPoly(a.nvars); // common factor: true resultant 0
            A = B;
            B = R;
            primitive_scale(B);
        }
        // B is a nonzero "constant" in var: a scalar multiple of a PRS element,
        // so it vanishes wherever A and B of the original pair share a root.
        return B.c[0];
    }

    static void primitive_scale(Poly<MPoly>& p) {
        Int l(1), g(0);
        for (auto& mp : p.c)
            for (auto& [e, c] : mp.t) {
                if (c.universal_zero()) continue;
                for (auto& q : c.coeffs()) {
                    if (sgn(q) == 0) continue;
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
                }
            }
        for (auto& mp : p.c)
            for (auto& [e, c] : mp.t) {
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
        for (auto& mp : p.c)
            for (auto& [e, c] : mp.t) c = c * s;
    }
};

} // namespace qll
