#pragma once

#include "qll/numkernel/numberfield.hpp"

#include <mpfr.h>

namespace qll {

// Minimal arbitrary-precision float wrapper over MPFR with value semantics.
class MpF {
public:
    MpF() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit MpF(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    MpF(const MpF& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpF(MpF&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    MpF& operator=(const MpF& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    MpF& operator=(MpF&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~MpF() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sgn() const { return mpfr_sgn(v_); }
    bool operator<(const MpF& o) const { return mpfr_cmp(v_, o.v_) < 0; }
    bool operator<=(const MpF& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
    std::string str() const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.17Re", v_);
        std::string r(s);
        mpfr_free_str(s);
        return r;
    }

private:
    mpfr_t v_;
};

// Closed real interval [lo, hi] with outward rounding.
struct RIv {
    MpF lo, hi;

    static RIv exact(const Rat& q, mpfr_prec_t prec) {
        RIv r{MpF(prec), MpF(prec)};
        mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static RIv point(double x, mpfr_prec_t prec) {
        RIv r{MpF(prec), MpF(prec)};
        mpfr_set_d(r.lo.get(), x, MPFR_RNDD);
        mpfr_set_d(r.hi.get(), x, MPFR_RNDU);
        return r;
    }
    static RIv of(const MpF& x) { RIv r{x, x}; return r; }
    static RIv zero(mpfr_prec_t prec) { return point(0.0, prec); }

    mpfr_prec_t prec() const { return std::max(lo.prec(), hi.prec()); }

    bool contains_zero() const { return lo.sgn() <= 0 && hi.sgn() >= 0; }
    int sign() const { // +1, -1, or 0 if undecided
        if (lo.sgn() > 0) return 1;
        if (hi.sgn() < 0) return -1;
        return 0;
    }

    RIv operator+(const RIv& o) const {
        mpfr_prec_t p = std::max(prec(), o.prec());
        RIv r{MpF(p), MpF(p)};
        mpfr_add(r.lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
        mpfr_add(r.hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
        return r;
    }
    RIv operator-(const RIv& o) const {
        mpfr_prec_t p = std::max(prec(), o.prec());
        RIv r{MpF(p), MpF(p)};
        mpfr_sub(r.lo.get(), lo.get(), o.hi.get(), MPFR_RNDD);
        mpfr_sub(r.hi.get(), hi.get(), o.lo.get(), MPFR_RNDU);
        return r;
    }
    RIv operator-() const {
        RIv r{MpF(prec()), MpF(prec())};
        mpfr_neg(r.lo.get(), hi.get(), MPFR_RNDD);
        mpfr_neg(r.hi.get(), lo.get(), MPFR_RNDU);
        return r;
    }
    RIv operator*(const RIv& o) const {
        mpfr_prec_t p = std::max(prec(), o.prec());
        MpF cand(p);
        RIv r{MpF(p), MpF(p)};
        bool first = true;
        mpfr_srcptr as[2] = {lo.get(), hi.get()};
        mpfr_srcptr bs[2] = {o.lo.get(), o.hi.get()};
        for (auto a : as)
            for (auto b : bs) {
                mpfr_mul(cand.get(), a, b, MPFR_RNDD);
                if (first || mpfr_cmp(cand.get(), r.lo.get()) < 0) mpfr_set(r.lo.get(), cand.get(), MPFR_RNDD);
                mpfr_mul(cand.get(), a, b, MPFR_RNDU);
                if (first || mpfr_cmp(cand.get(), r.hi.get()) > 0) mpfr_set(r.hi.get(), cand.get(), MPFR_RNDU);
                first = false;
            }
        return r;
    }
    // 1/x for intervals not containing zero
    RIv recip() const {
        if (contains_zero()) throw math_error("interval reciprocal through zero");
        mpfr_prec_t p = prec();
        RIv r{MpF(p), MpF(p)};
        mpfr_ui_div(r.lo.get(), 1, hi.get(), MPFR_RNDD);
        mpfr_ui_div(r.hi.get(), 1, lo.get(), MPFR_RNDU);
        return r;
    }

    // upper bound of |x|
    MpF mag() const {
        MpF r(prec());
        MpF a = lo, b = hi;
        mpfr_abs(a.get(), a.get(), MPFR_RNDU);
        mpfr_abs(b.get(), b.get(), MPFR_RNDU);
        mpfr_max(r.get(), a.get(), b.get(), MPFR_RNDU);
        return r;
    }
    // lower bound of |x| (0 if the interval straddles 0)
    MpF mig() const {
        MpF r(prec());
        if (contains_zero()) { mpfr_set_zero(r.get(), 1); return r; }
        MpF a = lo, b = hi;
        mpfr_abs(a.get(), a.get(), MPFR_RNDD);
        mpfr_abs(b.get(), b.get(), MPFR_RNDD);
        mpfr_min(r.get(), a.get(), b.get(), MPFR_RNDD);
        return r;
    }
    MpF width() const {
        MpF r(prec());
        mpfr_sub(r.get(), hi.get(), lo.get(), MPFR_RNDU);
        return r;
    }
    MpF mid() const {
        MpF r(prec());
        mpfr_add(r.get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
        return r;
    }
    bool disjoint(const RIv& o) const {
        return mpfr_cmp(hi.get(), o.lo.get()) < 0 || mpfr_cmp(o.hi.get(), lo.get()) < 0;
    }
};

// Axis-aligned complex box.
struct CBox {
    RIv re, im;

    static CBox exact(const Rat& re_, const Rat& im_, mpfr_prec_t prec) {
        return {RIv::exact(re_, prec), RIv::exact(im_, prec)};
    }
    static CBox zero(mpfr_prec_t prec) { return {RIv::zero(prec), RIv::zero(prec)}; }

    CBox operator+(const CBox& o) const { return {re + o.re, im + o.im}; }
    CBox operator-(const CBox& o) const { return {re - o.re, im - o.im}; }
    CBox operator-() const { return {-re, -im}; }
    CBox operator*(const CBox& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    MpF mag() const { // upper bound of |z| (1-norm bound is enough cheaper; use 2-norm)
        MpF a = re.mag(), b = im.mag();
        MpF r(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDU);
        return r;
    }
    MpF mig() const { // lower bound of |z|
        MpF a = re.mig(), b = im.mig();
        MpF r(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDD);
        return r;
    }
    MpF width() const {
        MpF a = re.width(), b = im.width();
        MpF r(std::max(a.prec(), b.prec()));
        mpfr_max(r.get(), a.get(), b.get(), MPFR_RNDU);
        return r;
    }
    bool disjoint(const CBox& o) const { return re.disjoint(o.re) || im.disjoint(o.im); }
    std::string str() const {
        return "[" + re.lo.str() + "," + re.hi.str() + "] + i[" + im.lo.str() + "," + im.hi.str() + "]";
    }
};

// Interval evaluation of an NFElem given a box for the field generator.
inline CBox nf_box(const NFElem& x, const CBox& gen_box, mpfr_prec_t prec) {
    if (x.universal_zero()) return CBox::zero(prec);
    CBox acc = CBox::zero(prec);
    const auto& cs = x.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        acc = acc * gen_box;
        acc = acc + CBox::exact(*it, Rat(0), prec);
    }
    return acc;
}

// Horner evaluation of a polynomial whose coefficients are already boxes.
inline CBox poly_box_eval(const std::vector<CBox>& coeffs, const CBox& z, mpfr_prec_t prec) {
    CBox acc = CBox::zero(prec);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

} // namespace qll
