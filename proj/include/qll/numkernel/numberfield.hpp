#pragma once

#include "qll/numkernel/poly.hpp"

namespace qll {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

namespace detail {
bool zpoly_is_irreducible(const Poly<Rat>& m); // defined in zfactor.hpp
}

// A number field Q[g]/(m(g)) with m monic irreducible over Q.  Degree 1 is
// Q itself.  Values are immutable after construction; embeddings (isolating
// boxes for the complex roots of m in a canonical order) are cached lazily
// by the root-isolation code.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // Creates the field from integer minimal-polynomial coefficients
    // (constant term first).  The polynomial must be monic after clearing
    // denominators -- callers pass it monic already.
    static FieldPtr create(std::string gen, std::vector<Int> minpoly_int,
                           bool check_irreducible = true) {
        std::vector<Rat> cs;
        cs.reserve(minpoly_int.size());
        for (auto& z : minpoly_int) cs.emplace_back(Rat(z));
        Poly<Rat> m(std::move(cs));
        if (m.degree() < 1) throw input_error("number field: minimal polynomial must have degree >= 1");
        if (!(m.lc() == Rat(1))) throw input_error("number field: minimal polynomial must be monic");
        auto f = std::shared_ptr<NumberField>(new NumberField());
        f->gen_ = std::move(gen);
        f->min_ = std::move(m);
        if (check_irreducible && f->degree() > 1 && !detail::zpoly_is_irreducible(f->min_))
            throw input_error("number field: minimal polynomial is reducible over Q");
        f->init_reduction_rows();
        return f;
    }

    static FieldPtr rationals() {
        static FieldPtr q = create("g", {Int(0), Int(1)}, false);
        return q;
    }

    int degree() const { return min_.degree(); }
    const std::string& generator_name() const { return gen_; }
    const Poly<Rat>& minpoly() const { return min_; }
    bool is_rational() const { return degree() == 1; }

    // g^(d+i) mod m, for i in [0, d-2]; used by multiplication.
    const std::vector<std::vector<Rat>>& reduction_rows() const { return red_; }

    std::uint64_t hash() const {
        std::uint64_t h = hash_str(0x9c0ffee1, gen_);
        for (auto& q : min_.c) h = hash_rat(h, q);
        return h;
    }

    // Lazily attached by the root isolation code (embedding boxes).
    mutable std::shared_ptr<void> embedding_cache;
    mutable std::shared_ptr<void> embedding_mutex;

private:
    NumberField() = default;
    void init_reduction_rows() {
        int d = degree();
        red_.clear();
        if (d <= 1) return;
        // row r: g^(d+r) = sum_j red_[r][j] g^j
        std::vector<Rat> cur(d); // g^d mod m = -(m_0 + m_1 g + ...)
        for (int j = 0; j < d; ++j) cur[j] = -min_.c[j];
        red_.push_back(cur);
        for (int r = 1; r <= d - 2; ++r) {
            std::vector<Rat> nxt(d);
            Rat top = cur[d - 1];
            for (int j = d - 1; j >= 1; --j) nxt[j] = cur[j - 1];
            nxt[0] = Rat(0);
            if (sgn(top) != 0)
                for (int j = 0; j < d; ++j) nxt[j] += top * red_[0][j];
            red_.push_back(nxt);
            cur = std::move(nxt);
        }
    }

    std::string gen_;
    Poly<Rat> min_;
    std::vector<std::vector<Rat>> red_;
};

// Element of a number field in the power basis of the generator.  A
// default-constructed element is a universal zero that combines with any
// field; all other elements carry their field.
class NFElem {
public:
    NFElem() = default;
    NFElem(FieldPtr f, Rat constant) : f_(std::move(f)) {
        c_.assign(f_->degree(), Rat(0));
        c_[0] = std::move(constant);
        normalize();
    }
    NFElem(FieldPtr f, std::vector<Rat> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
        if ((int)c_.size() != f_->degree()) c_.resize(f_->degree(), Rat(0));
        normalize();
    }
    static NFElem generator(const FieldPtr& f) {
        if (f->degree() == 1) {
            // g is a root of the degree-1 minpoly: g = -m_0
            return NFElem(f, -f->minpoly().c[0]);
        }
        std::vector<Rat> v(f->degree(), Rat(0));
        v[1] = Rat(1);
        return NFElem(f, std::move(v));
    }
    static NFElem zero_of(const FieldPtr& f) { return NFElem(f, Rat(0)); }
    static NFElem one_of(const FieldPtr& f) { return NFElem(f, Rat(1)); }

    bool universal_zero() const { return !f_; }
    const FieldPtr& field() const { return f_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool zero() const {
        if (!f_) return true;
        for (auto& q : c_)
            if (sgn(q) != 0) return false;
        return true;
    }

    bool is_rational_value() const {
        if (!f_) return true;
        for (size_t i = 1; i < c_.size(); ++i)
            if (sgn(c_[i]) != 0) return false;
        return true;
    }
    Rat rational_value() const {
        if (!f_) return Rat(0);
        if (!is_rational_value()) throw math_error("NFElem: not a rational value");
        return c_[0];
    }

    bool operator==(const NFElem& o) const {
        if (universal_zero()) return o.zero();
        if (o.universal_zero()) return zero();
        check_same(o);
        return c_ == o.c_;
    }

    NFElem operator-() const {
        NFElem r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }

    NFElem operator+(const NFElem& o) const {
        if (universal_zero()) return o;
        if (o.universal_zero()) return *this;
        check_same(o);
        NFElem r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }
    NFElem operator-(const NFElem& o) const { return *this + (-o); }

    NFElem operator*(const NFElem& o) const {
        if (universal_zero() || o.universal_zero()) return NFElem{};
        check_same(o);
        int d = f_->degree();
        if (d == 1) {
            NFElem r(f_, c_[0] * o.c_[0]);
            return r;
        }
        std::vector<Rat> prod(2 * d - 1, Rat(0));
        for (int i = 0; i < d; ++i) {
            if (sgn(c_[i]) == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (sgn(o.c_[j]) == 0) continue;
                prod[i + j] += c_[i] * o.c_[j];
            }
        }
        const auto& red = f_->reduction_rows();
        std::vector<Rat> out(prod.begin(), prod.begin() + d);
        for (int k = d; k <= 2 * d - 2; ++k) {
            if (sgn(prod[k]) == 0) continue;
            const auto& row = red[k - d];
            for (int j = 0; j < d; ++j)
                if (sgn(row[j]) != 0) out[j] += prod[k] * row[j];
        }
        NFElem r;
        r.f_ = f_;
        r.c_ = std::move(out);
        return r;
    }

    NFElem operator*(const Rat& s) const {
        if (universal_zero()) return *this;
        NFElem r = *this;
        for (auto& q : r.c_) q *= s;
        return r;
    }

    NFElem inv() const {
        if (zero()) throw math_error("NFElem: inverse of zero");
        int d = f_->degree();
        if (d == 1) return NFElem(f_, field_inv(c_[0]));
        // xgcd(rep, minpoly) = 1 => s * rep == 1 mod m
        Poly<Rat> rep{std::vector<Rat>(c_)};
        auto [g, s, t] = poly_xgcd(rep, f_->minpoly());
        (void)t;
        if (g.degree() != 0) throw math_error("NFElem: minimal polynomial not irreducible (gcd found)");
        // g is monic constant 1 already
        std::vector<Rat> out(d, Rat(0));
        for (int i = 0; i <= s.degree() && i < d; ++i) out[i] = s.c[i];
        return NFElem(f_, std::move(out));
    }

    std::uint64_t hash() const {
        std::uint64_t h = f_ ? f_->hash() : 0;
        for (auto& q : c_) h = hash_rat(h, q);
        return h;
    }

    std::string str() const {
        if (universal_zero()) return "0";
        if (is_rational_value()) return c_[0].get_str();
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) continue;
            if (!first) os << " + ";
            os << c_[i].get_str();
            if (i >= 1) os << "*" << f_->generator_name();
            if (i >= 2) os << "^" << i;
            first = false;
        }
        if (first) return "0";
        return os.str();
    }

private:
    void check_same(const NFElem& o) const {
        if (f_.get() != o.f_.get())
            throw math_error("NFElem: mixing elements of different fields");
    }
    void normalize() {
        for (auto& q : c_) q.canonicalize();
    }

    FieldPtr f_;
    std::vector<Rat> c_;
};

inline bool is_zero(const NFElem& x) { return x.zero(); }
inline NFElem field_inv(const NFElem& x) { return x.inv(); }

inline NFElem nf_from_int(const FieldPtr& f, long v) { return NFElem(f, rat_of(v)); }

// Converts Poly<Rat> coefficients into the field f.
inline Poly<NFElem> poly_to_field(const Poly<Rat>& p, const FieldPtr& f) {
    std::vector<NFElem> cs;
    cs.reserve(p.c.size());
    for (auto& q : p.c) cs.emplace_back(f, q);
    return Poly<NFElem>(std::move(cs));
}

// Evaluation of a rational-coefficient polynomial at a field element.
inline NFElem poly_eval_nf(const Poly<Rat>& p, const NFElem& x) {
    NFElem r;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        r = r * x + NFElem(x.field(), *it);
    return r;
}

// Clears denominators and content: returns scaled polynomial with integer
// entries across all NF coordinates and unit content.  Helps Groebner bases
// keep coefficients small.
inline Poly<NFElem> poly_primitive(const Poly<NFElem>& p) {
    if (p.zero()) return p;
    Int l(1), g(0);
    for (auto& e : p.c)
        for (auto& q : e.coeffs()) {
            if (sgn(q) == 0) continue;
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        }
    for (auto& e : p.c)
        for (auto& q : e.coeffs()) {
            if (sgn(q) == 0) continue;
            Int n = num(q) * (l / den(q));
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        }
    if (sgn(g) == 0) return p;
    Rat s(l, g);
    s.canonicalize();
    Poly<NFElem> r = p;
    for (auto& e : r.c) e = e * s;
    return r;
}

} // namespace qll
