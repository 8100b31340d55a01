#pragma once

#include "qll/base.hpp"

namespace qll {

inline bool is_zero(const Rat&);
inline Rat field_inv(const Rat& x) {
    if (sgn(x) == 0) throw math_error("division by zero in QQ");
    Rat r;
    mpq_inv(r.get_mpq_t(), x.get_mpq_t());
    return r;
}

// Dense univariate polynomial over a coefficient ring T.  The coefficient
// type must provide +, -, *, unary -, ==, a default constructor meaning 0,
// and free functions is_zero / field_inv (the latter only for ops that
// divide).  A default-constructed T is a "universal zero" compatible with
// every context, so Poly<T> nests (Poly<Poly<T>> works).
template <class T>
struct Poly {
    std::vector<T> c; // c[i] multiplies x^i; invariant: trailing coeff nonzero

    Poly() = default;
    explicit Poly(std::vector<T> cc) : c(std::move(cc)) { trim(); }
    static Poly constant(T v) {
        Poly p;
        if (!is_zero(v)) p.c.push_back(std::move(v));
        return p;
    }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; } // -1 for the zero polynomial
    const T& lc() const { return c.back(); }
    T coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : T{}; }

    bool operator==(const Poly& o) const {
        if (c.size() != o.c.size()) return false;
        for (size_t i = 0; i < c.size(); ++i)
            if (!(c[i] == o.c[i])) return false;
        return true;
    }

    Poly operator+(const Poly& o) const {
        Poly r;
        r.c.resize(std::max(c.size(), o.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < c.size() && i < o.c.size()) r.c[i] = c[i] + o.c[i];
            else if (i < c.size()) r.c[i] = c[i];
            else r.c[i] = o.c[i];
        }
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (zero() || o.zero()) return Poly{};
        Poly r;
        r.c.assign(c.size() + o.c.size() - 1, T{});
        for (size_t i = 0; i < c.size(); ++i) {
            if (is_zero(c[i])) continue;
            for (size_t j = 0; j < o.c.size(); ++j) {
                if (is_zero(o.c[j])) continue;
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
            }
        }
        r.trim();
        return r;
    }

    Poly operator*(const T& s) const {
        if (is_zero(s)) return Poly{};
        Poly r = *this;
        for (auto& x : r.c) x = x * s;
        r.trim();
        return r;
    }

    Poly shifted(int k) const { // multiply by x^k
        if (zero()) return *this;
        Poly r;
        r.c.assign(c.size() + k, T{});
        for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
        return r;
    }

    T eval(const T& x) const { // Horner
        T r{};
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    Poly derivative() const {
        Poly r;
        if (c.size() <= 1) return r;
        r.c.resize(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i)
            r.c[i - 1] = mul_by_int(c[i], (long)i);
        r.trim();
        return r;
    }

    // coefficient * small integer, staying inside T
    static T mul_by_int(const T& x, long n) {
        T r{};
        if (n == 0) return r;
        bool neg = n < 0;
        unsigned long a = neg ? -(unsigned long)n : (unsigned long)n;
        T acc = x;
        // binary doubling
        bool first = true;
        T base = x;
        r = T{};
        while (a) {
            if (a & 1) {
                if (first) { r = base; first = false; }
                else r = r + base;
            }
            a >>= 1;
            if (a) base = base + base;
        }
        if (first) r = T{};
        return neg ? -r : r;
    }

    Poly reversed() const {
        Poly r = *this;
        std::reverse(r.c.begin(), r.c.end());
        r.trim();
        return r;
    }
};

template <class T>
bool is_zero(const Poly<T>& p) { return p.zero(); }

// Euclidean division; requires invertible leading coefficient of d.
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divmod(const Poly<T>& n, const Poly<T>& d) {
    if (d.zero()) throw math_error("polynomial division by zero");
    Poly<T> q, r = n;
    if (r.degree() < d.degree()) return {q, r};
    T dinv = field_inv(d.lc());
    q.c.assign(r.degree() - d.degree() + 1, T{});
    while (!r.zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        T f = r.lc() * dinv;
        q.c[k] = f;
        // r -= f * x^k * d
        for (int i = 0; i <= d.degree(); ++i)
            r.c[i + k] = r.c[i + k] - f * d.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class T>
Poly<T> operator%(const Poly<T>& n, const Poly<T>& d) { return poly_divmod(n, d).second; }
template <class T>
Poly<T> operator/(const Poly<T>& n, const Poly<T>& d) { return poly_divmod(n, d).first; }

// Exact division (throws if the division leaves a remainder).
template <class T>
Poly<T> poly_divexact(const Poly<T>& n, const Poly<T>& d) {
    auto [q, r] = poly_divmod(n, d);
    if (!r.zero()) throw math_error("poly_divexact: division not exact");
    return q;
}

template <class T>
Poly<T> poly_monic(const Poly<T>& p) {
    if (p.zero()) return p;
    return p * field_inv(p.lc());
}

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
    while (!b.zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.zero()) return a;
    return poly_monic(a);
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic (or zero).
template <class T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> poly_xgcd(Poly<T> a, Poly<T> b) {
    Poly<T> s0 = Poly<T>::constant(unit_like(a, b)), s1;
    Poly<T> t0, t1 = s0;
    while (!b.zero()) {
        auto [q, r] = poly_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
        Poly<T> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<T> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (a.zero()) return {a, Poly<T>{}, Poly<T>{}};
    T inv = field_inv(a.lc());
    return {a * inv, s0 * inv, t0 * inv};
}

// A multiplicative unit of the coefficient field, inferred from the inputs
// (needed because contextful coefficient types have no global "one").
template <class T>
T unit_like(const Poly<T>& a, const Poly<T>& b) {
    if (!a.zero()) return field_inv(a.lc()) * a.lc();
    if (!b.zero()) return field_inv(b.lc()) * b.lc();
    throw math_error("unit_like: both polynomials zero");
}

// Squarefree part over a characteristic-zero field.
template <class T>
Poly<T> poly_squarefree_part(const Poly<T>& p) {
    if (p.zero()) throw math_error("squarefree part of zero polynomial");
    if (p.degree() == 0) return poly_monic(p);
    auto g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return poly_monic(p);
    return poly_monic(poly_divexact(p, g));
}

// Yun's squarefree decomposition: p = unit * prod f_i^i, the f_i pairwise
// coprime and squarefree. Returns the (f_i, i) with f_i non-constant.
template <class T>
std::vector<std::pair<Poly<T>, int>> poly_squarefree_decomposition(const Poly<T>& p) {
    if (p.zero()) throw math_error("squarefree decomposition of zero polynomial");
    std::vector<std::pair<Poly<T>, int>> out;
    if (p.degree() == 0) return out;
    Poly<T> a = poly_monic(p);
    Poly<T> d = a.derivative();
    Poly<T> g = poly_gcd(a, d);
    if (g.degree() == 0) {
        out.push_back({a, 1});
        return out;
    }
    Poly<T> w = poly_divexact(a, g);
    Poly<T> y = poly_divexact(d, g);
    Poly<T> z = y - w.derivative();
    int i = 1;
    while (!z.zero()) {
        Poly<T> f = poly_gcd(w, z);
        if (f.degree() > 0) out.push_back({f, i});
        w = poly_divexact(w, f);
        y = poly_divexact(z, f);
        z = y - w.derivative();
        ++i;
    }
    if (w.degree() > 0) out.push_back({w, i});
    return out;
}

// Resultant of two polynomials over a field, by the subresultant-free
// Euclidean product formula: res(a,b) = lc(b)^{deg a - deg r} * (-1)^{..} ...
// computed iteratively.  Both inputs nonzero.
template <class T>
T poly_resultant(Poly<T> a, Poly<T> b) {
    if (a.zero() || b.zero()) throw math_error("resultant with zero polynomial");
    T res = field_inv(a.lc()) * a.lc(); // one
    bool neg = false;
    while (true) {
        if (b.degree() == 0) {
            // res *= lc(b)^{deg a}
            T p = b.lc();
            for (int i = 0; i < a.degree(); ++i) res = res * p;
            break;
        }
        auto r = a % b;
        if (r.zero()) return T{}; // common factor

        // res(a,b) = (-1)^{da db} res(b,a); res(b,a) = lc(b)^{da - dr} res(b,r)
        long da = a.degree(), db = b.degree(), dr = r.degree();
        if ((da & 1) && (db & 1)) neg = !neg;
        T p = b.lc();
        for (long i = 0; i < da - dr; ++i) res = res * p;
        a = std::move(b);
        b = std::move(r);
    }
    if (neg) res = -res;
    return res;
}

// p(x+k) for small integer k.
template <class T>
Poly<T> poly_shift_arg(const Poly<T>& p, long k) {
    // Horner on (x + k)
    Poly<T> r;
    Poly<T> xk;
    xk.c.assign(2, T{});
    // x + k needs a "one": infer from p
    if (p.zero()) return p;
    T one = field_inv(p.lc()) * p.lc();
    xk.c[1] = one;
    xk.c[0] = Poly<T>::mul_by_int(one, k);
    xk.trim();
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        r = r * xk + Poly<T>::constant(*it);
    return r;
}

} // namespace qll
