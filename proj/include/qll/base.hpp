#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qll {

using Int = mpz_class;
using Rat = mpq_class;

// Exit-code convention used by the CLI: 1 = bad input, 2 = a mathematical
// invariant failed (which means either the input is inconsistent or there is
// a bug somewhere in the pipeline).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct math_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int num(const Rat& q) { return Int(q.get_num()); }
inline Int den(const Rat& q) { return Int(q.get_den()); }

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_zero(const Int& z) { return sgn(z) == 0; }

inline Rat rat_of(long n, long d = 1) { Rat q(n, d); q.canonicalize(); return q; }

inline Int int_pow(Int b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& b, long e) {
    if (e == 0) return Rat(1);
    Rat r;
    unsigned long a = e < 0 ? -e : e;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), a);
    if (e < 0) {
        Rat inv;
        mpq_inv(inv.get_mpq_t(), r.get_mpq_t());
        return inv;
    }
    return r;
}

// Deterministic splitmix-style hash combiner (used for report hashes and
// dedup maps; not cryptographic).
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
    v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
    v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (v ^ (v >> 31));
}

inline std::uint64_t hash_str(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) h = hash_mix(h, c);
    return hash_mix(h, 0x5aULL);
}

inline std::uint64_t hash_int(std::uint64_t h, const Int& z) {
    return hash_str(h, z.get_str(16));
}

inline std::uint64_t hash_rat(std::uint64_t h, const Rat& q) {
    h = hash_int(h, num(q));
    return hash_int(h, den(q));
}

} // namespace qll
