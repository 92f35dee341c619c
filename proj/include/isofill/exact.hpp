#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <stdexcept>
#include <utility>

namespace isofill {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int floor_rat(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (numerator(r) > 0 && q * denominator(r) != numerator(r)) ++q;
    return q;
}

/// Sign of a*sqrt(r) - b*sqrt(s) for rational a,b >= 0 and r,s >= 0.
/// Exact: squares both sides.
inline int cmp_sqrt(const Rat& a, const Rat& r, const Rat& b, const Rat& s) {
    if (a < 0 || b < 0 || r < 0 || s < 0) throw std::invalid_argument("cmp_sqrt: negative input");
    Rat lhs = a * a * r;
    Rat rhs = b * b * s;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

/// ceil(x / sqrt(r)) for rational x >= 0, r > 0: the least integer n with n*sqrt(r) >= x.
inline Int ceil_div_sqrt(const Rat& x, const Rat& r) {
    if (x < 0 || r <= 0) throw std::invalid_argument("ceil_div_sqrt: bad input");
    if (x == 0) return 0;
    // Smallest n with n^2 * r >= x^2.
    Rat target = x * x / r;
    // Integer sqrt of ceil(target), then adjust.
    Int t = ceil_rat(target);
    Int n = sqrt(t);
    while (n * n * r < x * x) ++n;
    while (n > 0 && (n - 1) * (n - 1) * r >= x * x) --n;
    return n;
}

/// Least integer n >= 0 with n*n >= x (i.e. ceil(sqrt(x))) for rational x >= 0.
inline Int ceil_sqrt(const Rat& x) {
    if (x < 0) throw std::invalid_argument("ceil_sqrt: negative input");
    Int n = sqrt(ceil_rat(x));
    while (Rat(n) * n < x) ++n;
    while (n > 0 && Rat(n - 1) * (n - 1) >= x) --n;
    return n;
}

namespace detail {

/// x = k^2 * s with s square-reduced by trial division (s may retain square
/// factors above the division bound; it is still a deterministic key and is
/// irrational unless it is a perfect square, which is checked).
inline void squarefree_split(Int x, Int& k, Int& s) {
    k = 1;
    s = 1;
    for (Int p = 2; p * p * p * p <= x && p < 100000; ++p) {
        while (x % (p * p) == 0) {
            x /= p * p;
            k *= p;
        }
    }
    Int r = sqrt(x);
    if (r * r == x) {
        k *= r;
    } else {
        s = x;
    }
}

/// Rational lower/upper bounds on sqrt(x), x >= 0, within 2^-bits.
inline std::pair<Rat, Rat> sqrt_bounds(const Rat& x, unsigned bits) {
    if (x == 0) return {0, 0};
    Int scale = Int(1) << bits;
    // floor(sqrt(x * scale^2))
    Int lo_num = sqrt((numerator(x) * scale * scale) / denominator(x));
    Rat lo(lo_num, scale);
    Rat hi(lo_num + 1, scale);
    return {lo, hi};
}

}  // namespace detail

/// Exact ceil(q + sum_i c_i * sqrt(r_i)) with rational q, c_i >= 0, r_i >= 0.
/// Exactness: perfect-square parts are folded into the rational part; the
/// residue, if any, is a positive combination of irrational radicals, hence
/// irrational, so interval refinement terminates.
class RadicalSum {
public:
    RadicalSum() = default;

    void add_rational(const Rat& q) { rational_ += q; }

    void add_sqrt(const Rat& coeff, const Rat& radicand) {
        if (coeff < 0 || radicand < 0) throw std::invalid_argument("RadicalSum: negative term");
        if (coeff == 0 || radicand == 0) return;
        // sqrt(a/b) = sqrt(a*b)/b
        Int a = numerator(radicand), b = denominator(radicand);
        Int k, s;
        detail::squarefree_split(a * b, k, s);
        Rat c = coeff * Rat(k, b);
        if (s == 1)
            rational_ += c;
        else
            terms_[s] += c;
    }

    Int ceil() const {
        if (terms_.empty()) return ceil_rat(rational_);
        for (unsigned bits = 16;; bits *= 2) {
            Rat lo = rational_, hi = rational_;
            for (const auto& [s, c] : terms_) {
                auto [l, h] = detail::sqrt_bounds(Rat(s), bits);
                lo += c * l;
                hi += c * h;
            }
            Int cl = ceil_rat(lo), ch = ceil_rat(hi);
            if (cl == ch) return cl;
            if (bits > (1u << 16)) throw std::runtime_error("RadicalSum::ceil failed to converge");
        }
    }

private:
    Rat rational_ = 0;
    std::map<Int, Rat> terms_;
};

}  // namespace isofill
