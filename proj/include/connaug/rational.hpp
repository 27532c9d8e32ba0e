#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace connaug {

// Exact rationals over __int128. All bound formulas (harmonic numbers,
// |T|/(|T|-k) thresholds, approximation budgets) are evaluated with these and
// compared to integer costs by cross multiplication; no floating point.
struct Rat {
    __int128 num = 0;
    __int128 den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        __int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Rat operator+(const Rat& o) const {
        Rat r;
        r.num = num * o.den + o.num * den;
        r.den = den * o.den;
        r.normalize();
        return r;
    }
    Rat operator-(const Rat& o) const {
        Rat r;
        r.num = num * o.den - o.num * den;
        r.den = den * o.den;
        r.normalize();
        return r;
    }
    Rat operator*(const Rat& o) const {
        Rat r;
        r.num = num * o.num;
        r.den = den * o.den;
        r.normalize();
        return r;
    }
    Rat operator/(const Rat& o) const {
        if (o.num == 0) throw std::domain_error("division by zero rational");
        Rat r;
        r.num = num * o.den;
        r.den = den * o.num;
        r.normalize();
        return r;
    }

    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    // floor for non-negative values
    long long floor_ll() const {
        if (num < 0) throw std::domain_error("floor_ll on negative rational");
        return (long long)(num / den);
    }

    long long num_ll() const {
        if (num > INT64_MAX || num < -(__int128)INT64_MAX)
            throw std::overflow_error("rational numerator out of int64 range");
        return (long long)num;
    }
    long long den_ll() const {
        if (den > INT64_MAX) throw std::overflow_error("rational denominator out of int64 range");
        return (long long)den;
    }

    std::string str() const {
        auto i128s = [](__int128 v) {
            if (v == 0) return std::string("0");
            bool neg = v < 0;
            if (neg) v = -v;
            std::string s;
            while (v > 0) {
                s.push_back(char('0' + (int)(v % 10)));
                v /= 10;
            }
            if (neg) s.push_back('-');
            return std::string(s.rbegin(), s.rend());
        };
        if (den == 1) return i128s(num);
        return i128s(num) + "/" + i128s(den);
    }
};

// H(x) = sum_{i=1..floor(x)} 1/i.  Harmonic of a rational argument uses
// floor(x) terms.
inline Rat harmonic(const Rat& x) {
    if (x.num <= 0) return Rat(0);
    long long m = x.floor_ll();
    Rat h(0);
    for (long long i = 1; i <= m; ++i) h = h + Rat(1, i);
    return h;
}

inline Rat harmonic(long long m) { return harmonic(Rat(m)); }

}  // namespace connaug
