#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "fell/errors.hpp"

namespace fell {

// An element of Q/Z stored as a reduced fraction num/den with
// 0 <= num < den. Represents the circle angle a, i.e. the unitary
// exp(2*pi*i*a). All cohomological arithmetic runs on this type so
// cocycle identities are decided exactly.
class Angle {
public:
    Angle() : num_(0), den_(1) {}

    static Angle of(std::int64_t num, std::int64_t den) {
        if (den == 0) throw InputError("Angle: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        num %= den;
        if (num < 0) num += den;
        const std::int64_t g = std::gcd(num, den);
        return Angle(num / g, den / g);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Angle operator+(const Angle& o) const {
        const std::int64_t g = std::gcd(den_, o.den_);
        const std::int64_t scale = o.den_ / g;
        // num_*(o.den_/g) + o.num_*(den_/g) over den_*(o.den_/g)
        __int128 n = static_cast<__int128>(num_) * scale +
                     static_cast<__int128>(o.num_) * (den_ / g);
        __int128 d = static_cast<__int128>(den_) * scale;
        return reduce128(n, d);
    }

    Angle operator-() const { return Angle(num_ == 0 ? 0 : den_ - num_, den_); }
    Angle operator-(const Angle& o) const { return *this + (-o); }

    Angle times(std::int64_t c) const {
        __int128 n = static_cast<__int128>(num_) * c;
        return reduce128(n, den_);
    }

    // Exact division by a nonzero integer (picks the representative in [0,1)).
    Angle divided_by(std::int64_t c) const {
        if (c == 0) throw InputError("Angle: division by zero");
        __int128 n = num_;
        __int128 d = static_cast<__int128>(den_) * c;
        return reduce128(n, d);
    }

    bool operator==(const Angle& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Angle& o) const { return !(*this == o); }
    bool operator<(const Angle& o) const {
        return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
    }

    std::complex<double> unit() const {
        const double a = 2.0 * 3.14159265358979323846 *
                         (static_cast<double>(num_) / static_cast<double>(den_));
        return {std::cos(a), std::sin(a)};
    }

    std::string str() const {
        if (num_ == 0) return "0";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // "p/q" or a bare integer; reduced into [0,1)
    static Angle parse(const std::string& s) {
        if (s.empty()) throw InputError("Angle: empty string");
        const auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Angle::of(std::stoll(s), 1);
            return Angle::of(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw InputError("Angle: cannot parse '" + s + "'");
        }
    }

private:
    Angle(std::int64_t n, std::int64_t d) : num_(n), den_(d) {}

    static Angle reduce128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        n %= d;
        if (n < 0) n += d;
        __int128 a = n, b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a == 0) a = 1;
        n /= a; d /= a;
        if (d > INT64_MAX || n > INT64_MAX)
            throw CapacityError("Angle: denominator overflow");
        return Angle(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }

    std::int64_t num_, den_;
};

using AngleVec = std::vector<Angle>;

inline AngleVec operator+(const AngleVec& a, const AngleVec& b) {
    if (a.size() != b.size()) throw InputError("AngleVec: size mismatch");
    AngleVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline AngleVec operator-(const AngleVec& a) {
    AngleVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline AngleVec operator-(const AngleVec& a, const AngleVec& b) { return a + (-b); }

inline bool all_zero(const AngleVec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace fell
