#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace orbiloop {

using Rational = mpq_class;
using BigInt = mpz_class;

// Checked 64-bit arithmetic; throws InternalError on overflow.
std::int64_t checkedAdd(std::int64_t a, std::int64_t b);
std::int64_t checkedSub(std::int64_t a, std::int64_t b);
std::int64_t checkedMul(std::int64_t a, std::int64_t b);

inline std::int64_t floorMod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// An element of Q/Z, stored as p/q with 0 <= p < q and gcd(p, q) = 1.
/// Represents the torsion point exp(2 pi i p/q) of U(1).
class QmodZ {
public:
    QmodZ() = default;
    QmodZ(std::int64_t num, std::int64_t den);

    static QmodZ fromRational(const Rational& r);
    /// Parses "p/q" or an integer literal.
    static QmodZ parse(const std::string& text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool isZero() const noexcept { return num_ == 0; }

    /// Representative in [0, 1).
    Rational lift() const { return Rational(num_, den_); }
    /// Numerator over the given modulus; requires den() | modulus.
    std::int64_t over(std::int64_t modulus) const;
    /// Additive order.
    std::int64_t order() const noexcept { return den_; }

    QmodZ operator+(const QmodZ& o) const;
    QmodZ operator-(const QmodZ& o) const;
    QmodZ operator-() const;
    QmodZ& operator+=(const QmodZ& o) { return *this = *this + o; }
    QmodZ& operator-=(const QmodZ& o) { return *this = *this - o; }
    QmodZ times(std::int64_t k) const;

    friend bool operator==(const QmodZ&, const QmodZ&) = default;
    friend auto operator<=>(const QmodZ& a, const QmodZ& b) {
        return (a.num_ * b.den_) <=> (b.num_ * a.den_);
    }

    /// Canonical text form: "0" or "p/q".
    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const QmodZ& v);

/// Canonical text for a rational: "n" or "p/q".
std::string toString(const Rational& r);

}  // namespace orbiloop
