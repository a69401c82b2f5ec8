#include "orbiloop/scalar.hpp"

#include <charconv>

#include "orbiloop/error.hpp"

namespace orbiloop {

std::int64_t checkedAdd(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw InternalError("int64 overflow in addition");
    return r;
}

std::int64_t checkedSub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw InternalError("int64 overflow in subtraction");
    return r;
}

std::int64_t checkedMul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw InternalError("int64 overflow in multiplication");
    return r;
}

QmodZ::QmodZ(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw PreconditionError("positive-denominator", "Q/Z value needs a positive denominator");
    num = floorMod(num, den);
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

QmodZ QmodZ::fromRational(const Rational& r) {
    mpz_class num = r.get_num();
    const mpz_class& den = r.get_den();
    mpz_class red = num % den;
    if (red < 0) red += den;
    if (!den.fits_slong_p()) throw InternalError("Q/Z denominator exceeds 64 bits");
    return QmodZ(red.get_si(), den.get_si());
}

QmodZ QmodZ::parse(const std::string& text) {
    const auto slash = text.find('/');
    auto toInt = [&](std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw PreconditionError("fraction-format", "cannot parse '" + text + "' as p/q");
        return v;
    };
    if (slash == std::string::npos) return QmodZ(toInt(text), 1);
    std::string_view sv(text);
    return QmodZ(toInt(sv.substr(0, slash)), toInt(sv.substr(slash + 1)));
}

std::int64_t QmodZ::over(std::int64_t modulus) const {
    if (modulus % den_ != 0)
        throw PreconditionError("denominator-divides-modulus",
                                "value " + str() + " does not lie in (1/" + std::to_string(modulus) + ")Z/Z");
    return num_ * (modulus / den_);
}

QmodZ QmodZ::operator+(const QmodZ& o) const {
    const std::int64_t l = std::lcm(den_, o.den_);
    return QmodZ(checkedAdd(num_ * (l / den_), o.num_ * (l / o.den_)), l);
}

QmodZ QmodZ::operator-(const QmodZ& o) const { return *this + (-o); }

QmodZ QmodZ::operator-() const { return QmodZ(den_ - num_, den_); }

QmodZ QmodZ::times(std::int64_t k) const { return QmodZ(checkedMul(num_, floorMod(k, den_)), den_); }

std::string QmodZ::str() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const QmodZ& v) { return os << v.str(); }

std::string toString(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace orbiloop
