#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "minebench/errors.hpp"

namespace minebench {

// Exact non-negative rational. Metrics and densities are ratios of small
// integer counts; keeping them exact lets tests assert rational equality
// instead of epsilon comparisons.
class Fraction {
public:
    Fraction() : num_(0), den_(1) {}

    Fraction(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        if (den_ == 0) throw InvalidCounts("fraction with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        reduce();
    }

    static Fraction whole(std::int64_t n) { return Fraction(n, 1); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Fraction operator+(const Fraction& o) const {
        return Fraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Fraction operator*(const Fraction& o) const { return Fraction(num_ * o.num_, den_ * o.den_); }
    Fraction operator/(const Fraction& o) const {
        if (o.num_ == 0) throw InvalidCounts("division by zero fraction");
        return Fraction(num_ * o.den_, den_ * o.num_);
    }

    bool operator==(const Fraction& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Fraction& o) const { return !(*this == o); }
    bool operator<(const Fraction& o) const {
        return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
    }
    bool operator<=(const Fraction& o) const { return *this < o || *this == o; }
    bool operator>(const Fraction& o) const { return o < *this; }
    bool operator>=(const Fraction& o) const { return o <= *this; }

    // "num/den" form, e.g. "29/225".
    std::string exact_string() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void reduce() {
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

} // namespace minebench
