#pragma once

#include <string>

#include "rcmc/rational.hpp"

namespace rcmc {

// Nonnegative real carried either as an exact rational or in log space as a
// double.  Small graphs run fully exact; the float kernels use the log
// representation so products of many per-edge factors cannot underflow.
// Mixing the two modes in one expression is a programming error and throws.
class Weight {
public:
    enum class Mode { exact, logf };

    Weight() : mode_(Mode::exact), rat_(0) {}

    static Weight zero(Mode m);
    static Weight one(Mode m);
    static Weight from_rational(Rational r);
    static Weight from_log(double lg); // value = e^lg; -inf encodes zero

    Mode mode() const { return mode_; }
    bool is_zero() const;

    const Rational& rational() const; // requires exact mode
    double log_value() const;         // requires logf mode
    double to_double() const;         // either mode

    Weight& operator+=(const Weight& o);
    Weight& operator*=(const Weight& o);
    Weight& operator/=(const Weight& o);

    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator*(Weight a, const Weight& b) { return a *= b; }
    friend Weight operator/(Weight a, const Weight& b) { return a /= b; }

    // base^e with e >= 0; 0^0 = 1 by convention.
    static Weight pow(const Weight& base, long e);

    bool operator==(const Weight& o) const;
    bool operator<(const Weight& o) const;

    std::string to_string() const; // "num/den" or "exp(<log>)"

private:
    void require(Mode m, const char* op) const;

    Mode mode_;
    Rational rat_;      // exact mode
    double log_ = 0.0;  // logf mode
};

} // namespace rcmc
