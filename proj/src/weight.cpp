#include "rcmc/weight.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rcmc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

Weight Weight::zero(Mode m)
{
    return m == Mode::exact ? from_rational(0) : from_log(kNegInf);
}

Weight Weight::one(Mode m)
{
    return m == Mode::exact ? from_rational(1) : from_log(0.0);
}

Weight Weight::from_rational(Rational r)
{
    if (r < 0) {
        throw std::invalid_argument("weight: negative value");
    }
    Weight w;
    w.mode_ = Mode::exact;
    w.rat_ = std::move(r);
    return w;
}

Weight Weight::from_log(double lg)
{
    if (std::isnan(lg)) {
        throw std::invalid_argument("weight: nan log value");
    }
    Weight w;
    w.mode_ = Mode::logf;
    w.log_ = lg;
    return w;
}

void Weight::require(Mode m, const char* op) const
{
    if (mode_ != m) {
        throw std::logic_error(std::string("weight: mode mismatch in ") + op);
    }
}

bool Weight::is_zero() const
{
    return mode_ == Mode::exact ? rat_ == 0 : log_ == kNegInf;
}

const Rational& Weight::rational() const
{
    require(Mode::exact, "rational()");
    return rat_;
}

double Weight::log_value() const
{
    require(Mode::logf, "log_value()");
    return log_;
}

double Weight::to_double() const
{
    return mode_ == Mode::exact ? rcmc::to_double(rat_) : std::exp(log_);
}

Weight& Weight::operator+=(const Weight& o)
{
    o.require(mode_, "operator+");
    if (mode_ == Mode::exact) {
        rat_ += o.rat_;
    } else if (o.log_ != kNegInf) {
        // log-sum-exp anchored at the larger term
        if (log_ == kNegInf) {
            log_ = o.log_;
        } else {
            double hi = std::max(log_, o.log_);
            double lo = std::min(log_, o.log_);
            log_ = hi + std::log1p(std::exp(lo - hi));
        }
    }
    return *this;
}

Weight& Weight::operator*=(const Weight& o)
{
    o.require(mode_, "operator*");
    if (mode_ == Mode::exact) {
        rat_ *= o.rat_;
    } else if (log_ == kNegInf || o.log_ == kNegInf) {
        log_ = kNegInf;
    } else {
        log_ += o.log_;
    }
    return *this;
}

Weight& Weight::operator/=(const Weight& o)
{
    o.require(mode_, "operator/");
    if (o.is_zero()) {
        throw std::domain_error("weight: division by zero");
    }
    if (mode_ == Mode::exact) {
        rat_ /= o.rat_;
    } else if (log_ != kNegInf) {
        log_ -= o.log_;
    }
    return *this;
}

Weight Weight::pow(const Weight& base, long e)
{
    if (e < 0) {
        throw std::invalid_argument("weight: negative exponent");
    }
    if (base.mode_ == Mode::exact) {
        return from_rational(rational_pow(base.rat_, static_cast<unsigned long>(e)));
    }
    if (e == 0) {
        return one(Mode::logf); // 0^0 = 1
    }
    return base.is_zero() ? zero(Mode::logf) : from_log(base.log_ * static_cast<double>(e));
}

bool Weight::operator==(const Weight& o) const
{
    o.require(mode_, "operator==");
    return mode_ == Mode::exact ? rat_ == o.rat_ : log_ == o.log_;
}

bool Weight::operator<(const Weight& o) const
{
    o.require(mode_, "operator<");
    return mode_ == Mode::exact ? rat_ < o.rat_ : log_ < o.log_;
}

std::string Weight::to_string() const
{
    if (mode_ == Mode::exact) {
        return to_fraction(rat_);
    }
    std::ostringstream os;
    os.precision(17);
    os << "exp(" << log_ << ")";
    return os.str();
}

} // namespace rcmc
