#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <variant>

#include "tori/rational.hpp"

namespace tori {

inline constexpr double kFloatTol = 1e-9;

// A real number that is either an exact rational or a double.  The two
// modes never mix: arithmetic between an exact and a float scalar throws.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational r) : v_(r) {}
    Scalar(long long n) : v_(Rational(n)) {}
    Scalar(int n) : v_(Rational(n)) {}
    explicit Scalar(double d) : v_(d) {}

    bool exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rat() const {
        if (!exact()) throw std::invalid_argument("float scalar used where exact is required");
        return std::get<Rational>(v_);
    }
    double to_double() const {
        return exact() ? std::get<Rational>(v_).to_double() : std::get<double>(v_);
    }

    bool is_zero(double tol = kFloatTol) const {
        return exact() ? rat().is_zero() : std::fabs(std::get<double>(v_)) <= tol;
    }
    bool is_integer(double tol = kFloatTol) const {
        if (exact()) return rat().is_integer();
        double d = std::get<double>(v_);
        return std::fabs(d - std::round(d)) <= tol;
    }
    long long round() const {
        return exact() ? rat().round() : static_cast<long long>(std::llround(std::get<double>(v_)));
    }

    Scalar operator-() const {
        return exact() ? Scalar(-rat()) : Scalar(-std::get<double>(v_));
    }
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_mode(a, b);
        if (a.exact()) return Scalar(a.rat() + b.rat());
        return Scalar(a.to_double() + b.to_double());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_mode(a, b);
        if (a.exact()) return Scalar(a.rat() * b.rat());
        return Scalar(a.to_double() * b.to_double());
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }

    Scalar scale(long long k) const {
        return exact() ? Scalar(rat() * Rational(k)) : Scalar(to_double() * static_cast<double>(k));
    }

    bool equals(const Scalar& o, double tol = kFloatTol) const {
        if (exact() && o.exact()) return rat() == o.rat();
        return std::fabs(to_double() - o.to_double()) <= tol;
    }

private:
    static void check_mode(const Scalar& a, const Scalar& b) {
        if (a.exact() != b.exact())
            throw std::invalid_argument("mixed exact/float scalar arithmetic");
    }
    std::variant<Rational, double> v_;
};

// An element of the circle group R/Z, stored as a representative in [0, 1).
// Exact phases compare exactly; float phases compare with a tolerance.
class Phase {
public:
    Phase() : v_(Rational(0)) {}
    Phase(Rational r) : v_(Scalar(r.mod1())) {}
    Phase(long long num, long long den) : Phase(Rational(num, den)) {}
    explicit Phase(double d) : v_(Scalar(wrap(d))) {}
    explicit Phase(Scalar s) {
        v_ = s.exact() ? Scalar(s.rat().mod1()) : Scalar(wrap(s.to_double()));
    }

    bool exact() const { return v_.exact(); }
    const Scalar& value() const { return v_; }
    const Rational& rat() const { return v_.rat(); }
    double to_double() const { return v_.to_double(); }

    bool is_zero(double tol = kFloatTol) const {
        if (exact()) return v_.rat().is_zero();
        double d = v_.to_double();
        return std::min(d, 1.0 - d) <= tol;
    }

    friend Phase operator+(const Phase& a, const Phase& b) { return Phase(a.v_ + b.v_); }
    friend Phase operator-(const Phase& a, const Phase& b) { return Phase(a.v_ - b.v_); }
    Phase operator-() const { return Phase(-v_); }
    Phase scale(long long k) const { return Phase(v_.scale(k)); }

    bool equals(const Phase& o, double tol = kFloatTol) const {
        if (exact() && o.exact()) return v_.rat() == o.v_.rat();
        return (*this - o).is_zero(tol);
    }

    // Representative of the class in (-1/2, 1/2]; the short lift used for
    // winding numbers.
    Scalar lift() const {
        if (exact()) {
            Rational r = v_.rat();
            if (r > Rational(1, 2)) return Scalar(r - Rational(1));
            return Scalar(r);
        }
        double d = v_.to_double();
        return Scalar(d > 0.5 ? d - 1.0 : d);
    }

    std::complex<double> to_complex() const {
        double d = v_.to_double();
        return std::polar(1.0, 2.0 * M_PI * d);
    }

private:
    static double wrap(double d) {
        double r = std::fmod(d, 1.0);
        if (r < 0) r += 1.0;
        if (r == 1.0) r = 0.0;
        return r;
    }
    Scalar v_;
};

} // namespace tori
