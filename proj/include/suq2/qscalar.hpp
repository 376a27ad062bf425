#pragma once

#include "suq2/half_int.hpp"
#include "suq2/laurent.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace suq2 {

// Exact scalar: ratio of Laurent polynomials in s = q^(1/2).  Canonical form:
// numerator and denominator share no polynomial factor or integer content, the
// denominator is a true polynomial with nonzero constant term, and its lowest
// coefficient is positive.  Square roots are never taken here; they belong to
// numeric evaluation of known-nonnegative quantities.
class QScalar {
public:
    QScalar() : num_(), den_(1) {}
    QScalar(long v) : num_(v), den_(1) {}
    QScalar(const BigInt& v) : num_(v), den_(1) {}
    QScalar(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den))
    {
        reduce();
    }

    static QScalar fraction(long p, long r) { return QScalar(Laurent(p), Laurent(r)); }

    // q^m as an exact monomial, m in (1/2)Z.
    static QScalar q_power(HalfInt m) { return QScalar(Laurent::monomial(m.twice()), Laurent(1)); }

    // s^e, i.e. q^(e/2).
    static QScalar s_power(int e) { return QScalar(Laurent::monomial(e), Laurent(1)); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == Laurent(1) && num_ == Laurent(1); }

    friend QScalar operator+(const QScalar& a, const QScalar& b)
    {
        return QScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QScalar operator-(const QScalar& a, const QScalar& b)
    {
        return QScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    QScalar operator-() const
    {
        QScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend QScalar operator*(const QScalar& a, const QScalar& b)
    {
        return QScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend QScalar operator/(const QScalar& a, const QScalar& b)
    {
        if (b.is_zero()) throw std::domain_error("QScalar division by zero");
        return QScalar(a.num_ * b.den_, a.den_ * b.num_);
    }
    QScalar& operator+=(const QScalar& b) { return *this = *this + b; }
    QScalar& operator-=(const QScalar& b) { return *this = *this - b; }
    QScalar& operator*=(const QScalar& b) { return *this = *this * b; }
    QScalar& operator/=(const QScalar& b) { return *this = *this / b; }

    friend bool operator==(const QScalar& a, const QScalar& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    double evaluate(double q) const
    {
        if (!(q > 0.0)) throw std::domain_error("q must be positive");
        const double s = std::sqrt(q);
        const double d = den_.evaluate(s);
        if (std::abs(d) < 1e-300) throw std::domain_error("QScalar pole at q=" + std::to_string(q));
        return num_.evaluate(s) / d;
    }

    std::string str() const
    {
        if (den_ == Laurent(1)) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void reduce()
    {
        if (den_.is_zero()) throw std::domain_error("QScalar zero denominator");
        if (num_.is_zero()) {
            den_ = Laurent(1);
            return;
        }
        // Pull the denominator's unit s^k into the numerator.
        const int dmin = den_.min_exp();
        den_ = den_.shifted(-dmin);
        num_ = num_.shifted(-dmin);

        const int nmin = num_.min_exp();
        Laurent npoly = num_.shifted(-nmin);
        const Laurent g = laurent_gcd(npoly, den_);
        if (!(g == Laurent(1))) {
            npoly = exact_div(npoly, g);
            den_ = exact_div(den_, g);
        }
        BigInt c = boost::multiprecision::gcd(npoly.content(), den_.content());
        if (den_.at(den_.min_exp()) < 0) c = -c;
        if (c != 1) {
            npoly = npoly.divided_by_int(c);
            den_ = den_.divided_by_int(c);
        }
        num_ = npoly.shifted(nmin);
    }

    Laurent num_;
    Laurent den_;
};

// Symmetric q-integer [m] = (q^m - q^(-m)) / (q - q^(-1)); [0] = 0, [1] = 1.
inline QScalar q_number(HalfInt m)
{
    if (m.twice() == 0) return QScalar(0);
    Laurent num = Laurent::monomial(m.twice()) - Laurent::monomial(-m.twice());
    Laurent den = Laurent::monomial(2) - Laurent::monomial(-2);
    return QScalar(std::move(num), std::move(den));
}

// Numeric q-number, valid for any real argument.
inline double q_number_value(double m, double q)
{
    if (m == 0.0) return 0.0;
    return (std::pow(q, m) - std::pow(q, -m)) / (q - 1.0 / q);
}

// 1 - q^e as an exact scalar (e in (1/2)Z).
inline QScalar one_minus_q_power(HalfInt e)
{
    return QScalar(1) - QScalar::q_power(e);
}

} // namespace suq2
