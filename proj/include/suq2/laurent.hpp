#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace suq2 {

using BigInt = boost::multiprecision::cpp_int;

// Laurent polynomial in one variable with BigInt coefficients.  The variable
// is s = q^(1/2) throughout this library, so any power q^m with m in (1/2)Z
// is the monomial s^(2m).  Invariant: no zero coefficients are stored.
class Laurent {
public:
    Laurent() = default;
    Laurent(long v)
    {
        if (v != 0) coeff_[0] = v;
    }
    Laurent(BigInt v)
    {
        if (v != 0) coeff_[0] = std::move(v);
    }

    static Laurent monomial(int exp, BigInt c = 1)
    {
        Laurent p;
        if (c != 0) p.coeff_[exp] = std::move(c);
        return p;
    }

    bool is_zero() const { return coeff_.empty(); }

    int min_exp() const
    {
        if (is_zero()) throw std::domain_error("min_exp of zero");
        return coeff_.begin()->first;
    }
    int max_exp() const
    {
        if (is_zero()) throw std::domain_error("max_exp of zero");
        return coeff_.rbegin()->first;
    }

    const BigInt& at(int exp) const
    {
        static const BigInt zero = 0;
        auto it = coeff_.find(exp);
        return it == coeff_.end() ? zero : it->second;
    }

    const std::map<int, BigInt>& terms() const { return coeff_; }

    void add_term(int exp, const BigInt& c)
    {
        if (c == 0) return;
        auto [it, fresh] = coeff_.try_emplace(exp, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) coeff_.erase(it);
        }
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b)
    {
        Laurent r = a;
        for (const auto& [e, c] : b.coeff_) r.add_term(e, c);
        return r;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b)
    {
        Laurent r = a;
        for (const auto& [e, c] : b.coeff_) r.add_term(e, -c);
        return r;
    }
    Laurent operator-() const
    {
        Laurent r;
        for (const auto& [e, c] : coeff_) r.coeff_[e] = -c;
        return r;
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b)
    {
        Laurent r;
        for (const auto& [ea, ca] : a.coeff_)
            for (const auto& [eb, cb] : b.coeff_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    friend bool operator==(const Laurent& a, const Laurent& b) { return a.coeff_ == b.coeff_; }

    Laurent shifted(int d) const
    {
        Laurent r;
        for (const auto& [e, c] : coeff_) r.coeff_[e + d] = c;
        return r;
    }

    // gcd of the coefficients, positive; 0 for the zero polynomial.
    BigInt content() const
    {
        BigInt g = 0;
        for (const auto& [e, c] : coeff_) g = boost::multiprecision::gcd(g, c);
        return g;
    }

    Laurent divided_by_int(const BigInt& d) const
    {
        Laurent r;
        for (const auto& [e, c] : coeff_) {
            if (c % d != 0) throw std::domain_error("inexact integer division");
            r.coeff_[e] = c / d;
        }
        return r;
    }

    double evaluate(double s) const
    {
        double v = 0.0;
        for (const auto& [e, c] : coeff_) v += c.convert_to<double>() * std::pow(s, e);
        return v;
    }

    std::string str() const
    {
        if (is_zero()) return "0";
        std::string out;
        for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
            const auto& [e, c] = *it;
            if (!out.empty()) out += c > 0 ? " + " : " - ";
            else if (c < 0) out += "-";
            BigInt a = boost::multiprecision::abs(c);
            if (a != 1 || e == 0) out += a.str();
            if (e != 0) {
                if (a != 1) out += "*";
                out += "s";
                if (e != 1) out += "^" + std::to_string(e);
            }
        }
        return out;
    }

private:
    std::map<int, BigInt> coeff_;
};

// ---- polynomial helpers (min_exp >= 0 expected where noted) ----

inline Laurent primitive_part(const Laurent& p)
{
    if (p.is_zero()) return p;
    Laurent r = p.shifted(-p.min_exp());
    BigInt c = r.content();
    if (r.terms().rbegin()->second < 0) c = -c;
    return r.divided_by_int(c);
}

// Pseudo-remainder of a by b (both true polynomials, b nonzero).
inline Laurent pseudo_rem(Laurent a, const Laurent& b)
{
    const int db = b.max_exp();
    const BigInt lb = b.at(db);
    while (!a.is_zero() && a.max_exp() >= db) {
        const int da = a.max_exp();
        const BigInt la = a.at(da);
        Laurent scaled;
        for (const auto& [e, c] : a.terms()) scaled.add_term(e, c * lb);
        for (const auto& [e, c] : b.terms()) scaled.add_term(e + da - db, -c * la);
        a = std::move(scaled);
    }
    return a;
}

// gcd up to units s^k; result is a primitive polynomial with positive
// leading coefficient, or 0 when both inputs are 0.
inline Laurent laurent_gcd(const Laurent& a, const Laurent& b)
{
    if (a.is_zero()) return b.is_zero() ? b : primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    Laurent x = primitive_part(a), y = primitive_part(b);
    if (x.max_exp() < y.max_exp()) std::swap(x, y);
    while (!y.is_zero()) {
        Laurent r = pseudo_rem(x, y);
        x = std::move(y);
        y = r.is_zero() ? r : primitive_part(r);
    }
    return x;
}

// Exact quotient a/b; throws if the division leaves a remainder.
inline Laurent exact_div(const Laurent& a, const Laurent& b)
{
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return a;
    const int shift = a.min_exp() - b.min_exp();
    Laurent num = a.shifted(-a.min_exp());
    Laurent den = b.shifted(-b.min_exp());
    Laurent quo;
    const int dd = den.max_exp();
    const BigInt ld = den.at(dd);
    while (!num.is_zero() && num.max_exp() >= dd) {
        const int dn = num.max_exp();
        const BigInt& ln = num.at(dn);
        if (ln % ld != 0) throw std::domain_error("inexact polynomial division");
        BigInt qc = ln / ld;
        quo.add_term(dn - dd, qc);
        for (const auto& [e, c] : den.terms()) num.add_term(e + dn - dd, -c * qc);
    }
    if (!num.is_zero()) throw std::domain_error("inexact polynomial division");
    return quo.shifted(shift);
}

} // namespace suq2
