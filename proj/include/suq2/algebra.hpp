#pragma once

#include "suq2/half_int.hpp"
#include "suq2/qscalar.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace suq2 {

// Normally ordered word a^k b^m b*^l in the generators a ("alpha") and
// b ("beta"): apow >= 0 encodes a^apow, apow < 0 encodes (a*)^(-apow); the
// b-part commutes internally, so this triple is a canonical form.
struct Monomial {
    int apow = 0;
    int bpow = 0;
    int bstarpow = 0;

    int degree() const { return (apow < 0 ? -apow : apow) + bpow + bstarpow; }
    friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Bi-weight (row, column) of a word under the two torus actions; the
// generators carry weight(a) = (-1/2,-1/2), weight(b) = (+1/2,-1/2) and the
// stars carry the negated weights.
inline std::pair<HalfInt, HalfInt> weight(const Monomial& m)
{
    const int wi = -m.apow + m.bpow - m.bstarpow;
    const int wj = -m.apow - m.bpow + m.bstarpow;
    return {HalfInt::halves(wi), HalfInt::halves(wj)};
}

inline std::string monomial_str(const Monomial& m)
{
    if (m.degree() == 0) return "1";
    std::string out;
    auto pw = [&](const char* g, int p) {
        if (p == 0) return;
        if (!out.empty()) out += ".";
        out += g;
        if (p > 1) out += "^" + std::to_string(p);
    };
    pw("a", m.apow > 0 ? m.apow : 0);
    pw("a*", m.apow < 0 ? -m.apow : 0);
    pw("b", m.bpow);
    pw("b*", m.bstarpow);
    return out;
}

class AlgebraElement {
public:
    using Terms = std::map<Monomial, QScalar>;

    AlgebraElement() = default;
    AlgebraElement(Monomial m, QScalar c = QScalar(1))
    {
        add(m, std::move(c));
    }

    static AlgebraElement unit() { return AlgebraElement(Monomial{}); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const
    {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    void add(const Monomial& m, const QScalar& c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    QScalar coeff(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? QScalar(0) : it->second;
    }

    friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y)
    {
        AlgebraElement r = x;
        for (const auto& [m, c] : y.terms_) r.add(m, c);
        return r;
    }
    friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y)
    {
        AlgebraElement r = x;
        for (const auto& [m, c] : y.terms_) r.add(m, -c);
        return r;
    }
    friend AlgebraElement operator*(const QScalar& c, const AlgebraElement& x)
    {
        AlgebraElement r;
        for (const auto& [m, k] : x.terms_) r.add(m, c * k);
        return r;
    }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")·" + monomial_str(m);
        }
        return out;
    }

private:
    Terms terms_;
};

inline AlgebraElement gen_alpha() { return AlgebraElement{Monomial{1, 0, 0}}; }
inline AlgebraElement gen_alpha_star() { return AlgebraElement{Monomial{-1, 0, 0}}; }
inline AlgebraElement gen_beta() { return AlgebraElement{Monomial{0, 1, 0}}; }
inline AlgebraElement gen_beta_star() { return AlgebraElement{Monomial{0, 0, 1}}; }

inline AlgebraElement normal_multiply(const AlgebraElement& x, const AlgebraElement& y);

// Product of two normally ordered words, re-expressed in normal order.  The
// b-part of the left factor commutes with the a-part of the right factor up
// to a power of q; crossing a^k a*^j pairs is resolved through
// a a* = 1 - q^2 b b* and a* a = 1 - b b*.
inline AlgebraElement multiply_monomials(const Monomial& x, const Monomial& y)
{
    const int k1 = x.apow, k2 = y.apow;
    const QScalar phase = QScalar::s_power(-2 * k2 * (x.bpow + x.bstarpow));
    const int b = x.bpow + y.bpow;
    const int bs = x.bstarpow + y.bstarpow;

    if (k1 == 0 || k2 == 0 || (k1 > 0) == (k2 > 0)) {
        return AlgebraElement(Monomial{k1 + k2, b, bs}, phase);
    }

    AlgebraElement left, mid, right;
    if (k1 > 0) {
        left = AlgebraElement(Monomial{k1 - 1, 0, 0});
        mid = AlgebraElement::unit();
        mid.add(Monomial{0, 1, 1}, -QScalar::q_power(2));
        right = AlgebraElement(Monomial{k2 + 1, 0, 0});
    } else {
        left = AlgebraElement(Monomial{k1 + 1, 0, 0});
        mid = AlgebraElement::unit();
        mid.add(Monomial{0, 1, 1}, QScalar(-1));
        right = AlgebraElement(Monomial{k2 - 1, 0, 0});
    }
    AlgebraElement core = normal_multiply(normal_multiply(left, mid), right);
    core = normal_multiply(core, AlgebraElement(Monomial{0, b, bs}));
    return phase * core;
}

inline AlgebraElement normal_multiply(const AlgebraElement& x, const AlgebraElement& y)
{
    AlgebraElement r;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            const QScalar c = cx * cy;
            const AlgebraElement prod = multiply_monomials(mx, my);
            for (const auto& [m, k] : prod.terms()) r.add(m, c * k);
        }
    return r;
}

// Adjoint.  On a word: reverse, star each generator, restore normal order;
// the net effect is a pure power of q.
inline AlgebraElement star(const AlgebraElement& x)
{
    AlgebraElement r;
    for (const auto& [m, c] : x.terms()) {
        const QScalar phase = QScalar::s_power(2 * m.apow * (m.bpow + m.bstarpow));
        r.add(Monomial{-m.apow, m.bstarpow, m.bpow}, phase * c);
    }
    return r;
}

// Counit: a, a* -> 1 and b, b* -> 0, extended multiplicatively.
inline QScalar counit(const AlgebraElement& x)
{
    QScalar v(0);
    for (const auto& [m, c] : x.terms())
        if (m.bpow == 0 && m.bstarpow == 0) v += c;
    return v;
}

// Invariant state: kills every word except powers of b b*, and
// h((b b*)^m) = (1 - q^2) / (1 - q^(2m+2)).
inline QScalar haar(const AlgebraElement& x)
{
    QScalar v(0);
    for (const auto& [m, c] : x.terms()) {
        if (m.apow != 0 || m.bpow != m.bstarpow) continue;
        v += c * (one_minus_q_power(2) / one_minus_q_power(2 * m.bpow + 2));
    }
    return v;
}

inline QScalar inner(const AlgebraElement& x, const AlgebraElement& y)
{
    return haar(normal_multiply(star(x), y));
}

// ---- coproduct ----

class TensorElement {
public:
    using Terms = std::map<std::pair<Monomial, Monomial>, QScalar>;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Monomial& l, const Monomial& r, const QScalar& c)
    {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(std::pair{l, r}, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static TensorElement unit()
    {
        TensorElement t;
        t.add(Monomial{}, Monomial{}, QScalar(1));
        return t;
    }

    friend TensorElement operator+(const TensorElement& x, const TensorElement& y)
    {
        TensorElement r = x;
        for (const auto& [mm, c] : y.terms_) r.add(mm.first, mm.second, c);
        return r;
    }
    friend TensorElement operator-(const TensorElement& x, const TensorElement& y)
    {
        TensorElement r = x;
        for (const auto& [mm, c] : y.terms_) r.add(mm.first, mm.second, -c);
        return r;
    }
    friend TensorElement operator*(const QScalar& c, const TensorElement& x)
    {
        TensorElement r;
        for (const auto& [mm, k] : x.terms_) r.add(mm.first, mm.second, c * k);
        return r;
    }
    friend bool operator==(const TensorElement& x, const TensorElement& y)
    {
        return x.terms_ == y.terms_;
    }

private:
    Terms terms_;
};

inline TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y)
{
    TensorElement r;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            const AlgebraElement l = multiply_monomials(mx.first, my.first);
            const AlgebraElement rr = multiply_monomials(mx.second, my.second);
            const QScalar c = cx * cy;
            for (const auto& [ml, cl] : l.terms())
                for (const auto& [mr, cr] : rr.terms()) r.add(ml, mr, c * cl * cr);
        }
    return r;
}

// Coproducts of the generators, read off the fundamental corepresentation
// matrix ((a, -q b*), (b, a*)).
inline const TensorElement& coproduct_alpha()
{
    static const TensorElement t = [] {
        TensorElement x;
        x.add(Monomial{1, 0, 0}, Monomial{1, 0, 0}, QScalar(1));
        x.add(Monomial{0, 0, 1}, Monomial{0, 1, 0}, -QScalar::q_power(1));
        return x;
    }();
    return t;
}
inline const TensorElement& coproduct_beta()
{
    static const TensorElement t = [] {
        TensorElement x;
        x.add(Monomial{0, 1, 0}, Monomial{1, 0, 0}, QScalar(1));
        x.add(Monomial{-1, 0, 0}, Monomial{0, 1, 0}, QScalar(1));
        return x;
    }();
    return t;
}
inline const TensorElement& coproduct_alpha_star()
{
    static const TensorElement t = [] {
        TensorElement x;
        x.add(Monomial{-1, 0, 0}, Monomial{-1, 0, 0}, QScalar(1));
        x.add(Monomial{0, 1, 0}, Monomial{0, 0, 1}, -QScalar::q_power(1));
        return x;
    }();
    return t;
}
inline const TensorElement& coproduct_beta_star()
{
    static const TensorElement t = [] {
        TensorElement x;
        x.add(Monomial{1, 0, 0}, Monomial{0, 0, 1}, QScalar(1));
        x.add(Monomial{0, 0, 1}, Monomial{-1, 0, 0}, QScalar(1));
        return x;
    }();
    return t;
}

inline TensorElement comultiply(const AlgebraElement& x)
{
    TensorElement out;
    for (const auto& [m, c] : x.terms()) {
        TensorElement t = TensorElement::unit();
        const TensorElement& da = m.apow >= 0 ? coproduct_alpha() : coproduct_alpha_star();
        for (int k = 0; k < (m.apow < 0 ? -m.apow : m.apow); ++k) t = tensor_multiply(t, da);
        for (int k = 0; k < m.bpow; ++k) t = tensor_multiply(t, coproduct_beta());
        for (int k = 0; k < m.bstarpow; ++k) t = tensor_multiply(t, coproduct_beta_star());
        out = out + c * t;
    }
    return out;
}

// ---- functionals and convolution ----

enum class Side { Left, Right };

// The functionals used for the translation-action checks: the counit, the
// invariant state, and vector functionals x -> h(w* x).
class Functional {
public:
    enum class Kind { Counit, Haar, InnerWith };

    static Functional counit_functional() { return Functional(Kind::Counit, {}); }
    static Functional haar_functional() { return Functional(Kind::Haar, {}); }
    static Functional inner_with(AlgebraElement w) { return Functional(Kind::InnerWith, std::move(w)); }

    Kind kind() const { return kind_; }

    QScalar apply(const AlgebraElement& x) const
    {
        switch (kind_) {
        case Kind::Counit: return counit(x);
        case Kind::Haar: return haar(x);
        case Kind::InnerWith: return inner(w_, x);
        }
        throw std::logic_error("bad functional kind");
    }

    QScalar at_unit() const { return apply(AlgebraElement::unit()); }

    std::string name() const
    {
        switch (kind_) {
        case Kind::Counit: return "counit";
        case Kind::Haar: return "haar";
        case Kind::InnerWith: return "vector[" + w_.str() + "]";
        }
        return "?";
    }

private:
    Functional(Kind k, AlgebraElement w) : kind_(k), w_(std::move(w)) {}
    Kind kind_;
    AlgebraElement w_;
};

// One-sided convolution: Right contracts the second tensor leg with rho,
// Left the first.
inline AlgebraElement convolve(const Functional& rho, const AlgebraElement& x, Side side)
{
    AlgebraElement out;
    const TensorElement dx = comultiply(x);
    for (const auto& [mm, c] : dx.terms()) {
        const Monomial& keep = side == Side::Right ? mm.first : mm.second;
        const Monomial& eat = side == Side::Right ? mm.second : mm.first;
        out.add(keep, c * rho.apply(AlgebraElement(eat)));
    }
    return out;
}

} // namespace suq2
