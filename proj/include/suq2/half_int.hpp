#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace suq2 {

// Element of (1/2)Z stored as its doubled value, so spins, weights and
// eigenvalue labels stay exact.  HalfInt(3) is the integer 3; use
// HalfInt::halves(3) for 3/2.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0) {}
    constexpr HalfInt(int whole) : twice_(2 * whole) {}

    static constexpr HalfInt halves(int twice)
    {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    // Valid only when is_integer().
    constexpr int whole() const
    {
        return twice_ / 2;
    }

    constexpr double value() const { return 0.5 * twice_; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return halves(a.twice_ + b.twice_); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return halves(a.twice_ - b.twice_); }
    constexpr HalfInt operator-() const { return halves(-twice_); }
    friend constexpr HalfInt operator*(int k, HalfInt a) { return halves(k * a.twice_); }

    HalfInt& operator+=(HalfInt b) { twice_ += b.twice_; return *this; }
    HalfInt& operator-=(HalfInt b) { twice_ -= b.twice_; return *this; }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    std::string str() const
    {
        if (is_integer()) return std::to_string(whole());
        return std::to_string(twice_) + "/2";
    }

private:
    int twice_;
};

constexpr HalfInt half() { return HalfInt::halves(1); }

inline HalfInt abs(HalfInt a) { return a.twice() < 0 ? -a : a; }

} // namespace suq2
