#pragma once

#include "suq2/half_int.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace suq2 {

// Truncation keeps all levels n = 0, 1/2, 1, ..., nmax.
struct Truncation {
    HalfInt nmax;
};

// Matrix-unit label on the GNS space: spin n, row i, column j, all three of
// the same half-integer parity, |i| <= n and |j| <= n.
struct PWIndex {
    HalfInt n, i, j;
    friend constexpr auto operator<=>(const PWIndex&, const PWIndex&) = default;
};

inline bool pw_valid(const PWIndex& x)
{
    if (x.n.twice() < 0) return false;
    if ((x.i.twice() - x.n.twice()) % 2 != 0) return false;
    if ((x.j.twice() - x.n.twice()) % 2 != 0) return false;
    return abs(x.i) <= x.n && abs(x.j) <= x.n;
}

enum class Sector : std::uint8_t { Up, Down };

// Label on the direct-sum space W0^ ⊕ (Wn^ ⊕ Wn_): spin n with row i as on
// the GNS side; the Up column runs over |j| <= n + 1/2 and the Down column
// over |j| <= n - 1/2, both offset from n by a half step.
struct DlssvIndex {
    HalfInt n, i, j;
    Sector sector = Sector::Up;
    friend constexpr auto operator<=>(const DlssvIndex&, const DlssvIndex&) = default;
};

inline bool dlssv_valid(const DlssvIndex& x)
{
    if (x.n.twice() < 0) return false;
    if ((x.i.twice() - x.n.twice()) % 2 != 0) return false;
    if ((x.j.twice() - x.n.twice()) % 2 == 0) return false;
    if (abs(x.i) > x.n) return false;
    const HalfInt jmax = x.sector == Sector::Up ? x.n + half() : x.n - half();
    return abs(x.j) <= jmax;
}

enum class Copy : std::uint8_t { First, Second };

struct DoubledPWIndex {
    Copy copy = Copy::First;
    PWIndex inner;
    friend constexpr auto operator<=>(const DoubledPWIndex&, const DoubledPWIndex&) = default;
};

enum class SpaceTag { PW, DLSSV, DoubledPW };

inline std::string space_name(SpaceTag t)
{
    switch (t) {
    case SpaceTag::PW: return "gns";
    case SpaceTag::DLSSV: return "direct-sum";
    case SpaceTag::DoubledPW: return "gns-doubled";
    }
    throw std::logic_error("bad space tag");
}

namespace detail {
inline std::tuple<int, int, int, int> key(const DlssvIndex& x)
{
    return {x.n.twice(), x.i.twice(), x.j.twice(), static_cast<int>(x.sector)};
}
} // namespace detail

// Enumerated GNS basis: n-major, then i, then j.
class PWBasis {
public:
    explicit PWBasis(Truncation t) : t_(t)
    {
        if (t.nmax.twice() < 0) throw std::invalid_argument("negative truncation");
        for (int nt = 0; nt <= t.nmax.twice(); ++nt) {
            const HalfInt n = HalfInt::halves(nt);
            for (int it = -nt; it <= nt; it += 2)
                for (int jt = -nt; jt <= nt; jt += 2) {
                    pos_[{nt, it, jt}] = static_cast<int>(idx_.size());
                    idx_.push_back({n, HalfInt::halves(it), HalfInt::halves(jt)});
                }
        }
    }

    Truncation truncation() const { return t_; }
    int dim() const { return static_cast<int>(idx_.size()); }
    const PWIndex& at(int pos) const { return idx_.at(pos); }
    HalfInt level(int pos) const { return idx_.at(pos).n; }

    bool contains(const PWIndex& x) const
    {
        return pw_valid(x) && x.n <= t_.nmax;
    }
    int index_of(const PWIndex& x) const
    {
        auto it = pos_.find({x.n.twice(), x.i.twice(), x.j.twice()});
        if (it == pos_.end()) throw std::out_of_range("index outside basis");
        return it->second;
    }

    static int level_dim(HalfInt n) { return (n.twice() + 1) * (n.twice() + 1); }

private:
    Truncation t_;
    std::vector<PWIndex> idx_;
    std::map<std::tuple<int, int, int>, int> pos_;
};

// Enumerated direct-sum basis: n-major, then i, then j, Up before Down.
class DlssvBasis {
public:
    explicit DlssvBasis(Truncation t) : t_(t)
    {
        if (t.nmax.twice() < 0) throw std::invalid_argument("negative truncation");
        for (int nt = 0; nt <= t.nmax.twice(); ++nt) {
            const HalfInt n = HalfInt::halves(nt);
            for (int it = -nt; it <= nt; it += 2)
                for (int jt = -nt - 1; jt <= nt + 1; jt += 2)
                    for (Sector s : {Sector::Up, Sector::Down}) {
                        DlssvIndex x{n, HalfInt::halves(it), HalfInt::halves(jt), s};
                        if (!dlssv_valid(x)) continue;
                        pos_[detail::key(x)] = static_cast<int>(idx_.size());
                        idx_.push_back(x);
                    }
        }
    }

    Truncation truncation() const { return t_; }
    int dim() const { return static_cast<int>(idx_.size()); }
    const DlssvIndex& at(int pos) const { return idx_.at(pos); }
    HalfInt level(int pos) const { return idx_.at(pos).n; }

    bool contains(const DlssvIndex& x) const
    {
        return dlssv_valid(x) && x.n <= t_.nmax;
    }
    int index_of(const DlssvIndex& x) const
    {
        auto it = pos_.find(detail::key(x));
        if (it == pos_.end()) throw std::out_of_range("index outside basis");
        return it->second;
    }

    static int up_dim(HalfInt n) { return (n.twice() + 1) * (n.twice() + 2); }
    static int down_dim(HalfInt n) { return (n.twice() + 1) * n.twice(); }
    static int level_dim(HalfInt n) { return up_dim(n) + down_dim(n); }

private:
    Truncation t_;
    std::vector<DlssvIndex> idx_;
    std::map<std::tuple<int, int, int, int>, int> pos_;
};

// Two copies of the GNS basis, first copy enumerated before the second.
class DoubledPWBasis {
public:
    explicit DoubledPWBasis(Truncation t) : pw_(t) {}

    Truncation truncation() const { return pw_.truncation(); }
    const PWBasis& component() const { return pw_; }
    int dim() const { return 2 * pw_.dim(); }

    DoubledPWIndex at(int pos) const
    {
        const int d = pw_.dim();
        if (pos < 0 || pos >= 2 * d) throw std::out_of_range("doubled index");
        return {pos < d ? Copy::First : Copy::Second, pw_.at(pos % d)};
    }
    HalfInt level(int pos) const { return pw_.level(pos % pw_.dim()); }

    int index_of(const DoubledPWIndex& x) const
    {
        const int base = x.copy == Copy::First ? 0 : pw_.dim();
        return base + pw_.index_of(x.inner);
    }

private:
    PWBasis pw_;
};

} // namespace suq2
