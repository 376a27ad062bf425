#include "suq2/basis.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace suq2;

TEST_CASE("matrix-element basis dimensions", "[basis]")
{
    REQUIRE(PWBasis(Truncation{HalfInt(0)}).dim() == 1);
    REQUIRE(PWBasis(Truncation{HalfInt(2)}).dim() == 55);
    REQUIRE(PWBasis(Truncation{HalfInt(6)}).dim() == 819);

    // Sum over levels of (2n+1)^2 with n in half-integer steps.
    const PWBasis b(Truncation{HalfInt(3)});
    std::size_t total = 0;
    for (int t = 0; t <= 6; ++t) total += PWBasis::level_dim(HalfInt::halves(t));
    REQUIRE(b.dim() == total);
}

TEST_CASE("matrix-element basis round trip", "[basis]")
{
    const PWBasis b(Truncation{HalfInt(2)});
    for (std::size_t k = 0; k < b.dim(); ++k) {
        const PWIndex idx = b.at(k);
        REQUIRE(pw_valid(idx));
        REQUIRE(b.index_of(idx) == k);
    }
    REQUIRE(b.at(0) == PWIndex{HalfInt(0), HalfInt(0), HalfInt(0)});
    REQUIRE_THROWS_AS(b.index_of(PWIndex{HalfInt::halves(5), half(), half()}),
                      std::out_of_range);
}

TEST_CASE("spin one half level ordering", "[basis]")
{
    const PWBasis b(Truncation{half()});
    REQUIRE(b.dim() == 5);
    // Level 1/2 is enumerated i-major with i,j ascending from -n.
    REQUIRE(b.at(1) == PWIndex{half(), -half(), -half()});
    REQUIRE(b.at(2) == PWIndex{half(), -half(), half()});
    REQUIRE(b.at(3) == PWIndex{half(), half(), -half()});
    REQUIRE(b.at(4) == PWIndex{half(), half(), half()});
}

TEST_CASE("index validity scan", "[basis]")
{
    // Exhaustive scan over twice-labels: valid iff parities match and ranges hold.
    int valid = 0;
    for (int tn = 0; tn <= 4; ++tn)
        for (int ti = -5; ti <= 5; ++ti)
            for (int tj = -5; tj <= 5; ++tj) {
                const PWIndex idx{HalfInt::halves(tn), HalfInt::halves(ti), HalfInt::halves(tj)};
                const bool expect = (ti % 2 + 2) % 2 == tn % 2 && (tj % 2 + 2) % 2 == tn % 2
                    && std::abs(ti) <= tn && std::abs(tj) <= tn;
                REQUIRE(pw_valid(idx) == expect);
                if (expect) ++valid;
            }
    REQUIRE(valid == static_cast<int>(PWBasis(Truncation{HalfInt(2)}).dim()));
}

TEST_CASE("spinor basis dimensions", "[basis]")
{
    REQUIRE(DlssvBasis(Truncation{HalfInt(0)}).dim() == 2);
    REQUIRE(DlssvBasis(Truncation{half()}).dim() == 10);
    REQUIRE(DlssvBasis(Truncation{HalfInt(2)}).dim() == 110);

    // Per level: up sector (2n+1)(2n+2), down sector (2n+1)(2n), total 2(2n+1)^2.
    for (int t = 0; t <= 6; ++t) {
        const HalfInt n = HalfInt::halves(t);
        REQUIRE(DlssvBasis::up_dim(n) == (t + 1) * (t + 2));
        REQUIRE(DlssvBasis::down_dim(n) == (t + 1) * t);
        REQUIRE(DlssvBasis::level_dim(n) == 2 * PWBasis::level_dim(n));
    }
}

TEST_CASE("spinor basis round trip and validity", "[basis]")
{
    const DlssvBasis b(Truncation{HalfInt(2)});
    for (std::size_t k = 0; k < b.dim(); ++k) {
        const DlssvIndex idx = b.at(k);
        REQUIRE(dlssv_valid(idx));
        REQUIRE(b.index_of(idx) == k);
    }
    // Level 0: up sector has j = -1/2, +1/2; down sector is empty.
    REQUIRE(b.at(0) == DlssvIndex{HalfInt(0), HalfInt(0), -half(), Sector::Up});
    REQUIRE(b.at(1) == DlssvIndex{HalfInt(0), HalfInt(0), half(), Sector::Up});
    REQUIRE(b.at(2).n == half());

    REQUIRE(!dlssv_valid(DlssvIndex{HalfInt(0), HalfInt(0), half(), Sector::Down}));
    REQUIRE(dlssv_valid(DlssvIndex{half(), half(), HalfInt(1), Sector::Up}));
    REQUIRE(!dlssv_valid(DlssvIndex{half(), half(), HalfInt(2), Sector::Up}));
    REQUIRE(dlssv_valid(DlssvIndex{half(), half(), HalfInt(1), Sector::Down}) == false);
    REQUIRE(dlssv_valid(DlssvIndex{half(), -half(), HalfInt(0), Sector::Down}));
}

TEST_CASE("doubled basis layout", "[basis]")
{
    const DoubledPWBasis b(Truncation{HalfInt(1)});
    const PWBasis inner(Truncation{HalfInt(1)});
    REQUIRE(b.dim() == 2 * inner.dim());
    for (std::size_t k = 0; k < inner.dim(); ++k) {
        REQUIRE(b.at(k) == DoubledPWIndex{Copy::First, inner.at(k)});
        REQUIRE(b.at(inner.dim() + k) == DoubledPWIndex{Copy::Second, inner.at(k)});
        REQUIRE(b.index_of(DoubledPWIndex{Copy::Second, inner.at(k)}) == inner.dim() + k);
    }
}
