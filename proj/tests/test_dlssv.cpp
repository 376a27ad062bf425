#include "suq2/dlssv.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace suq2;

namespace {

struct GenSet {
    OperatorMatrix a, as, b, bs, one;
};

GenSet pi_set(const DlssvBasis& basis, double q, std::optional<CoeffKind> negated = {})
{
    return {pi_prime(Gen::Alpha, basis, q, negated),
            pi_prime(Gen::AlphaStar, basis, q, negated),
            pi_prime(Gen::Beta, basis, q, negated),
            pi_prime(Gen::BetaStar, basis, q, negated),
            OperatorMatrix::diagonal(SpaceTag::DLSSV, OperatorMatrix::levels_of(basis),
                                     basis.truncation().nmax.twice(), [](int) { return 1.0; })};
}

std::vector<double> relation_residuals(const GenSet& g, double q)
{
    return {clean_columns_norm(g.as.composed_with(g.a) + g.bs.composed_with(g.b) - g.one),
            clean_columns_norm(g.a.composed_with(g.as) + q * q * g.b.composed_with(g.bs) - g.one),
            clean_columns_norm(g.a.composed_with(g.b) - q * g.b.composed_with(g.a)),
            clean_columns_norm(g.a.composed_with(g.bs) - q * g.bs.composed_with(g.a)),
            clean_columns_norm(g.bs.composed_with(g.b) - g.b.composed_with(g.bs))};
}

} // namespace

TEST_CASE("sector coefficients at the bottom level")
{
    const double q = 0.5;
    const double q2 = q_number_value(2.0, q);  // [2] = q + 1/q

    const HalfInt n = 0, i = 0, j = half();

    REQUIRE(dlssv_coeff(CoeffKind::APlus, n, i, j, Sector::Up, Sector::Up, q)
            == Catch::Approx(std::pow(q, -0.5) / std::sqrt(q2)).epsilon(1e-14));
    REQUIRE(dlssv_coeff(CoeffKind::APlus, n, i, j, Sector::Down, Sector::Down, q)
            == Catch::Approx(1.0).epsilon(1e-14));
    REQUIRE(dlssv_coeff(CoeffKind::APlus, n, i, j, Sector::Down, Sector::Up, q) == 0.0);
    REQUIRE(dlssv_coeff(CoeffKind::APlus, n, i, j, Sector::Up, Sector::Down, q) == 0.0);

    REQUIRE(dlssv_coeff(CoeffKind::BPlus, n, i, j, Sector::Up, Sector::Up, q)
            == Catch::Approx(1.0 / q2).epsilon(1e-14));
    REQUIRE(dlssv_coeff(CoeffKind::BPlus, n, i, j, Sector::Down, Sector::Up, q)
            == Catch::Approx(-1.0 / (q * q2)).epsilon(1e-14));

    // The lowering families vanish identically on the bottom level.
    for (Sector r : {Sector::Up, Sector::Down})
        for (Sector c : {Sector::Up, Sector::Down}) {
            REQUIRE(dlssv_coeff(CoeffKind::AMinus, n, i, j, r, c, q) == 0.0);
            REQUIRE(dlssv_coeff(CoeffKind::BMinus, n, i, j, r, c, q) == 0.0);
        }

    // Raising coefficients of the adjoint pair, fixed by transposition at
    // the landing label.
    REQUIRE(dlssv_coeff_tilde(CoeffKind::APlus, n, i, j, Sector::Up, Sector::Up, q)
            == Catch::Approx(q / q2).epsilon(1e-14));
    REQUIRE(dlssv_coeff_tilde(CoeffKind::APlus, n, i, j, Sector::Down, Sector::Up, q)
            == Catch::Approx(-1.0 / q2).epsilon(1e-14));
    REQUIRE(dlssv_coeff_tilde(CoeffKind::BPlus, n, i, j, Sector::Up, Sector::Up, q)
            == Catch::Approx(-std::pow(q, -0.5) * std::sqrt(q2) / q2).epsilon(1e-14));

    // Lowering from the bottom level would land outside the chart.
    REQUIRE_THROWS_AS(dlssv_coeff_tilde(CoeffKind::AMinus, n, i, j, Sector::Up, Sector::Up, q),
                      std::domain_error);
}

TEST_CASE("spinor generator columns on the bottom level")
{
    const double q = 0.5;
    const DlssvBasis b(Truncation{2});
    const GenSet g = pi_set(b, q);

    const int src = b.index_of({0, 0, half(), Sector::Up});

    // alpha* raises with a single surviving entry.
    REQUIRE(g.as.column(src).size() == 1);
    REQUIRE(g.as.entry(b.index_of({half(), half(), 1, Sector::Up}), src)
            == Catch::Approx(0.8944271909999159).epsilon(1e-12));

    // beta hits both sectors of the raised level.
    REQUIRE(g.b.column(src).size() == 2);
    REQUIRE(g.b.entry(b.index_of({half(), half(), 0, Sector::Up}), src)
            == Catch::Approx(-0.4).epsilon(1e-12));
    REQUIRE(g.b.entry(b.index_of({half(), half(), 0, Sector::Down}), src)
            == Catch::Approx(0.8).epsilon(1e-12));

    // alpha via the transposed coefficients.
    REQUIRE(g.a.column(src).size() == 2);
    REQUIRE(g.a.entry(b.index_of({half(), -half(), 0, Sector::Up}), src)
            == Catch::Approx(0.2).epsilon(1e-12));
    REQUIRE(g.a.entry(b.index_of({half(), -half(), 0, Sector::Down}), src)
            == Catch::Approx(-0.4).epsilon(1e-12));

    // beta* sends the column to the opposite extreme of the raised level.
    REQUIRE(g.bs.column(src).size() == 1);
    REQUIRE(g.bs.entry(b.index_of({half(), -half(), 1, Sector::Up}), src)
            == Catch::Approx(0.8944271909999159).epsilon(1e-12));

    // Column norms certify both defining sphere relations on this column.
    auto norm2 = [&](const OperatorMatrix& m) {
        double s = 0.0;
        for (const auto& [row, v] : m.column(src)) s += v * v;
        return s;
    };
    REQUIRE(norm2(g.a) + norm2(g.b) == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(norm2(g.as) + q * q * norm2(g.bs) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no stranded spinor coefficients")
{
    const DlssvBasis b(Truncation{2});
    for (Gen g : {Gen::Alpha, Gen::AlphaStar, Gen::Beta, Gen::BetaStar}) {
        std::vector<PiPrimeAnomaly> bad;
        pi_prime(g, b, 0.5, {}, &bad);
        REQUIRE(bad.empty());
    }
}

TEST_CASE("spinor generators satisfy the relations and pair under adjoints")
{
    const DlssvBasis b(Truncation{2});
    for (double q : {0.3, 0.5, 0.8}) {
        const GenSet g = pi_set(b, q);
        for (double r : relation_residuals(g, q)) REQUIRE(r <= 1e-12);

        REQUIRE(clean_columns_norm(g.a.adjoint() - g.as) <= 1e-12);
        REQUIRE(clean_columns_norm(g.b.adjoint() - g.bs) <= 1e-12);
    }
}

TEST_CASE("a sign corruption in one coefficient family breaks the relations")
{
    const DlssvBasis b(Truncation{2});
    const GenSet g = pi_set(b, 0.5, CoeffKind::BPlus);
    double worst = 0.0;
    for (double r : relation_residuals(g, 0.5)) worst = std::max(worst, r);
    REQUIRE(worst > 0.05);
}

TEST_CASE("sector coefficients approach their diagonal leading forms at rate q^2n")
{
    const double q = 0.5;

    // Largest gap to the leading form over the used entries of one level.
    auto level_residual = [&](int tn) {
        double worst = 0.0;
        const HalfInt n = HalfInt::halves(tn);
        for (int it = -tn; it <= tn; it += 2)
            for (int jt = -tn - 1; jt <= tn + 1; jt += 2)
                for (CoeffKind kind : {CoeffKind::APlus, CoeffKind::AMinus, CoeffKind::BPlus,
                                       CoeffKind::BMinus}) {
                    const HalfInt i = HalfInt::halves(it), j = HalfInt::halves(jt);
                    const bool raising = kind == CoeffKind::APlus || kind == CoeffKind::BPlus;
                    const bool a_family =
                        kind == CoeffKind::APlus || kind == CoeffKind::AMinus;
                    const HalfInt n2 = raising ? n + half() : n - half();
                    const HalfInt i2 = i + half();
                    const HalfInt j2 = a_family ? j + half() : j - half();
                    for (Sector sc : {Sector::Up, Sector::Down})
                        for (Sector sr : {Sector::Up, Sector::Down}) {
                            if (!dlssv_valid({n, i, j, sc})) continue;
                            if (!dlssv_valid({n2, i2, j2, sr})) continue;
                            const double v = dlssv_coeff(kind, n, i, j, sr, sc, q);
                            const double lead =
                                sr == sc ? dlssv_leading(kind, n, i, j, sr, q) : 0.0;
                            worst = std::max(worst, std::abs(v - lead));
                        }
                }
        return worst;
    };

    const double scale = std::max(level_residual(2) / (q * q), 1e-6);
    REQUIRE(level_residual(4) <= 2.0 * scale * std::pow(q, 4));
    REQUIRE(level_residual(6) <= 2.0 * scale * std::pow(q, 6));

    // the library helper computes the same residuals
    for (int tn : {2, 4, 6})
        REQUIRE(dlssv_leading_gap(tn, q) == Catch::Approx(level_residual(tn)).margin(1e-15));
}

TEST_CASE("direct-sum eigenvalue assignment and level multiplicities")
{
    const DlssvBasis b(Truncation{2});
    REQUIRE(dirac_dlssv_value({1, 0, half(), Sector::Up}) == 3);
    REQUIRE(dirac_dlssv_value({1, 0, half(), Sector::Down}) == -2);
    REQUIRE(dirac_dlssv_value({0, 0, half(), Sector::Up}) == 1);

    const OperatorMatrix d = dirac_dlssv(b);
    REQUIRE(d.nonzeros() == b.dim());
    for (int k = 0; k < b.dim(); ++k)
        REQUIRE(d.entry(k, k) == Catch::Approx(double(dirac_dlssv_value(b.at(k)))));

    for (int t = 0; t <= 6; ++t) {
        const auto lines = dlssv_level_lines(t);
        long total = 0;
        for (const SpectralLine& l : lines) total += l.multiplicity;
        REQUIRE(total == DlssvBasis::level_dim(HalfInt::halves(t)));
        REQUIRE(lines[0].abs_eigenvalue == Catch::Approx(double(t + 1)));
        REQUIRE(lines[0].eigenvalue == Catch::Approx(double(t + 1)));
        REQUIRE(lines[0].multiplicity == long(t + 1) * (t + 2));
        if (t > 0) REQUIRE(lines[1].eigenvalue == Catch::Approx(double(-t)));
    }
}
