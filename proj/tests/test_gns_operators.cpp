#include "suq2/gns_operators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

using namespace suq2;

namespace {

OperatorMatrix identity_on(const PWBasis& b)
{
    return OperatorMatrix::diagonal(SpaceTag::PW, OperatorMatrix::levels_of(b),
                                    b.truncation().nmax.twice(), [](int) { return 1.0; });
}

double transpose_pair_gap(const OperatorMatrix& a, const OperatorMatrix& astar)
{
    return (astar.dense() - a.dense().transpose()).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("closed-form generator columns at small spin")
{
    const double q = 0.5;
    const PWBasis b(Truncation{2});

    const OperatorMatrix a = hat_generator(Gen::Alpha, b, q);
    const OperatorMatrix bt = hat_generator(Gen::Beta, b, q);

    const int origin = b.index_of({0, 0, 0});
    const int ahm = b.index_of({half(), -half(), -half()});
    const int bhm = b.index_of({half(), half(), -half()});

    // alpha on the vacuum column: single raising entry with weight q.
    REQUIRE(a.column(origin).size() == 1);
    REQUIRE(a.entry(ahm, origin) == Catch::Approx(q).epsilon(1e-14));

    // beta on the vacuum column: single raising entry -sqrt(1-q^2).
    REQUIRE(bt.column(origin).size() == 1);
    REQUIRE(bt.entry(bhm, origin) == Catch::Approx(-std::sqrt(1 - q * q)).epsilon(1e-14));

    // alpha on the top spin-1/2 corner: one raising and one lowering term.
    const int c = b.index_of({half(), half(), half()});
    REQUIRE(a.column(c).size() == 2);
    REQUIRE(a.entry(b.index_of({1, 0, 0}), c) == Catch::Approx(q * q * q).epsilon(1e-14));
    REQUIRE(a.entry(origin, c) == Catch::Approx(1 - q * q).epsilon(1e-14));

    REQUIRE(a.shift_twice() == 1);
    REQUIRE(a.clean_below_twice() == b.truncation().nmax.twice() - 1);
}

TEST_CASE("closed-form generators pair under transposition")
{
    const PWBasis b(Truncation{2});
    for (double q : {0.3, 0.5, 0.8}) {
        const OperatorMatrix a = hat_generator(Gen::Alpha, b, q);
        const OperatorMatrix as = hat_generator(Gen::AlphaStar, b, q);
        const OperatorMatrix bt = hat_generator(Gen::Beta, b, q);
        const OperatorMatrix bs = hat_generator(Gen::BetaStar, b, q);
        REQUIRE(transpose_pair_gap(a, as) <= 1e-14);
        REQUIRE(transpose_pair_gap(bt, bs) <= 1e-14);
    }
}

TEST_CASE("closed-form generators obey the relations away from the chart edge")
{
    // On columns pinned to the chart edge (i = n or j = n) the closed-form
    // model strands O(q^2n) of lowering weight outside the chart, so the
    // relations there hold only up to the square of that weight.  Interior
    // columns must be exact.
    const double q = 0.5;
    const PWBasis b(Truncation{2});
    const OperatorMatrix a = hat_generator(Gen::Alpha, b, q);
    const OperatorMatrix as = hat_generator(Gen::AlphaStar, b, q);
    const OperatorMatrix bt = hat_generator(Gen::Beta, b, q);
    const OperatorMatrix bs = hat_generator(Gen::BetaStar, b, q);
    const OperatorMatrix one = identity_on(b);

    const OperatorMatrix r1 = as.composed_with(a) + bs.composed_with(bt) - one;
    const OperatorMatrix r2 = a.composed_with(as) + q * q * bt.composed_with(bs) - one;
    const OperatorMatrix r3 = a.composed_with(bt) - q * bt.composed_with(a);
    const OperatorMatrix r4 = a.composed_with(bs) - q * bs.composed_with(a);
    const OperatorMatrix r5 = bs.composed_with(bt) - bt.composed_with(bs);

    REQUIRE(r1.clean_below_twice() == b.truncation().nmax.twice() - 2);
    for (const OperatorMatrix* r : {&r1, &r2, &r3, &r4, &r5})
        for (int col = 0; col < b.dim(); ++col) {
            const PWIndex& x = b.at(col);
            if (x.n.twice() > r->clean_below_twice()) continue;
            double cn = 0.0;
            for (const auto& [row, v] : r->column(col)) cn += v * v;
            cn = std::sqrt(cn);
            if (x.i == x.n || x.j == x.n)
                REQUIRE(cn <= 2.0 * std::pow(q, 2 * x.n.twice()) + 1e-13);
            else
                REQUIRE(cn <= 1e-13);
        }
}

TEST_CASE("stranded closed-form coefficients sit at chart edges and are O(q^2n)")
{
    const double q = 0.5;
    const PWBasis b(Truncation{2});

    std::map<Gen, std::vector<HatDrop>> drops;
    for (Gen g : {Gen::Alpha, Gen::AlphaStar, Gen::Beta, Gen::BetaStar})
        hat_generator(g, b, q, &drops[g]);

    // alpha never strands weight; the others do so only on the chart edge.
    REQUIRE(drops[Gen::Alpha].empty());
    REQUIRE(drops[Gen::AlphaStar].size() == 25);
    REQUIRE(drops[Gen::Beta].size() == 10);
    REQUIRE(drops[Gen::BetaStar].size() == 10);

    for (const auto& [g, list] : drops)
        for (const HatDrop& d : list) {
            const int tn = d.src.n.twice();
            REQUIRE(std::abs(d.coeff) <= std::pow(q, tn) + 1e-15);
            const bool edge = d.src.i == d.src.n || d.src.j == d.src.n;
            REQUIRE(edge);
        }
}

TEST_CASE("numeric multiplication matrices are honest about adjoints and norms")
{
    const double q = 0.5;
    const GnsBasis g(Truncation{HalfInt::halves(3)});

    const OperatorMatrix ma = to_numeric(exact_multiplication(g, gen_alpha()), q);
    const OperatorMatrix mas = to_numeric(exact_multiplication(g, gen_alpha_star()), q);
    const OperatorMatrix mb = to_numeric(exact_multiplication(g, gen_beta()), q);
    const OperatorMatrix mbs = to_numeric(exact_multiplication(g, gen_beta_star()), q);

    // In the orthonormal basis the star pair becomes a plain transpose pair.
    REQUIRE(transpose_pair_gap(ma, mas) <= 1e-12);
    REQUIRE(transpose_pair_gap(mb, mbs) <= 1e-12);

    // Isometry columnwise: |alpha v|^2 + |beta v|^2 = |v|^2 on complete columns.
    const PWBasis& labels = g.labels();
    for (int col = 0; col < labels.dim(); ++col) {
        if (labels.level(col).twice() > ma.clean_below_twice()) continue;
        double s = 0.0;
        for (const auto& [row, v] : ma.column(col)) s += v * v;
        for (const auto& [row, v] : mb.column(col)) s += v * v;
        REQUIRE(s == Catch::Approx(1.0).epsilon(1e-12));
    }

    // Diagonal exact operators pass through the normalization untouched.
    const OperatorMatrix d1 = to_numeric(exact_model_operator(g, dirac_standard()), q);
    const OperatorMatrix d1ref = model_matrix(dirac_standard(), labels);
    REQUIRE((d1.dense() - d1ref.dense()).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("eigenvalue families take the documented values")
{
    const PWBasis b(Truncation{2});
    const EigenvalueModel d1 = dirac_standard();
    const EigenvalueModel d2 = dirac_offset();
    const EigenvalueModel d3 = dirac_probe();

    REQUIRE(d1.eigenvalue_twice({1, 0, 1}) == 6);    // top column: 2n + 1
    REQUIRE(d1.eigenvalue_twice({1, 1, 0}) == -4);   // otherwise: -2n
    REQUIRE(d1.eigenvalue_twice({0, 0, 0}) == 2);
    REQUIRE(d2.eigenvalue_twice({1, 0, 1}) == 6);
    REQUIRE(d2.eigenvalue_twice({1, 1, 0}) == -6);   // offset branch: -2n - 1
    REQUIRE(d3.eigenvalue_twice({1, 0, 1}) == 6);    // wide branch: n + 2
    REQUIRE(d3.eigenvalue_twice({1, 0, 0}) == 6);    // k = 1 widens the window
    REQUIRE(d3.eigenvalue_twice({1, 0, -1}) == -2);  // low branch: -n

    bool zero = false;
    model_signs(d1, b, &zero);
    REQUIRE_FALSE(zero);
    model_signs(d2, b, &zero);
    REQUIRE_FALSE(zero);
    const EigenvalueModel flat{0, 0, 0, 2, 1, Side::Left};
    model_signs(flat, b, &zero);
    REQUIRE(zero);
}

TEST_CASE("translations on the kept leg commute, on the moved leg they cannot")
{
    const GnsBasis g(Truncation{1});
    // Include a spin-1 word so the translation has entries crossing every
    // family's branch boundary.
    const AlgebraElement w =
        gen_alpha() + gen_beta() + normal_multiply(gen_beta(), gen_beta());

    const ExactOperator ul = exact_translation(g, Functional::inner_with(w), Side::Left);
    const ExactOperator ur = exact_translation(g, Functional::inner_with(w), Side::Right);
    REQUIRE_FALSE(ul.is_zero());
    REQUIRE_FALSE(ur.is_zero());

    for (const EigenvalueModel& m : {dirac_standard(), dirac_offset(), dirac_probe()}) {
        const ExactOperator d = exact_model_operator(g, m);
        REQUIRE_FALSE(structural_witness(ul, m).has_value());
        REQUIRE(commutes_exactly(ul, d));

        const auto wit = structural_witness(ur, m);
        REQUIRE(wit.has_value());
        REQUIRE(wit->row_twice != wit->col_twice);
        REQUIRE_FALSE(commutes_exactly(ur, d));
    }
}

TEST_CASE("invariant-state translation is the rank-one vacuum projection")
{
    const GnsBasis g(Truncation{1});
    const ExactOperator p = exact_state_projection(g);
    const ExactOperator uh = exact_translation(g, Functional::haar_functional(), Side::Right);

    REQUIRE((p - uh).is_zero());
    REQUIRE(p.rank() == 1);
    REQUIRE((p.composed_with(p) - p).is_zero());

    // Convolving any functional into the invariant one absorbs it up to its
    // mass at the unit.
    const AlgebraElement w = AlgebraElement::unit() + gen_beta_star();
    const Functional rho = Functional::inner_with(w);
    const ExactOperator ur = exact_translation(g, rho, Side::Right);
    const QScalar mass = rho.apply(AlgebraElement::unit());
    REQUIRE((p.composed_with(ur) - mass * p).is_zero());
    REQUIRE((ur.composed_with(p) - mass * p).is_zero());
}

TEST_CASE("growth comparison between the eigenvalue families")
{
    const PWBasis b(Truncation{3});

    const GrowthBound g21 = growth_bound(dirac_offset(), dirac_standard(), b);
    REQUIRE(g21.feasible);
    REQUIRE(g21.slope == Catch::Approx(1.0));
    REQUIRE(g21.offset == Catch::Approx(1.0));
    REQUIRE(g21.settled_twice == 1);

    const GrowthBound g11 = growth_bound(dirac_standard(), dirac_standard(), b);
    REQUIRE(g11.feasible);
    REQUIRE(g11.slope == Catch::Approx(1.0));
    REQUIRE(g11.offset == Catch::Approx(0.0));

    // A quadratically growing family admits no linear bound: the needed
    // offset keeps climbing through the last level at every grid slope.
    const GrowthBound bad = growth_bound_fn(
        [](const PWIndex& x) { return double(x.n.twice()) * x.n.twice(); }, dirac_standard(), b);
    REQUIRE_FALSE(bad.feasible);
}

TEST_CASE("sign patterns of the two operators agree; mutations are caught")
{
    const PWBasis b(Truncation{3});
    const std::vector<int> s1 = model_signs(dirac_standard(), b, nullptr);
    const std::vector<int> s2 = model_signs(dirac_offset(), b, nullptr);

    const SignComparison same = compare_signs(s1, s2, b);
    REQUIRE(same.disagreements == 0);
    REQUIRE(same.last_disagreement_twice == -1);
    REQUIRE(sign_difference_compact(same, b));

    // One interior flip stays a compact difference and is reported.
    std::vector<int> flipped = s2;
    flipped[b.index_of({1, 0, 0})] *= -1;
    const SignComparison one = compare_signs(s1, flipped, b);
    REQUIRE(one.disagreements == 1);
    REQUIRE(one.last_disagreement_twice == 2);
    REQUIRE(sign_difference_compact(one, b));

    // Global negation disagrees out to the boundary, which is not compact.
    std::vector<int> neg = s1;
    for (int& s : neg) s *= -1;
    const SignComparison all = compare_signs(s1, neg, b);
    REQUIRE(all.disagreements == b.dim());
    REQUIRE_FALSE(sign_difference_compact(all, b));
}

TEST_CASE("per-level spectral lines carry the full degeneracy")
{
    const EigenvalueModel d1 = dirac_standard();

    const auto l0 = model_level_lines(d1, 0);
    REQUIRE(l0.size() == 1);
    REQUIRE(l0[0].abs_eigenvalue == Catch::Approx(1.0));
    REQUIRE(l0[0].multiplicity == 1);

    const auto l4 = model_level_lines(d1, 4);
    REQUIRE(l4.size() == 2);
    REQUIRE(l4[0].abs_eigenvalue == Catch::Approx(4.0));
    REQUIRE(l4[0].eigenvalue == Catch::Approx(-4.0));
    REQUIRE(l4[0].multiplicity == 20);
    REQUIRE(l4[1].abs_eigenvalue == Catch::Approx(5.0));
    REQUIRE(l4[1].eigenvalue == Catch::Approx(5.0));
    REQUIRE(l4[1].multiplicity == 5);

    const auto p3 = model_level_lines(dirac_probe(), 3);
    REQUIRE(p3.size() == 2);
    REQUIRE(p3[0].abs_eigenvalue == Catch::Approx(1.5));
    REQUIRE(p3[0].multiplicity == 8);
    REQUIRE(p3[1].abs_eigenvalue == Catch::Approx(3.5));
    REQUIRE(p3[1].multiplicity == 8);

    for (const EigenvalueModel& m : {d1, dirac_offset(), dirac_probe()})
        for (int t = 0; t <= 6; ++t) {
            long total = 0;
            for (const SpectralLine& l : model_level_lines(m, t)) total += l.multiplicity;
            REQUIRE(total == long(t + 1) * (t + 1));
        }
}

TEST_CASE("operator norms across the dense and iterative paths")
{
    const PWBasis small(Truncation{2});
    REQUIRE(model_abs_matrix(dirac_standard(), small).operator_norm()
            == Catch::Approx(5.0).epsilon(1e-10));

    const double q = 0.5;
    const double na = hat_generator(Gen::Alpha, small, q).operator_norm();
    REQUIRE(na <= 1.0 + 1e-10);
    REQUIRE(na >= 0.8);

    // Dimension 819 exercises the power-iteration branch.
    const PWBasis big(Truncation{6});
    REQUIRE(model_abs_matrix(dirac_standard(), big).operator_norm()
            == Catch::Approx(13.0).epsilon(1e-8));
}
