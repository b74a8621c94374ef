#include <doctest.h>

#include "polarepi/subring.hpp"

using namespace polarepi;

namespace {

Scalar gs(const char* text) { return parse_scalar(text, FieldKind::Gaussian); }
Scalar qs(const char* text) { return parse_scalar(text, FieldKind::Quaternion); }

// Independent valuation oracle: v_p(N(x)) counts in Z[i] or the Hurwitz order.
long norm_valuation(const Scalar& x, unsigned long p) { return padic_valuation(x.norm(), p); }

const CheckResult& find(const CheckList& checks, const std::string& name)
{
    for (const auto& c : checks) {
        if (c.check == name) return c;
    }
    FAIL("missing check " << name);
    return checks.front();
}

}  // namespace

TEST_CASE("valuations")
{
    const auto g3 = TotalSubring::inert_gaussian(3);
    CHECK(g3.valuation(gs("9+3i")) == 1);
    CHECK(g3.valuation(gs("1/3")) == -1);
    CHECK(g3.valuation(gs("2+i")) == 0);
    CHECK_THROWS_AS(g3.valuation(gs("0")), AlgebraError);

    const auto q2 = TotalSubring::ramified_quaternion(2);
    CHECK(q2.valuation(qs("1+i")) == Rational(1, 2));
    CHECK(q2.valuation(qs("2")) == 1);
    CHECK(q2.valuation(qs("1/2+1/2*i+1/2*j+1/2*k")) == 0);
    CHECK(q2.contains(qs("1/2+1/2*i+1/2*j+1/2*k")));
    CHECK(q2.in_m(qs("1+j")));

    const auto s5 = TotalSubring::split_gaussian(5);
    CHECK(s5.valuation(gs("2+i")) == 1);
    CHECK(s5.valuation(gs("2-i")) == 0);
    CHECK(s5.valuation(gs("5")) == 1);
    CHECK(s5.valuation(gs("2-i").inverse()) == 0);
    CHECK(s5.valuation(gs("3/25-4/25*i")) == -2);

    CHECK_THROWS_AS(TotalSubring::inert_gaussian(5), AlgebraError);
    CHECK_THROWS_AS(total_subring_from_tag("nope", 3), AlgebraError);
}

TEST_CASE("valuation agrees with the norm oracle")
{
    // In Z[i] at an inert prime and in the Hurwitz order, v(x) = v_p(N(x))/2.
    Sampler rng(11);
    const auto g3 = TotalSubring::inert_gaussian(3);
    const auto q2 = TotalSubring::ramified_quaternion(2);
    for (int n = 0; n < 200; ++n) {
        const Scalar g = rng.nonzero_scalar(FieldKind::Gaussian, {5, 3, -2, 2});
        CHECK(g3.valuation(g) * 2 == norm_valuation(g, 3));
        const Scalar q = rng.nonzero_scalar(FieldKind::Quaternion, {});
        CHECK(q2.valuation(q) * 2 == norm_valuation(q, 2));
    }
}

TEST_CASE("residues of the inert Gaussian ring")
{
    const auto g3 = TotalSubring::inert_gaussian(3);
    CHECK(g3.residue_table().size() == 9);
    const ResidueScalar a(g3, gs("1+3i")), b(g3, gs("2"));
    CHECK((a + b).is_zero());
    CHECK(residue_canonical(a + b).text == "0");
    CHECK(residue_canonical(ResidueScalar(g3, gs("4"))).text == "1");
    CHECK(residue_canonical(ResidueScalar(g3, gs("5+4i"))).text == "2+i");
    CHECK(ResidueScalar(g3, gs("i")).inverse() == ResidueScalar(g3, gs("-i")));
    CHECK(residue_canonical(ResidueScalar(g3, gs("1/2"))).text == "2");
    CHECK_THROWS_AS(ResidueScalar(g3, gs("3")).inverse(), AlgebraError);
    CHECK_THROWS_AS(ResidueScalar(g3, gs("1/3")), AlgebraError);
}

TEST_CASE("residues of the ramified quaternion ring")
{
    const auto q2 = TotalSubring::ramified_quaternion(2);
    const Scalar omega = qs("-1/2+1/2*i+1/2*j+1/2*k");
    const ResidueScalar w(q2, omega);
    const ResidueScalar one(q2, qs("1"));
    CHECK(residue_canonical(w).text == "ω");
    CHECK(residue_canonical(w * w).text == "ω²");
    CHECK((w * w + w + one).is_zero());
    CHECK(residue_canonical(ResidueScalar(q2, qs("0"))).text == "0");
    CHECK(residue_canonical(ResidueScalar(q2, qs("i"))).text == "1");
    CHECK(residue_canonical(ResidueScalar(q2, qs("1+i"))).text == "0");
    CHECK(w.inverse() == w * w);
}

TEST_CASE("K0 hooks")
{
    const auto q2 = TotalSubring::ramified_quaternion(2);
    // q0(u) = u^σ i u for u = 1 gives i: v(i − k) ≤ 1/2 for every rational k.
    CHECK(q2.k0_shift(qs("i"), Rational(1, 2)).has_value());
    CHECK_FALSE(q2.k0_shift(qs("i"), 1).has_value());
    // 7 + 1/4·j: y² + 1/16 with y = 1/4·z, z² + 1 has v_2 ≤ 1.
    CHECK_FALSE(q2.k0_shift(qs("7+1/4*j"), 0).has_value());
    // S = 3: y² + 3 has v_2 at most 2, reached at y = 1.
    const auto k = q2.k0_shift(qs("5+i+j+k"), 1);
    REQUIRE(k.has_value());
    CHECK(*k == qs("4"));
    CHECK_FALSE(q2.k0_shift(qs("5+i+j+k"), Rational(3, 2)).has_value());
    CHECK(q2.k0_in_coset(qs("2+2*i+2*j")).value_or(qs("0")) == qs("2"));
    CHECK_FALSE(q2.k0_in_coset(qs("1+i")).has_value());

    const auto g3 = TotalSubring::inert_gaussian(3);
    CHECK(g3.k0_shift(gs("2+9i"), 2).value_or(gs("0")) == gs("2"));
    CHECK_FALSE(g3.k0_shift(gs("2+i"), 1).has_value());
    CHECK(g3.k0_in_coset(gs("3i")).value_or(gs("0")) == gs("3"));

    CHECK_THROWS_AS(TotalSubring::split_gaussian(5).k0_in_coset(gs("1")), AlgebraError);
}

TEST_CASE("k0_shift finds the best rational shift")
{
    // Brute-force oracle over k = a_0 − y for y in a dyadic grid.
    Sampler rng(3);
    const auto q2 = TotalSubring::ramified_quaternion(2);
    for (int n = 0; n < 60; ++n) {
        const Scalar x = rng.nonzero_scalar(FieldKind::Quaternion, {4, 2, -1, 1});
        Rational best = -1000;
        for (int num = -64; num <= 64; ++num) {
            const Scalar d = x - Scalar(FieldKind::Quaternion, x.re() - Rational(num, 8));
            if (d.is_zero()) continue;
            best = std::max(best, q2.valuation(d));
        }
        if (best > -1000 && best < 3) {
            CHECK(q2.k0_shift(x, best).has_value());
            CHECK_FALSE(q2.k0_shift(x, best + Rational(1, 2)).has_value());
        }
    }
}

TEST_CASE("ring and residue laws")
{
    Sampler rng(21);
    for (const auto& ring : {TotalSubring::inert_gaussian(3), TotalSubring::ramified_quaternion(2),
                             TotalSubring::split_gaussian(5)}) {
        const ScalarShape shape{5, ring.prime(), -2, 2};
        const auto involution =
            ring.kind() == FieldKind::Quaternion ? Involution::QuaternionConjugation : Involution::GaussianConjugation;
        for (const auto& c : verify_subring(ring, involution, rng, 150, shape)) {
            CHECK_MESSAGE(c.verdict != Verdict::Fail, ring.tag() << " " << c.check << " " << c.witness.value_or(""));
        }
    }
}

TEST_CASE("condition C1")
{
    Sampler rng(5);
    const auto g3 = TotalSubring::inert_gaussian(3);
    for (const auto& c : check_c1(g3, {gs("1")}, Involution::GaussianConjugation, rng, 100, {5, 3, -2, 2})) {
        CHECK(c.passed());
    }
    const auto q2 = TotalSubring::ramified_quaternion(2);
    for (const auto& c : check_c1(q2, {qs("1+i")}, Involution::QuaternionConjugation, rng, 100, {})) {
        CHECK(c.passed());
    }
    const auto s5 = TotalSubring::split_gaussian(5);
    const auto bad = check_c1(s5, {gs("1")}, Involution::GaussianConjugation, rng, 100, {5, 5, -2, 2});
    const auto& c = find(bad, "c1.sigma_s_stabilizes_R");
    REQUIRE(c.verdict == Verdict::Fail);
    REQUIRE(c.witness.has_value());
    // Replay the witness.
    const Scalar a = gs(c.witness->c_str());
    CHECK(s5.contains(a));
    CHECK_FALSE(s5.contains(sigma_s(a, gs("1"), Involution::GaussianConjugation)));
}

TEST_CASE("conditions C2 and C3")
{
    Sampler rng(8);
    const auto g3 = TotalSubring::inert_gaussian(3);
    const auto gpq = gaussian_pq_space();
    for (const auto& c : check_c2_c3(gpq, g3, {gs("1")}, rng, 150, {5, 3, -2, 2})) {
        CHECK_MESSAGE(c.passed(), c.check << " " << c.witness.value_or(""));
    }
    const auto q2 = TotalSubring::ramified_quaternion(2);
    const auto qpq = quaternion_pq_space();
    for (const auto& c : check_c2_c3(qpq, q2, {qs("1+i")}, rng, 150, {})) {
        CHECK_MESSAGE(c.passed(), c.check << " " << c.witness.value_or(""));
    }
}

TEST_CASE("sampled elements of T lie in the requested coset")
{
    Sampler rng(9);
    const auto q2 = TotalSubring::ramified_quaternion(2);
    const auto pq = quaternion_pq_space();
    const Scalar s = qs("1+i");
    int hits = 0;
    for (int n = 0; n < 200; ++n) {
        const bool in_m = n % 2 == 1;
        const auto x = sample_t_in_coset(pq, q2, {s}, in_m, rng, {});
        if (!x) continue;
        ++hits;
        const Scalar r = s.inverse() * x->t();
        CHECK(in_m ? q2.in_m(r) : q2.contains(r));
    }
    CHECK(hits > 40);
}

TEST_CASE("cosets")
{
    const auto q2 = TotalSubring::ramified_quaternion(2);
    CHECK(same_coset(q2, {qs("1+i")}, {qs("1+j")}));
    CHECK_FALSE(same_coset(q2, {qs("1+i")}, {qs("2")}));
    CHECK(sigma_s(qs("j"), qs("i"), Involution::QuaternionConjugation) == qs("j"));
}
