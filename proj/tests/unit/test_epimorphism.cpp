#include <doctest.h>

#include "polarepi/epimorphism.hpp"

using namespace polarepi;

namespace {

Scalar gs(const char* text) { return parse_scalar(text, FieldKind::Gaussian); }
Scalar qs(const char* text) { return parse_scalar(text, FieldKind::Quaternion); }

EpimorphismContext gaussian_ctx(int l, Sampler& rng)
{
    return EpimorphismContext::build(PolarSpace(gaussian_pq_space(), l), TotalSubring::inert_gaussian(3), gs("1"),
                                     rng, 40);
}

EpimorphismContext quaternion_ctx(int l, const char* s, Sampler& rng)
{
    return EpimorphismContext::build(PolarSpace(quaternion_pq_space(), l), TotalSubring::ramified_quaternion(2),
                                     qs(s), rng, 40);
}

}  // namespace

TEST_CASE("coset classification")
{
    const auto g = classify_coset(gaussian_pq_space(), TotalSubring::inert_gaussian(3), gs("1"));
    CHECK(g.variant == CaseVariant::I);
    CHECK(g.r == gs("1"));
    const auto q2 = TotalSubring::ramified_quaternion(2);
    const auto c2 = classify_coset(quaternion_pq_space(), q2, qs("1+i"));
    CHECK(c2.variant == CaseVariant::II);
    // r⁻¹r^σ + 1 = 1 − i, of norm 2.
    const Scalar probe = c2.r.inverse() * qs("1-i") + qs("1");
    CHECK(probe == qs("1-i"));
    CHECK(q2.valuation(probe) == Rational(1, 2));
    const auto c1 = classify_coset(quaternion_pq_space(), q2, qs("2"));
    CHECK(c1.variant == CaseVariant::I);
    CHECK(c1.r == qs("2"));
    CHECK_THROWS_AS(classify_coset(gaussian_pq_space(), TotalSubring::split_gaussian(5), gs("1")), CaseUndecided);
}

TEST_CASE("contexts reject invalid data")
{
    Sampler rng(1);
    CHECK_THROWS_AS(EpimorphismContext::build(PolarSpace(gaussian_pq_space(), 2), TotalSubring::split_gaussian(5),
                                              gs("1"), rng, 200),
                    ContextInvalid);
    CHECK_THROWS_AS(EpimorphismContext::build(PolarSpace(quaternion_pq_space(), 2), TotalSubring::inert_gaussian(3),
                                              qs("1"), rng),
                    FieldMismatch);
}

TEST_CASE("normalization")
{
    Sampler rng(2);
    const auto ctx = gaussian_ctx(2, rng);
    const auto& space = ctx.space();
    CHECK(ctx.normalize(space.parse_vector("(0|1,0,0,0)")) == space.parse_vector("(0|1,0,0,0)"));
    CHECK(ctx.normalize(space.parse_vector("(0|1/3,1,0,0)")) == space.parse_vector("(0|1,3,0,0)"));
    CHECK(ctx.normalize(space.parse_vector("(0|3,3,0,0)")) == space.parse_vector("(0|1,1,0,0)"));
    CHECK_THROWS_AS(ctx.normalize(space.parse_vector("(1|0,0,0,0)")), AlgebraError);
    for (int n = 0; n < 100; ++n) {
        const XVector x = space.random_vector(rng, {5, 3, -3, 3});
        if (x.coords_zero()) continue;
        CHECK(ctx.normed(ctx.normalize(x)));
    }
}

TEST_CASE("rho on points")
{
    Sampler rng(3);
    const auto ctx = gaussian_ctx(2, rng);
    const auto& space = ctx.space();
    const auto point = [&](const char* text) { return ProjectivePoint::make(space, space.parse_vector(text)); };
    CHECK(ctx.lbar_dim() == 1);
    CHECK(ctx.rho_point(point("(0|1,0,0,0)")).to_literal() == "(0|1,0,0,0)");
    CHECK(ctx.rho_point(point("(0|3,1,0,0)")).to_literal() == "(0|0,1,0,0)");
    CHECK(ctx.rho_point(point("(0|1/3,0,0,0)")) == ctx.rho_point(point("(0|1,0,0,0)")));
    const auto lifted = ctx.lift_point(ctx.parse_target_point("(0|1,0,0,0)"));
    CHECK(lifted == point("(0|1,0,0,0)"));
    CHECK_THROWS_AS(ctx.parse_target_point("(0|1,i,0,0)"), AlgebraError);
}

TEST_CASE("residue forms")
{
    Sampler rng(4);
    const auto ctx = gaussian_ctx(2, rng);
    CHECK(ctx.q0_bar(ctx.residue_vector({gs("0")})).is_zero());
    // q0(1) = i; the residue of i modulo the prime field.
    CHECK(ctx.q_equal(ctx.q0_bar(ctx.residue_vector({gs("1")})), ctx.residue(gs("i"))));
    CHECK(ctx.q_equal(ctx.q0_bar(ctx.residue_vector({gs("1")})), ctx.residue(gs("2+i"))));
    CHECK_FALSE(ctx.q_equal(ctx.q0_bar(ctx.residue_vector({gs("1")})), ctx.residue(gs("2"))));
    CHECK_THROWS_AS(ctx.residue_vector({gs("1/3")}), AlgebraError);
    // Independence of the representative modulo L0''.
    for (int n = 0; n < 50; ++n) {
        const Scalar v = ctx.ring().sample_element(rng, {5, 3, -2, 2});
        const Scalar u = ctx.ring().sample_m(rng, {5, 3, -2, 2});
        CHECK(ctx.in_l0_second({u}));
        CHECK(ctx.q_equal(ctx.q0_bar({{v}}), ctx.q0_bar({{v + u}})));
    }
}

TEST_CASE("quaternion Case II target")
{
    Sampler rng(5);
    const auto ctx = quaternion_ctx(2, "1+i", rng);
    CHECK(ctx.case_tag().variant == CaseVariant::II);
    CHECK(ctx.lbar_dim() == 1);
    CHECK(ctx.twist() == ctx.residue(qs("-1")));
    const ResidueVector one = ctx.residue_vector({qs("1")});
    CHECK_FALSE(ctx.q0_bar(one).is_zero());
    CHECK(ctx.f0_bar(one, one) == ctx.rzero());

    const auto case1 = quaternion_ctx(2, "2", rng);
    CHECK(case1.case_tag().variant == CaseVariant::I);
    CHECK(case1.lbar_dim() == 0);
    // σ_R is the Frobenius of F_4 here.
    const ResidueScalar w = case1.residue(qs("-1/2+1/2*i+1/2*j+1/2*k"));
    CHECK(case1.sigma_r(w) == w * w);
}

TEST_CASE("descent witnesses")
{
    Sampler rng(6);
    const auto ctx = gaussian_ctx(3, rng);
    const auto& space = ctx.space();
    const auto outside = descent_check(ctx, y_short(space, 2, gs("1/3")), rng, 5);
    CHECK_FALSE(outside.theorem_descends);
    CHECK(outside.separated);
    CHECK(outside.witness.value_or("") == "(0|1,0,0,0,0,0);(0|0,0,1,0,0,0)");

    const auto inside = descent_check(ctx, y_short(space, 2, gs("2+i")), rng, 30);
    CHECK(inside.theorem_descends);
    CHECK_FALSE(inside.separated);
    CHECK_FALSE(inside.action_mismatch.has_value());

    const auto& pq = space.pq();
    // t = 1/3 is not in R.
    const auto bad = y_long(space, t_make(pq, {gs("0")}, gs("1/3")));
    const auto r_bad = descent_check(ctx, bad, rng, 5);
    CHECK_FALSE(r_bad.theorem_descends);
    CHECK(r_bad.separated);
    CHECK(r_bad.witness.value_or("") == "(0|1,0,0,0,0,0);(0|0,1,0,0,0,0)");
    const auto good = y_long(space, t_make(pq, {gs("1")}, gs("i")));
    const auto r_good = descent_check(ctx, good, rng, 30);
    CHECK(r_good.theorem_descends);
    CHECK_FALSE(r_good.separated);
}

TEST_CASE("y_{l-1}(k) on normed vectors")
{
    // (v|a_1', s a_2', a_3', s a_4', ...) ↦ (v|a_1' + k a_3', s a_2', a_3', s(a_4' − k^{σs} a_2'), ...)
    Sampler rng(7);
    const auto ctx = quaternion_ctx(3, "1+i", rng);
    const auto& space = ctx.space();
    const Scalar s = ctx.s();
    for (int n = 0; n < 30; ++n) {
        const XVector x = ctx.normalize(random_point(space, rng, {}).rep());
        const Scalar k = ctx.ring().sample_element(rng, {});
        const auto before = ctx.twisted(x);
        const auto after = ctx.twisted(act(space, y_short(space, 2, k), x));
        CHECK(after[0] == before[0] + k * before[2]);
        CHECK(after[1] == before[1]);
        CHECK(after[2] == before[2]);
        CHECK(after[3] == before[3] - sigma_s(k, s, Involution::QuaternionConjugation) * before[1]);
        CHECK(ctx.normed(act(space, y_short(space, 2, k), x)) == ctx.normed(x));
    }
}

TEST_CASE("epimorphism suites on small budgets")
{
    const EpimorphismBudget budget{60, 60, 60, 15, 60, 20};
    for (int l : {2, 3}) {
        Sampler rng(40 + l);
        for (const auto& ctx : {gaussian_ctx(l, rng), quaternion_ctx(l, "1+i", rng), quaternion_ctx(l, "2", rng)}) {
            for (const auto& list : {verify_case(ctx, rng, 60), verify_target_laws(ctx, rng, 60),
                                     verify_epimorphism(ctx, rng, budget)}) {
                for (const auto& c : list) {
                    CHECK_MESSAGE(c.passed(), ctx.ring().tag() << " l=" << l << " " << c.check << " "
                                                               << c.witness.value_or("") << " " << c.detail);
                }
            }
        }
    }
}
