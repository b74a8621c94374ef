#include <doctest.h>

#include "polarepi/forms.hpp"

using namespace polarepi;

namespace {

Scalar g(const char* text) { return parse_scalar(text, FieldKind::Gaussian); }

// q_0(v) = v^σ i v on Q(i) is i·N(v); evaluated without the library.
Scalar gaussian_q0_oracle(const Scalar& v) { return Scalar(FieldKind::Gaussian, 0, v.norm()); }

}  // namespace

TEST_CASE("q0 and f0 on the gaussian instance")
{
    const auto pq = gaussian_pq_space();
    CHECK(pq.q0({g("1")}) == g("i"));
    CHECK(pq.q0({g("2-i")}) == gaussian_q0_oracle(g("2-i")));
    // f_0(i, 1) = i^σ (i − i^σ) 1 = (−i)(2i) = 2.
    CHECK(pq.f0({g("i")}, {g("1")}) == g("2"));
}

TEST_CASE("T membership")
{
    const auto pq = gaussian_pq_space();
    CHECK_NOTHROW(t_make(pq, {g("1")}, g("i")));
    CHECK_THROWS_AS(t_make(pq, {g("1")}, g("0")), NotInT);
    CHECK_NOTHROW(t_make(pq, {g("1")}, g("3+i")));
}

TEST_CASE("T multiplication and inverse")
{
    const auto pq = gaussian_pq_space();
    const TElement x = t_make(pq, {g("1")}, g("i"));
    const TElement y = t_make(pq, {g("i")}, g("i"));
    const TElement xy = t_mul(pq, x, y);
    CHECK(xy.w() == L0Vector{g("1+i")});
    CHECK(xy.t() == g("2+2*i"));
    const TElement xi = t_inv(pq, x);
    CHECK(xi.w() == L0Vector{g("-1")});
    CHECK(xi.t() == g("i"));
    CHECK(t_mul(pq, x, xi) == t_identity(pq));
}

TEST_CASE("involutory set checks")
{
    Sampler rng(1);
    const auto good = verify_involutory_set(InvolutorySet::rational_center(), FieldKind::Quaternion,
                                            Involution::QuaternionConjugation, rng, 300, {});
    CHECK(all_passed(good));
    const auto bad = verify_involutory_set(InvolutorySet::zero_set(), FieldKind::Gaussian,
                                           Involution::GaussianConjugation, rng, 50, {});
    CHECK_FALSE(all_passed(bad));
    CHECK(bad.front().verdict == Verdict::Fail);
    CHECK(bad.front().witness == "1");
}

TEST_CASE("pseudo-quadratic and T-group laws on samples")
{
    for (const auto& pq : {gaussian_pq_space(), quaternion_pq_space()}) {
        Sampler rng(17);
        CHECK(all_passed(verify_pq_space(pq, rng, 300, {})));
        CHECK(all_passed(verify_t_group(pq, rng, 300, {})));
    }
}

TEST_CASE("a non-anisotropic delta is caught")
{
    // δ = 1 makes q_0 rational valued.
    const PseudoQuadraticSpace pq(FieldKind::Gaussian, Involution::GaussianConjugation,
                                  InvolutorySet::rational_center(), 1, g("1"));
    Sampler rng(2);
    const auto checks = verify_pq_space(pq, rng, 50, {});
    bool aniso_failed = false;
    for (const auto& c : checks) {
        if (c.check == "pq.q0_anisotropic") aniso_failed = c.verdict == Verdict::Fail;
    }
    CHECK(aniso_failed);
}

TEST_CASE("incompatible involution is refused")
{
    CHECK_THROWS_AS(PseudoQuadraticSpace(FieldKind::Quaternion, Involution::Identity,
                                         InvolutorySet::rational_center(), 1,
                                         Scalar::unit(FieldKind::Quaternion, 'i')),
                    AlgebraError);
}

TEST_CASE("field axioms")
{
    Sampler rng(12);
    const std::pair<FieldKind, Involution> cases[] = {
        {FieldKind::Rational, Involution::Identity},
        {FieldKind::Gaussian, Involution::Identity},
        {FieldKind::Gaussian, Involution::GaussianConjugation},
        {FieldKind::Quaternion, Involution::QuaternionConjugation},
    };
    for (const auto& [kind, sigma] : cases) {
        for (const auto& c : verify_field(kind, sigma, rng, 300, {})) {
            CHECK_MESSAGE(c.passed(), c.check << " " << c.witness.value_or(""));
        }
    }
    CHECK_THROWS_AS(verify_field(FieldKind::Quaternion, Involution::Identity, rng, 10, {}), AlgebraError);
}
