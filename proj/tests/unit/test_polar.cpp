#include <doctest.h>

#include "polarepi/polar.hpp"

using namespace polarepi;

namespace {

PolarSpace gaussian(int l) { return PolarSpace(gaussian_pq_space(), l); }
PolarSpace quaternion(int l) { return PolarSpace(quaternion_pq_space(), l); }

// f evaluated term by term from the coordinate formula.
Scalar f_oracle(const PolarSpace& s, const XVector& x, const XVector& y)
{
    const Scalar delta = s.pq().delta();
    Scalar out = Scalar::zero(s.kind());
    for (std::size_t i = 0; i < x.v.size(); ++i) {
        out += s.sigma(x.v[i]) * delta * y.v[i] - s.sigma(x.v[i]) * s.sigma(delta) * y.v[i];
    }
    for (int i = 1; i <= s.rank(); ++i) {
        const auto odd = static_cast<std::size_t>(2 * i - 1);
        out += s.sigma(x.coord(odd)) * y.coord(odd + 1);
        out += -(s.sigma(x.coord(odd + 1)) * y.coord(odd));
    }
    return out;
}

}  // namespace

TEST_CASE("q on X")
{
    const auto s = gaussian(2);
    CHECK(s.q(s.parse_vector("(0|1,0,0,0)")).is_zero());
    CHECK(s.q(s.parse_vector("(0|1,1,0,0)")) == Scalar::one(FieldKind::Gaussian));
    CHECK(s.q(s.parse_vector("(1|0,0,0,0)")) == Scalar::unit(FieldKind::Gaussian, 'i'));
}

TEST_CASE("f on X")
{
    const auto s = gaussian(2);
    CHECK(s.f(s.basis(1), s.basis(2)) == Scalar::one(FieldKind::Gaussian));
    CHECK(s.f(s.basis(2), s.basis(1)) == Scalar::from_int(FieldKind::Gaussian, -1));
    Sampler rng(4);
    for (const auto& sp : {gaussian(2), quaternion(3)}) {
        for (int n = 0; n < 200; ++n) {
            const XVector x = sp.random_vector(rng, {});
            const XVector y = sp.random_vector(rng, {});
            const XVector z = sp.random_vector(rng, {});
            const Scalar t = rng.scalar(sp.kind(), {});
            CHECK(sp.f(x, y) == f_oracle(sp, x, y));
            CHECK(sp.sigma(sp.f(x, y)) == -sp.f(y, x));
            CHECK(sp.f(x, x_add(y, z)) == sp.f(x, y) + sp.f(x, z));
            CHECK(sp.f(x_mul(x, t), y) == sp.sigma(t) * sp.f(x, y));
            CHECK(sp.in_k0(sp.q(x_add(x, y)) - sp.q(x) - sp.q(y) - sp.f(x, y)));
        }
    }
}

TEST_CASE("vector literals")
{
    const auto s = quaternion(2);
    const XVector x = s.parse_vector("( 1/2+j | 1, -k, 0, 3/4 )");
    CHECK(x.to_literal() == "(1/2+j|1,-k,0,3/4)");
    CHECK(s.parse_vector(x.to_literal()) == x);
    CHECK_THROWS_AS(s.parse_vector("(0|1,0,0)"), AlgebraError);
    CHECK_THROWS_AS(s.parse_vector("0|1,0,0,0"), AlgebraError);
}

TEST_CASE("points and collinearity")
{
    const auto s = gaussian(2);
    const auto p1 = ProjectivePoint::make(s, s.basis(1));
    const auto p2 = ProjectivePoint::make(s, s.basis(2));
    const auto p3 = ProjectivePoint::make(s, s.basis(3));
    CHECK(collinear(s, p1, p3));
    CHECK_FALSE(collinear(s, p1, p2));
    const auto a = ProjectivePoint::make(s, s.parse_vector("(0|3,1,0,0)"));
    CHECK_FALSE(collinear(s, a, p1));
    CHECK(s.f(a.rep(), p1.rep()) == Scalar::from_int(FieldKind::Gaussian, -1));
    CHECK_THROWS_AS(ProjectivePoint::make(s, s.parse_vector("(1|0,0,0,0)")), NotSingular);
    CHECK_THROWS_AS(ProjectivePoint::make(s, s.zero()), AlgebraError);
}

TEST_CASE("point representative is scale invariant")
{
    Sampler rng(8);
    const auto s = quaternion(2);
    for (int n = 0; n < 100; ++n) {
        const auto p = random_point(s, rng, {});
        const Scalar t = rng.nonzero_scalar(s.kind(), {});
        CHECK(ProjectivePoint::make(s, x_mul(p.rep(), t)) == p);
    }
}

TEST_CASE("echelonize")
{
    const auto s = gaussian(2);
    const auto e1 = s.basis(1);
    CHECK(echelonize(s, {e1}).basis() == std::vector<XVector>{e1});
    const Scalar t = parse_scalar("2-i", FieldKind::Gaussian);
    CHECK(echelonize(s, {e1, x_mul(e1, t)}).rank() == 1);
    CHECK_THROWS_AS(echelonize(s, {s.basis(1), s.basis(2)}), NotSingular);
    try {
        echelonize(s, {s.basis(1), s.basis(2)});
    } catch (const NotSingular& err) {
        const XVector w = s.parse_vector(err.witness());
        CHECK_FALSE(s.in_k0(s.q(w)));
    }
}

TEST_CASE("echelonize is canonical, idempotent and scale invariant")
{
    Sampler rng(21);
    for (const auto& s : {gaussian(3), quaternion(3)}) {
        for (int n = 0; n < 30; ++n) {
            const XVector x = random_collinear_vector(s, {}, rng, {});
            const XVector y = random_collinear_vector(s, {x}, rng, {});
            const Subspace sub = echelonize(s, {x, y});
            CHECK(sub.rank() == 2);
            CHECK(echelonize(s, sub.basis()) == sub);
            const Scalar a = rng.nonzero_scalar(s.kind(), {});
            const Scalar b = rng.nonzero_scalar(s.kind(), {});
            CHECK(echelonize(s, {x_add(x_mul(y, a), x), x_mul(y, b)}) == sub);
        }
    }
}

TEST_CASE("perp filter")
{
    const auto s = gaussian(2);
    const Subspace sub = echelonize(s, {s.basis(1), s.basis(3)});
    const auto p = ProjectivePoint::make(s, s.basis(2));
    const Subspace res = perp_filter(s, sub, p);
    REQUIRE(res.rank() == 1);
    CHECK(res.basis().front() == s.basis(3));

    const auto p4 = ProjectivePoint::make(s, s.basis(3));
    CHECK_THROWS_AS(perp_filter(s, sub, p4), AlgebraError);
    const Subspace line = echelonize(s, {s.basis(1)});
    CHECK(perp_filter(s, line, ProjectivePoint::make(s, s.basis(4))) == line);
    CHECK(perp_filter(s, line, p).rank() == 0);
}

TEST_CASE("perp filter on samples")
{
    Sampler rng(13);
    const auto s = quaternion(3);
    for (int n = 0; n < 30; ++n) {
        const XVector x = random_collinear_vector(s, {}, rng, {});
        const XVector y = random_collinear_vector(s, {x}, rng, {});
        const Subspace sub = echelonize(s, {x, y});
        const auto p = random_point(s, rng, {});
        if (span_contains(s, sub.basis(), p.rep())) continue;
        const Subspace res = perp_filter(s, sub, p);
        CHECK((res.rank() == 1 || res.rank() == 2));
        for (const auto& b : res.basis()) {
            CHECK(s.f(p.rep(), b).is_zero());
            CHECK(span_contains(s, sub.basis(), b));
        }
    }
}

TEST_CASE("standard chamber")
{
    const auto s = gaussian(2);
    const auto chamber = standard_chamber(s);
    REQUIRE(chamber.size() == 2);
    CHECK(chamber[0].basis() == std::vector<XVector>{s.basis(4)});
    CHECK(chamber[1].basis() == std::vector<XVector>{s.basis(4), s.basis(2)});
    const auto c3 = standard_chamber(quaternion(3));
    CHECK(c3.size() == 3);
    for (std::size_t i = 1; i < c3.size(); ++i) {
        for (const auto& b : c3[i - 1].basis()) CHECK(span_contains(quaternion(3), c3[i].basis(), b));
    }
}

TEST_CASE("sampled singular planes are singular everywhere")
{
    Sampler rng(31);
    for (const auto& s : {gaussian(2), quaternion(2)}) {
        for (int n = 0; n < 40; ++n) {
            const XVector x = random_collinear_vector(s, {}, rng, {});
            const XVector y = random_collinear_vector(s, {x}, rng, {});
            for (int k = 0; k < 10; ++k) {
                const XVector z = x_add(x_mul(x, rng.scalar(s.kind(), {})), x_mul(y, rng.scalar(s.kind(), {})));
                CHECK(s.in_k0(s.q(z)));
            }
        }
    }
}

TEST_CASE("left linear solver")
{
    const auto Q = FieldKind::Quaternion;
    const Scalar i = Scalar::unit(Q, 'i');
    const Scalar j = Scalar::unit(Q, 'j');
    // i·u = j has the unique solution u = −k.
    const auto u = solve_left_linear(Q, {{i}}, {j}, nullptr);
    REQUIRE(u.has_value());
    CHECK((*u)[0] == -Scalar::unit(Q, 'k'));
    CHECK_FALSE(solve_left_linear(Q, {{i}, {i}}, {j, i}, nullptr).has_value());
}
