#include <doctest.h>

#include <array>

#include "polarepi/sampler.hpp"
#include "polarepi/scalar.hpp"

using namespace polarepi;

namespace {

using Mat4 = std::array<std::array<Rational, 4>, 4>;

// Left-regular representation of a + bi + cj + dk on the basis (1, i, j, k).
Mat4 left_matrix(const Scalar& x)
{
    const Rational a = x[0], b = x[1], c = x[2], d = x[3];
    return {{{a, -b, -c, -d}, {b, a, -d, c}, {c, d, a, -b}, {d, -c, b, a}}};
}

Scalar oracle_mul(const Scalar& x, const Scalar& y)
{
    const Mat4 m = left_matrix(x);
    std::array<Rational, 4> out{};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) out[r] += m[r][c] * y[c];
    }
    return Scalar(x.kind(), out[0], out[1], out[2], out[3]);
}

Scalar q(const char* text) { return parse_scalar(text, FieldKind::Quaternion); }
Scalar g(const char* text) { return parse_scalar(text, FieldKind::Gaussian); }
Scalar r(const char* text) { return parse_scalar(text, FieldKind::Rational); }

}  // namespace

TEST_CASE("rational arithmetic")
{
    CHECK(r("1/2") + r("1/3") == r("5/6"));
    CHECK(r("2/4").to_literal() == "1/2");
    CHECK(r("3").inverse() == r("1/3"));
    CHECK_THROWS_AS(r("0").inverse(), DivisionByZero);
}

TEST_CASE("gaussian arithmetic")
{
    CHECK(g("1+i").inverse() == g("1/2-1/2*i"));
    CHECK(apply_sigma(g("3+2*i"), Involution::GaussianConjugation) == g("3-2*i"));
    CHECK(g("i") * g("i") == g("-1"));
    CHECK(g("1+i").norm() == 2);
}

TEST_CASE("quaternion arithmetic is noncommutative")
{
    CHECK(q("i") * q("j") == q("k"));
    CHECK(q("j") * q("i") == q("-k"));
    CHECK(q("k") * q("i") == q("j"));
    CHECK(OppositeView::mul(q("i"), q("j")) == q("-k"));
}

TEST_CASE("literal round trip")
{
    Sampler rng(11);
    for (auto kind : {FieldKind::Rational, FieldKind::Gaussian, FieldKind::Quaternion}) {
        for (int n = 0; n < 200; ++n) {
            const Scalar x = rng.scalar(kind, {});
            CHECK(parse_scalar(x.to_literal(), kind) == x);
        }
    }
    CHECK(q("0").to_literal() == "0");
    CHECK(q("-i").to_literal() == "-i");
    CHECK(q("1/2-3*i+k").to_literal() == "1/2-3*i+k");
    CHECK_THROWS_AS(parse_scalar("j", FieldKind::Gaussian), AlgebraError);
    CHECK_THROWS_AS(parse_scalar("1+", FieldKind::Rational), AlgebraError);
}

TEST_CASE("mixed fields are refused")
{
    CHECK_THROWS_AS(g("i") + q("i"), FieldMismatch);
    CHECK_THROWS_AS(apply_sigma(r("1"), Involution::QuaternionConjugation), AlgebraError);
    CHECK_FALSE(compatible(Involution::Identity, FieldKind::Quaternion));
    CHECK(compatible(Involution::Identity, FieldKind::Gaussian));
}

TEST_CASE("quaternion product agrees with the matrix oracle")
{
    Sampler rng(3);
    for (int n = 0; n < 500; ++n) {
        const Scalar x = rng.scalar(FieldKind::Quaternion, {});
        const Scalar y = rng.scalar(FieldKind::Quaternion, {});
        CHECK(x * y == oracle_mul(x, y));
    }
}

TEST_CASE("field axioms on samples")
{
    Sampler rng(5);
    for (auto kind : {FieldKind::Rational, FieldKind::Gaussian, FieldKind::Quaternion}) {
        for (int n = 0; n < 300; ++n) {
            const Scalar a = rng.scalar(kind, {});
            const Scalar b = rng.scalar(kind, {});
            const Scalar c = rng.nonzero_scalar(kind, {});
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) * c == a * c + b * c);
            CHECK(c * c.inverse() == Scalar::one(kind));
            CHECK(c.inverse() * c == Scalar::one(kind));
            CHECK((a * b).norm() == a.norm() * b.norm());
        }
    }
}

TEST_CASE("conjugation is an involutive anti-automorphism")
{
    Sampler rng(9);
    for (int n = 0; n < 300; ++n) {
        const Scalar a = rng.scalar(FieldKind::Quaternion, {});
        const Scalar b = rng.scalar(FieldKind::Quaternion, {});
        const auto s = [](const Scalar& x) { return apply_sigma(x, Involution::QuaternionConjugation); };
        CHECK(s(a * b) == s(b) * s(a));
        CHECK(s(s(a)) == a);
        CHECK((a + s(a)).is_rational());
    }
}

TEST_CASE("p-adic valuation")
{
    CHECK(padic_valuation(Rational(12), 2) == 2);
    CHECK(padic_valuation(Rational(3, 8), 2) == -3);
    CHECK(padic_valuation(Rational(10, 9), 3) == -2);
    CHECK_THROWS(padic_valuation(Rational(0), 3));
}
