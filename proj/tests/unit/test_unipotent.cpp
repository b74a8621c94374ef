#include <doctest.h>

#include "polarepi/unipotent.hpp"

using namespace polarepi;

namespace {

PolarSpace gaussian(int l) { return PolarSpace(gaussian_pq_space(), l); }
PolarSpace quaternion(int l) { return PolarSpace(quaternion_pq_space(), l); }

Scalar qs(const char* text) { return parse_scalar(text, FieldKind::Quaternion); }

const CheckResult& find(const CheckList& checks, const std::string& name)
{
    for (const auto& c : checks) {
        if (c.check == name) return c;
    }
    FAIL("missing check " << name);
    return checks.front();
}

}  // namespace

TEST_CASE("A2 collection in the opposite field")
{
    const auto Q = FieldKind::Quaternion;
    const Scalar z = Scalar::zero(Q);
    const A2Word x1{qs("i"), z, z};
    const A2Word x3{z, z, qs("j")};
    // i ∗ j = j·i = −k.
    CHECK(a2_commutator(x1, x3) == A2Word{z, qs("-k"), z});
    CHECK(a2_mul(x1, x3) == A2Word{qs("i"), z, qs("j")});
    // x_3(j) x_1(i) = x_1(i) x_2(−i∗j) x_3(j).
    CHECK(a2_mul(x3, x1) == A2Word{qs("i"), qs("k"), qs("j")});
    const A2Word w{qs("1+i"), qs("j"), qs("k")};
    CHECK(a2_mul(w, a2_inv(w)) == a2_identity(Q));
    CHECK(a2_mul(a2_identity(Q), w) == w);
}

TEST_CASE("BC2 collection")
{
    const auto pq = gaussian_pq_space();
    const auto g = [](const char* s) { return parse_scalar(s, FieldKind::Gaussian); };
    const TElement wt = t_make(pq, {g("1")}, g("i"));
    const TElement vr = t_make(pq, {g("i")}, g("i"));
    CHECK(bc2_mul(pq, bc2_letter1(pq, wt), bc2_letter1(pq, vr)) == bc2_letter1(pq, t_mul(pq, wt, vr)));

    // x_4(k) x_1(w,t) in normal form; re-collecting the pieces gives it back.
    const Scalar k = g("2-i");
    const BC2Word lhs = bc2_mul(pq, bc2_letter4(pq, k), bc2_letter1(pq, wt));
    CHECK(lhs.t1 == wt);
    CHECK(lhs.k4 == k);
    CHECK(lhs.k2 == wt.t() * k);
    const PolarSpace space(pq, 2);
    const XVector x = space.parse_vector("(2|1,i,-3,1/2)");
    CHECK(act_bc2_word(space, lhs, x) == act(space, y_long(space, wt), act(space, y_short(space, 1, k), x)));
    const BC2Word back = bc2_mul(pq, bc2_inv(pq, bc2_letter1(pq, wt)), bc2_mul(pq, lhs, bc2_inv(pq, bc2_letter4(pq, k))));
    CHECK(bc2_mul(pq, bc2_letter1(pq, wt), bc2_mul(pq, back, bc2_letter4(pq, k))) == lhs);

    // [x_1(w,t), x_4(k)⁻¹] = x_2(tk) x_3(wk, k^σ t k)
    const BC2Word c = bc2_commutator(pq, bc2_letter1(pq, wt), bc2_inv(pq, bc2_letter4(pq, k)));
    CHECK(c.t1 == t_identity(pq));
    CHECK(c.k2 == wt.t() * k);
    CHECK(c.t3 == t_make(pq, l0_mul(wt.w(), k), pq.sigma(k) * wt.t() * k));
    CHECK(c.k4.is_zero());
}

TEST_CASE("generator actions")
{
    const auto s = gaussian(3);
    const auto g = [](const char* t) { return parse_scalar(t, FieldKind::Gaussian); };
    const auto yl = y_long(s, t_make(s.pq(), {g("1")}, g("i")));
    CHECK(act(s, yl, s.parse_vector("(0|0,1,0,0,0,0)")) == s.parse_vector("(0|0,1,0,0,0,0)"));
    CHECK(act(s, yl, s.parse_vector("(0|1,0,0,0,0,0)")) == s.parse_vector("(1|1,-i,0,0,0,0)"));
    const auto y2 = y_short(s, 2, g("3"));
    CHECK(act(s, y2, s.parse_vector("(0|0,0,1,0,0,0)")) == s.parse_vector("(0|3,0,1,0,0,0)"));
    const auto y1 = y_short(s, 1, g("i"));
    CHECK(act(s, y1, s.parse_vector("(0|0,0,0,1,0,0)")) == s.parse_vector("(0|0,0,0,1,0,i)"));
}

TEST_CASE("literals")
{
    const auto s = gaussian(2);
    const auto yl = parse_generator(s, "y2((1), 3+i)");
    CHECK(yl.is_long());
    CHECK(yl.to_literal() == "y2((1),3+i)");
    const auto y1 = parse_generator(s, "y1(1/2)");
    CHECK(y1.to_literal() == "y1(1/2)");
    CHECK_THROWS_AS(parse_generator(s, "y2((1),0)"), NotInT);
    CHECK_THROWS_AS(parse_generator(s, "y3(1)"), AlgebraError);
    CHECK(parse_zeta(s, "zeta2(1+i)").to_literal() == "zeta2(1+i)");
    CHECK_THROWS_AS(parse_zeta(s, "zeta1(0)"), AlgebraError);
}

TEST_CASE("zeta conjugation")
{
    const auto s = quaternion(3);
    const auto z = zeta(s, 1, qs("1+j"));
    // j = l − i = 2: y_2(k) ↦ y_2(mk)
    CHECK(zeta_conjugate(s, z, y_short(s, 2, qs("i"))).k() == qs("1+j") * qs("i"));
    // j = l − i + 1 = 3 is y_l: unsupported.
    CHECK_THROWS_AS(zeta_conjugate(s, z, y_long(s, t_identity(s.pq()))), UnsupportedIndex);
    const auto z2 = zeta(s, 2, qs("k"));
    CHECK(zeta_conjugate(s, z2, y_short(s, 2, qs("i"))).k() == qs("i") * qs("k").inverse());
    CHECK(zeta_conjugate(s, z2, y_short(s, 1, qs("i"))).k() == qs("k") * qs("i"));
    const auto z3 = zeta(s, 3, qs("j"));
    CHECK(zeta_conjugate(s, z3, y_short(s, 2, qs("i"))).k() == qs("i"));
    CHECK(zeta_conjugate(s, zeta(s, 1, qs("1")), y_short(s, 2, qs("i"))).k() == qs("i"));
}

TEST_CASE("relation and action checks pass on both instances")
{
    for (int l : {2, 3, 4}) {
        for (const auto& s : {gaussian(l), quaternion(l)}) {
            Sampler rng(100 + l);
            const auto rel = verify_relations(s, rng, 60, {});
            for (const auto& c : rel) CHECK_MESSAGE(c.passed(), c.check << " " << c.witness.value_or(""));
            const auto acts = verify_actions(s, rng, 60, {});
            for (const auto& c : acts) CHECK_MESSAGE(c.passed(), c.check << " " << c.witness.value_or(""));
        }
    }
}

TEST_CASE("corrupted relations are caught")
{
    const auto s = quaternion(3);
    Sampler rng(5);
    const auto a2 = verify_relations(s, rng, 20, {}, Corruption::FlipA2Sign);
    CHECK(find(a2, "a2.commutator_formal").verdict == Verdict::Fail);
    CHECK(find(a2, "a2.commutator_action").verdict == Verdict::Fail);
    CHECK(find(a2, "bc2.relations_formal").passed());
    const auto bc2 = verify_relations(s, rng, 20, {}, Corruption::FlipBC2Sign);
    CHECK(find(bc2, "bc2.relations_formal").verdict == Verdict::Fail);
    CHECK(find(bc2, "bc2.relations_action").verdict == Verdict::Fail);
    CHECK(find(bc2, "a2.commutator_formal").passed());
}
