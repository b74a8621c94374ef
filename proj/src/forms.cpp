#include "polarepi/forms.hpp"

#include <sstream>

namespace polarepi {

L0Vector l0_zero(FieldKind kind, std::size_t dim)
{
    return L0Vector(dim, Scalar::zero(kind));
}

L0Vector l0_add(const L0Vector& a, const L0Vector& b)
{
    if (a.size() != b.size()) throw AlgebraError("L0 dimension mismatch");
    L0Vector out = a;
    for (std::size_t idx = 0; idx < a.size(); ++idx) out[idx] += b[idx];
    return out;
}

L0Vector l0_sub(const L0Vector& a, const L0Vector& b)
{
    if (a.size() != b.size()) throw AlgebraError("L0 dimension mismatch");
    L0Vector out = a;
    for (std::size_t idx = 0; idx < a.size(); ++idx) out[idx] -= b[idx];
    return out;
}

L0Vector l0_neg(const L0Vector& a)
{
    L0Vector out = a;
    for (auto& x : out) x = -x;
    return out;
}

L0Vector l0_mul(const L0Vector& v, const Scalar& t)
{
    L0Vector out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x * t);
    return out;
}

bool l0_is_zero(const L0Vector& v)
{
    for (const auto& x : v) {
        if (!x.is_zero()) return false;
    }
    return true;
}

std::string l0_literal(const L0Vector& v)
{
    std::string out;
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
        if (idx) out += ',';
        out += v[idx].to_literal();
    }
    return out;
}

InvolutorySet::InvolutorySet(std::string tag, Membership contains, Splitter split, Membership in_complement)
    : tag_(std::move(tag)), contains_(std::move(contains)), split_(std::move(split)),
      in_complement_(std::move(in_complement))
{
}

InvolutorySet InvolutorySet::rational_center()
{
    return InvolutorySet(
        "rational-center", [](const Scalar& x) { return x.is_rational(); },
        [](const Scalar& x) { return K0Split{x.real_part(), x.imaginary_part()}; },
        [](const Scalar& c) { return sgn(c.re()) == 0; });
}

InvolutorySet InvolutorySet::zero_set()
{
    return InvolutorySet(
        "zero", [](const Scalar& x) { return x.is_zero(); },
        [](const Scalar& x) { return K0Split{Scalar::zero(x.kind()), x}; },
        [](const Scalar&) { return true; });
}

CheckList verify_involutory_set(const InvolutorySet& k0, FieldKind kind, Involution sigma, Sampler& rng,
                                long samples, const ScalarShape& shape)
{
    CheckBuilder one("k0.contains_one");
    one.sample();
    if (!k0.contains(Scalar::one(kind))) one.fail("1", "1 is not in K0");

    CheckBuilder trace("k0.contains_traces");
    CheckBuilder fixed("k0.sigma_fixed");
    CheckBuilder stable("k0.conjugation_stable");
    CheckBuilder split("k0.decompose_reproduces");
    CheckBuilder additive("k0.decompose_additive");
    for (long n = 0; n < samples; ++n) {
        const Scalar a = rng.scalar(kind, shape);
        const Scalar b = rng.scalar(kind, shape);
        const Scalar t = rng.scalar(kind, shape);

        trace.sample();
        const Scalar tr = a + apply_sigma(a, sigma);
        if (!k0.contains(tr)) trace.fail(a.to_literal(), "a + a^sigma = " + tr.to_literal() + " not in K0");

        const K0Split sa = k0.decompose(a);
        split.sample();
        if (sa.k + sa.c != a || !k0.contains(sa.k) || !k0.in_complement(sa.c)) {
            split.fail(a.to_literal(), "decomposition does not reproduce the input");
        }

        fixed.sample();
        if (k0.contains(sa.k) && apply_sigma(sa.k, sigma) != sa.k) {
            fixed.fail(sa.k.to_literal(), "K0 element not fixed by sigma");
        }

        stable.sample();
        const Scalar conj = apply_sigma(t, sigma) * sa.k * t;
        if (!k0.contains(conj)) stable.fail(t.to_literal() + ";" + sa.k.to_literal(), "t^sigma k t not in K0");

        additive.sample();
        if (k0.decompose(a + b).k != sa.k + k0.decompose(b).k) {
            additive.fail(a.to_literal() + ";" + b.to_literal(), "decompose is not additive");
        }
    }
    return {std::move(one).done(),  std::move(trace).done(), std::move(fixed).done(),
            std::move(stable).done(), std::move(split).done(), std::move(additive).done()};
}

PseudoQuadraticSpace::PseudoQuadraticSpace(FieldKind kind, Involution sigma, InvolutorySet k0, std::size_t dim_l0,
                                           Scalar delta)
    : kind_(kind), sigma_(sigma), k0_(std::move(k0)), dim_l0_(dim_l0), delta_(std::move(delta))
{
    if (!compatible(sigma_, kind_)) {
        throw AlgebraError("involution " + std::string(to_string(sigma_)) + " incompatible with field " +
                           std::string(to_string(kind_)));
    }
    if (delta_.kind() != kind_) throw FieldMismatch(delta_.kind(), kind_);
    form_coeff_ = delta_ - apply_sigma(delta_, sigma_);
}

PseudoQuadraticSpace gaussian_pq_space()
{
    return PseudoQuadraticSpace(FieldKind::Gaussian, Involution::GaussianConjugation, InvolutorySet::rational_center(),
                                1, Scalar::unit(FieldKind::Gaussian, 'i'));
}

PseudoQuadraticSpace quaternion_pq_space()
{
    return PseudoQuadraticSpace(FieldKind::Quaternion, Involution::QuaternionConjugation,
                                InvolutorySet::rational_center(), 1, Scalar::unit(FieldKind::Quaternion, 'i'));
}

Scalar PseudoQuadraticSpace::q0(const L0Vector& v) const
{
    if (v.size() != dim_l0_) throw AlgebraError("L0 dimension mismatch");
    Scalar out = zero();
    for (const auto& x : v) out += sigma(x) * delta_ * x;
    return out;
}

Scalar PseudoQuadraticSpace::f0(const L0Vector& v, const L0Vector& w) const
{
    if (v.size() != dim_l0_ || w.size() != dim_l0_) throw AlgebraError("L0 dimension mismatch");
    Scalar out = zero();
    for (std::size_t idx = 0; idx < dim_l0_; ++idx) out += sigma(v[idx]) * form_coeff_ * w[idx];
    return out;
}

Scalar PseudoQuadraticSpace::random_k0(Sampler& rng, const ScalarShape& shape) const
{
    return k0_.decompose(rng.scalar(kind_, shape)).k;
}

L0Vector PseudoQuadraticSpace::random_l0(Sampler& rng, const ScalarShape& shape) const
{
    L0Vector v;
    v.reserve(dim_l0_);
    for (std::size_t idx = 0; idx < dim_l0_; ++idx) v.push_back(rng.scalar(kind_, shape));
    return v;
}

CheckList verify_pq_space(const PseudoQuadraticSpace& space, Sampler& rng, long samples, const ScalarShape& shape)
{
    CheckBuilder skew("pq.f0_skew_hermitian");
    CheckBuilder sesq("pq.f0_sesquilinear");
    CheckBuilder add("pq.q0_additive_mod_k0");
    CheckBuilder homog("pq.q0_homogeneous_mod_k0");
    CheckBuilder aniso("pq.q0_anisotropic");
    const auto& k0 = space.k0();
    for (long n = 0; n < samples; ++n) {
        const L0Vector a = space.random_l0(rng, shape);
        const L0Vector b = space.random_l0(rng, shape);
        const L0Vector c = space.random_l0(rng, shape);
        const Scalar t = rng.scalar(space.kind(), shape);
        const Scalar u = rng.scalar(space.kind(), shape);
        const std::string wit = "(" + l0_literal(a) + ");(" + l0_literal(b) + ")";

        skew.sample();
        if (space.sigma(space.f0(a, b)) != -space.f0(b, a)) skew.fail(wit);

        sesq.sample();
        const bool scal = space.f0(l0_mul(a, t), l0_mul(b, u)) == space.sigma(t) * space.f0(a, b) * u;
        const bool lin = space.f0(a, l0_add(b, c)) == space.f0(a, b) + space.f0(a, c);
        if (!scal || !lin) sesq.fail(wit + ";" + t.to_literal() + ";" + u.to_literal());

        add.sample();
        const Scalar defect = space.q0(l0_add(a, b)) - space.q0(a) - space.q0(b) - space.f0(a, b);
        if (!k0.contains(defect)) add.fail(wit, "defect " + defect.to_literal());

        homog.sample();
        const Scalar hd = space.q0(l0_mul(a, t)) - space.sigma(t) * space.q0(a) * t;
        if (!k0.contains(hd)) homog.fail(wit + ";" + t.to_literal(), "defect " + hd.to_literal());

        if (!l0_is_zero(a)) {
            aniso.sample();
            if (k0.contains(space.q0(a))) aniso.fail("(" + l0_literal(a) + ")", "q0 lands in K0");
        }
    }
    return {std::move(skew).done(), std::move(sesq).done(), std::move(add).done(), std::move(homog).done(),
            std::move(aniso).done()};
}

std::string TElement::to_literal() const
{
    return "((" + l0_literal(w_) + ")," + t_.to_literal() + ")";
}

TElement t_make(const PseudoQuadraticSpace& space, L0Vector w, Scalar t)
{
    if (w.size() != space.dim_l0()) throw AlgebraError("L0 dimension mismatch");
    const Scalar residual = space.q0(w) - t;
    if (!space.k0().contains(residual)) throw NotInT(residual);
    return TElement(std::move(w), std::move(t));
}

TElement t_identity(const PseudoQuadraticSpace& space)
{
    return t_make(space, space.l0_zero(), space.zero());
}

TElement t_mul(const PseudoQuadraticSpace& space, const TElement& x, const TElement& y)
{
    return TElement(l0_add(x.w_, y.w_), x.t_ + y.t_ + space.f0(y.w_, x.w_));
}

TElement t_inv(const PseudoQuadraticSpace& space, const TElement& x)
{
    return TElement(l0_neg(x.w_), -space.sigma(x.t_));
}

TElement t_random(const PseudoQuadraticSpace& space, Sampler& rng, const ScalarShape& shape)
{
    L0Vector w = space.random_l0(rng, shape);
    Scalar t = space.q0(w) - space.random_k0(rng, shape);
    return t_make(space, std::move(w), std::move(t));
}

CheckList verify_t_group(const PseudoQuadraticSpace& space, Sampler& rng, long samples, const ScalarShape& shape)
{
    CheckBuilder closure("t.closure");
    CheckBuilder assoc("t.associativity");
    CheckBuilder ident("t.identity");
    CheckBuilder inv("t.inverse");
    CheckBuilder trace("t.f0_ww_equals_t_minus_tsigma");
    const TElement e = t_identity(space);
    auto member = [&](const TElement& x) { return space.k0().contains(space.q0(x.w()) - x.t()); };
    for (long n = 0; n < samples; ++n) {
        const TElement x = t_random(space, rng, shape);
        const TElement y = t_random(space, rng, shape);
        const TElement z = t_random(space, rng, shape);
        const std::string wit = x.to_literal() + ";" + y.to_literal() + ";" + z.to_literal();

        closure.sample();
        const TElement xy = t_mul(space, x, y);
        if (!member(xy) || !member(t_inv(space, x))) closure.fail(wit);

        assoc.sample();
        if (t_mul(space, xy, z) != t_mul(space, x, t_mul(space, y, z))) assoc.fail(wit);

        ident.sample();
        if (t_mul(space, e, x) != x || t_mul(space, x, e) != x) ident.fail(x.to_literal());

        inv.sample();
        const TElement xi = t_inv(space, x);
        if (t_mul(space, x, xi) != e || t_mul(space, xi, x) != e || t_inv(space, xi) != x) {
            inv.fail(x.to_literal());
        }

        trace.sample();
        for (const TElement* p : {&x, &xy}) {
            if (space.f0(p->w(), p->w()) != p->t() - space.sigma(p->t())) trace.fail(p->to_literal());
        }
    }
    return {std::move(closure).done(), std::move(assoc).done(), std::move(ident).done(), std::move(inv).done(),
            std::move(trace).done()};
}

}  // namespace polarepi
