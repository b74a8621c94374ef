#include "polarepi/forms.hpp"

namespace polarepi {

CheckList verify_field(FieldKind kind, Involution sigma, Sampler& rng, long samples, const ScalarShape& shape)
{
    if (!compatible(sigma, kind)) throw AlgebraError("involution does not fit the field");
    CheckBuilder add("field.additive_group");
    CheckBuilder mul("field.multiplicative_group");
    CheckBuilder dist("field.distributive");
    CheckBuilder comm("field.commutativity");
    CheckBuilder anti("sigma.anti_automorphism");
    CheckBuilder invol("sigma.involution");
    CheckBuilder norm("norm.multiplicative");

    const Scalar zero = Scalar::zero(kind);
    const Scalar one = Scalar::one(kind);
    bool saw_noncommuting = false;
    for (long n = 0; n < samples; ++n) {
        const Scalar a = rng.scalar(kind, shape);
        const Scalar b = rng.scalar(kind, shape);
        const Scalar c = rng.scalar(kind, shape);
        const std::string wit = a.to_literal() + ";" + b.to_literal() + ";" + c.to_literal();

        add.sample();
        if ((a + b) + c != a + (b + c) || a + b != b + a || a + zero != a || a + (-a) != zero) add.fail(wit);

        mul.sample();
        bool ok = (a * b) * c == a * (b * c) && a * one == a && one * a == a;
        if (!a.is_zero()) ok = ok && a * a.inverse() == one && a.inverse() * a == one;
        if (!ok) mul.fail(wit);

        dist.sample();
        if (a * (b + c) != a * b + a * c || (a + b) * c != a * c + b * c) dist.fail(wit);

        comm.sample();
        if (a * b != b * a) {
            saw_noncommuting = true;
            if (kind != FieldKind::Quaternion) comm.fail(wit);
        }

        anti.sample();
        const auto s = [&](const Scalar& x) { return apply_sigma(x, sigma); };
        if (s(a * b) != s(b) * s(a) || s(a + b) != s(a) + s(b) || s(one) != one) anti.fail(wit);

        invol.sample();
        if (s(s(a)) != a) invol.fail(a.to_literal());

        norm.sample();
        if ((a * b).norm() != a.norm() * b.norm()) norm.fail(wit);
    }
    if (kind == FieldKind::Quaternion && !saw_noncommuting && samples > 10) {
        comm.fail("-", "no noncommuting pair sampled in the quaternions");
    }
    return {std::move(add).done(),  std::move(mul).done(),   std::move(dist).done(), std::move(comm).done(),
            std::move(anti).done(), std::move(invol).done(), std::move(norm).done()};
}

}  // namespace polarepi
