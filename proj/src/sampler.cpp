#include "polarepi/sampler.hpp"

namespace polarepi {

Rational Sampler::rational(const ScalarShape& shape)
{
    if (shape.height < 1) throw AlgebraError("height bound must be at least 1");
    Rational out(uniform(-shape.height, shape.height), uniform(1, shape.height));
    out.canonicalize();
    if (sgn(out) == 0) return out;
    long e = uniform(shape.min_power, shape.max_power);
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), shape.prime, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) {
        out *= pe;
    } else {
        out /= pe;
    }
    return out;
}

Scalar Sampler::scalar(FieldKind kind, const ScalarShape& shape)
{
    Scalar probe(kind);
    Rational c[4] = {0, 0, 0, 0};
    for (std::size_t idx = 0; idx < probe.components(); ++idx) c[idx] = rational(shape);
    return Scalar(kind, c[0], c[1], c[2], c[3]);
}

Scalar Sampler::nonzero_scalar(FieldKind kind, const ScalarShape& shape)
{
    for (;;) {
        Scalar s = scalar(kind, shape);
        if (!s.is_zero()) return s;
    }
}

}  // namespace polarepi
