#include "polarepi/subring.hpp"

#include <functional>

namespace polarepi {

struct TotalSubring::Impl {
    enum class Hooks { None, Gaussian, Quaternion };

    std::string tag;
    FieldKind kind;
    unsigned long p;
    Rational step;
    Scalar uniformizer;
    std::optional<Scalar> extra_unit;  ///< a unit of R that the plain sampler rarely produces
    std::function<Rational(const Scalar&)> valuation;
    Hooks hooks = Hooks::None;
    std::vector<std::pair<Scalar, std::string>> table;
    std::function<int(int, int)> add;
    std::function<int(int, int)> mul;
};

namespace {

Integer ipow(unsigned long p, unsigned long e)
{
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), p, e);
    return out;
}

Rational rpow(unsigned long p, long e)
{
    const Integer base = ipow(p, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(1, base) : Rational(base);
}

long min_valuation(const Scalar& a, unsigned long p)
{
    bool any = false;
    long best = 0;
    for (std::size_t idx = 0; idx < a.components(); ++idx) {
        if (sgn(a[idx]) == 0) continue;
        const long v = padic_valuation(a[idx], p);
        if (!any || v < best) best = v;
        any = true;
    }
    if (!any) throw AlgebraError("valuation of zero");
    return best;
}

Integer ceil_rational(const Rational& r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

bool is_prime(unsigned long p)
{
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::string gaussian_label(unsigned long a, unsigned long b)
{
    std::string out;
    if (a != 0) out = std::to_string(a);
    if (b != 0) {
        if (!out.empty()) out += "+";
        out += b == 1 ? "i" : std::to_string(b) + "*i";
    }
    return out.empty() ? "0" : out;
}

}  // namespace

TotalSubring TotalSubring::inert_gaussian(unsigned long p)
{
    if (!is_prime(p) || p % 4 != 3) throw AlgebraError("inert Gaussian prime must satisfy p = 3 mod 4");
    auto impl = std::make_shared<Impl>();
    impl->tag = "inert-gaussian";
    impl->kind = FieldKind::Gaussian;
    impl->p = p;
    impl->step = 1;
    impl->uniformizer = Scalar(FieldKind::Gaussian, p);
    impl->valuation = [p](const Scalar& a) { return Rational(min_valuation(a, p)); };
    impl->hooks = Impl::Hooks::Gaussian;
    for (unsigned long b = 0; b < p; ++b) {
        for (unsigned long a = 0; a < p; ++a) {
            impl->table.emplace_back(Scalar(FieldKind::Gaussian, a, b), gaussian_label(a, b));
        }
    }
    const long pl = static_cast<long>(p);
    const auto mod = [pl](long x) { return ((x % pl) + pl) % pl; };
    impl->add = [pl, mod](int x, int y) {
        return static_cast<int>(mod(x % pl + y % pl) + pl * mod(x / pl + y / pl));
    };
    impl->mul = [pl, mod](int x, int y) {
        const long a = x % pl, b = x / pl, c = y % pl, d = y / pl;
        return static_cast<int>(mod(a * c - b * d) + pl * mod(a * d + b * c));
    };
    return TotalSubring(std::move(impl));
}

TotalSubring TotalSubring::ramified_quaternion(unsigned long p)
{
    if (p != 2) throw AlgebraError("the rational quaternions ramify only at p = 2");
    auto impl = std::make_shared<Impl>();
    impl->tag = "ramified-quaternion";
    impl->kind = FieldKind::Quaternion;
    impl->p = 2;
    impl->step = Rational(1, 2);
    impl->uniformizer = Scalar(FieldKind::Quaternion, 1, 1);
    impl->valuation = [](const Scalar& a) {
        if (a.is_zero()) throw AlgebraError("valuation of zero");
        Rational v(padic_valuation(a.norm(), 2), 2);
        v.canonicalize();
        return v;
    };
    impl->hooks = Impl::Hooks::Quaternion;
    const Rational h(1, 2);
    const auto Q = FieldKind::Quaternion;
    impl->table = {{Scalar(Q, 0), "0"},
                   {Scalar(Q, 1), "1"},
                   {Scalar(Q, -h, h, h, h), "ω"},
                   {Scalar(Q, -h, -h, -h, -h), "ω²"}};
    // F_4 = F_2[ω] with ω² = ω + 1: indices 0, 1, ω, ω² are the bit pairs 00, 01, 10, 11.
    impl->add = [](int x, int y) { return x ^ y; };
    impl->mul = [](int x, int y) {
        if (x == 0 || y == 0) return 0;
        // logs: 1 ↦ 0, ω ↦ 1, ω² ↦ 2
        const int lg = (x - 1 + y - 1) % 3;
        return lg + 1;
    };
    return TotalSubring(std::move(impl));
}

TotalSubring TotalSubring::split_gaussian(unsigned long p)
{
    if (!is_prime(p) || p % 4 != 1) throw AlgebraError("split Gaussian prime must satisfy p = 1 mod 4");
    long pa = 0, pb = 0;
    for (long a = 1; a * a < static_cast<long>(p); ++a) {
        for (long b = 1; b <= a; ++b) {
            if (a * a + b * b == static_cast<long>(p)) {
                pa = a;
                pb = b;
            }
        }
    }
    auto impl = std::make_shared<Impl>();
    impl->tag = "split-gaussian-negative-control";
    impl->kind = FieldKind::Gaussian;
    impl->p = p;
    impl->step = 1;
    impl->uniformizer = Scalar(FieldKind::Gaussian, pa, pb);
    impl->extra_unit = Scalar(FieldKind::Gaussian, pa, -pb);
    impl->valuation = [p, pa, pb](const Scalar& x) {
        if (x.is_zero()) throw AlgebraError("valuation of zero");
        Integer d;
        mpz_lcm(d.get_mpz_t(), x[0].get_den_mpz_t(), x[1].get_den_mpz_t());
        Integer A = Integer(x[0] * d);
        Integer B = Integer(x[1] * d);
        long v = -padic_valuation(d, p);
        // Divide by π = pa + pb·i while possible: α/π = α·π̄/p.
        for (;;) {
            const Integer re = A * pa + B * pb;
            const Integer im = B * pa - A * pb;
            if (mpz_divisible_ui_p(re.get_mpz_t(), p) == 0 || mpz_divisible_ui_p(im.get_mpz_t(), p) == 0) break;
            A = re / p;
            B = im / p;
            ++v;
        }
        return Rational(v);
    };
    return TotalSubring(std::move(impl));
}

TotalSubring total_subring_from_tag(std::string_view tag, unsigned long p)
{
    if (tag == "inert-gaussian") return TotalSubring::inert_gaussian(p);
    if (tag == "ramified-quaternion") return TotalSubring::ramified_quaternion(p);
    if (tag == "split-gaussian-negative-control") return TotalSubring::split_gaussian(p);
    throw AlgebraError("unknown subring kind: " + std::string(tag));
}

const std::string& TotalSubring::tag() const noexcept { return impl_->tag; }
FieldKind TotalSubring::kind() const noexcept { return impl_->kind; }
unsigned long TotalSubring::prime() const noexcept { return impl_->p; }
Rational TotalSubring::step() const { return impl_->step; }
Scalar TotalSubring::uniformizer() const { return impl_->uniformizer; }
bool TotalSubring::has_k0_hooks() const noexcept { return impl_->hooks != Impl::Hooks::None; }

Rational TotalSubring::valuation(const Scalar& a) const
{
    if (a.kind() != impl_->kind) throw FieldMismatch(a.kind(), impl_->kind);
    return impl_->valuation(a);
}

bool TotalSubring::contains(const Scalar& a) const
{
    return a.is_zero() || sgn(valuation(a)) >= 0;
}

bool TotalSubring::in_m(const Scalar& a) const
{
    return a.is_zero() || sgn(valuation(a)) > 0;
}

std::optional<Scalar> TotalSubring::k0_shift(const Scalar& x, const Rational& target) const
{
    const FieldKind kind = impl_->kind;
    switch (impl_->hooks) {
    case Impl::Hooks::Gaussian: {
        const Scalar k(kind, x.re());
        if (sgn(x[1]) == 0 || valuation(x - k) >= target) return k;
        return std::nullopt;
    }
    case Impl::Hooks::Quaternion: {
        // v(x − k) = v_2((a_0 − k)² + S)/2 with S the norm of the pure part.
        const Rational S = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        const Scalar a0(kind, x.re());
        if (sgn(S) == 0) return a0;
        const Integer twice = ceil_rational(target * 2);
        const long e = padic_valuation(S, 2);
        if (e >= twice) return a0;
        if (e % 2 != 0) return std::nullopt;
        // y = 2^{e/2} z with z odd and v_2(d z² + n) ≥ 2·target − e, S = 2^e n/d.
        const Rational u = S / rpow(2, e);
        const Integer n = u.get_num();
        const Integer d = u.get_den();
        const Integer need = twice - e;
        Integer z = 1;
        for (;;) {
            const Integer val = d * z * z + n;
            const long c = padic_valuation(val, 2);
            if (c >= need) break;
            if (c < 3) return std::nullopt;
            z += ipow(2, static_cast<unsigned long>(c - 1));
        }
        const Rational y = rpow(2, e / 2) * Rational(z);
        return Scalar(kind, x.re() - y);
    }
    case Impl::Hooks::None: break;
    }
    throw AlgebraError("subring " + impl_->tag + " provides no K0 hooks");
}

std::optional<Scalar> TotalSubring::k0_in_coset(const Scalar& s) const
{
    if (impl_->hooks == Impl::Hooks::None) throw AlgebraError("subring " + impl_->tag + " provides no K0 hooks");
    // K_0 = Q and v(p) = 1 in both rings, so v(K_0^*) = Z.
    const Rational v = valuation(s);
    if (v.get_den() != 1) return std::nullopt;
    return Scalar(impl_->kind, rpow(impl_->p, v.get_num().get_si()));
}

const std::vector<std::pair<Scalar, std::string>>& TotalSubring::residue_table() const { return impl_->table; }

int TotalSubring::table_add(int a, int b) const
{
    if (!impl_->add) throw AlgebraError("no residue table");
    return impl_->add(a, b);
}

int TotalSubring::table_mul(int a, int b) const
{
    if (!impl_->mul) throw AlgebraError("no residue table");
    return impl_->mul(a, b);
}

Scalar TotalSubring::sample_element(Sampler& rng, const ScalarShape& shape) const
{
    Scalar x = rng.nonzero_scalar(impl_->kind, shape);
    if (!contains(x)) x = x.inverse();
    for (long n = rng.uniform(0, 2); n > 0; --n) x = x * impl_->uniformizer;
    if (impl_->extra_unit) {
        for (long n = rng.uniform(-2, 2); n != 0; n += n > 0 ? -1 : 1) {
            x = x * (n > 0 ? *impl_->extra_unit : impl_->extra_unit->inverse());
        }
    }
    return x;
}

Scalar TotalSubring::sample_m(Sampler& rng, const ScalarShape& shape) const
{
    return sample_element(rng, shape) * impl_->uniformizer;
}

ResidueScalar::ResidueScalar(TotalSubring ring, Scalar rep) : ring_(std::move(ring)), rep_(std::move(rep))
{
    if (!ring_.contains(rep_)) throw AlgebraError(rep_.to_literal() + " is not in R");
}

ResidueScalar ResidueScalar::inverse() const
{
    if (is_zero()) throw AlgebraError("cannot invert the residue of an element of m: " + rep_.to_literal());
    return ResidueScalar(ring_, rep_.inverse());
}

ResidueLabel residue_canonical(const ResidueScalar& x)
{
    const auto& table = x.ring().residue_table();
    if (table.empty()) return {-1, "opaque residue"};
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        if (x.ring().in_m(x.rep() - table[idx].first)) return {static_cast<int>(idx), table[idx].second};
    }
    throw std::logic_error("residue table misses " + x.rep().to_literal());
}

bool same_coset(const TotalSubring& ring, const CosetSpec& a, const CosetSpec& b)
{
    const Scalar q = a.s.inverse() * b.s;
    return ring.contains(q) && ring.contains(q.inverse());
}

Scalar sigma_s(const Scalar& a, const Scalar& s, Involution sigma)
{
    return s.inverse() * apply_sigma(a, sigma) * s;
}

CheckList verify_subring(const TotalSubring& ring, Involution sigma, Sampler& rng, long samples,
                         const ScalarShape& shape)
{
    (void)sigma;
    const FieldKind kind = ring.kind();
    CheckBuilder closure("ring.closure");
    CheckBuilder total("ring.totality");
    CheckBuilder val("ring.valuation_laws");
    CheckBuilder mchar("ring.m_characterization");
    CheckBuilder ideal("ring.m_two_sided_ideal");
    CheckBuilder field("residue.field_axioms");
    CheckBuilder canon("residue.canonical_isomorphism");
    CheckBuilder coset("coset.equivalence");

    closure.sample();
    if (!ring.contains(Scalar::zero(kind)) || !ring.contains(Scalar::one(kind))) closure.fail("0;1");

    const bool tabled = !ring.residue_table().empty();
    for (long n = 0; n < samples; ++n) {
        const Scalar a = ring.sample_element(rng, shape);
        const Scalar b = ring.sample_element(rng, shape);
        const Scalar c = ring.sample_element(rng, shape);
        const Scalar x = rng.nonzero_scalar(kind, shape);
        const Scalar y = rng.nonzero_scalar(kind, shape);
        const std::string wit = a.to_literal() + ";" + b.to_literal();

        closure.sample();
        if (!ring.contains(a + b) || !ring.contains(a - b) || !ring.contains(a * b)) closure.fail(wit);

        total.sample();
        if (!ring.contains(x) && !ring.contains(x.inverse())) total.fail(x.to_literal());

        val.sample();
        const Rational vx = ring.valuation(x);
        const Rational vy = ring.valuation(y);
        const bool mult = ring.valuation(x * y) == vx + vy;
        const bool ultra = (x + y).is_zero() || ring.valuation(x + y) >= std::min(vx, vy);
        const bool agree = ring.contains(x) == (sgn(vx) >= 0);
        if (!mult || !ultra || !agree) val.fail(x.to_literal() + ";" + y.to_literal());

        mchar.sample();
        const bool by_units = ring.contains(x) && !ring.contains(x.inverse());
        if (ring.in_m(x) != by_units) mchar.fail(x.to_literal());

        ideal.sample();
        const Scalar mm = ring.sample_m(rng, shape);
        if (!ring.in_m(a * mm) || !ring.in_m(mm * a) || !ring.in_m(mm + ring.sample_m(rng, shape))) {
            ideal.fail(a.to_literal() + ";" + mm.to_literal());
        }

        const ResidueScalar ra(ring, a), rb(ring, b), rc(ring, c);
        field.sample();
        bool ok = (ra * rb) * rc == ra * (rb * rc) && ra * (rb + rc) == ra * rb + ra * rc &&
                  (ra + rb) * rc == ra * rc + rb * rc && ra + rb == rb + ra;
        if (!ra.is_zero()) ok = ok && ra * ra.inverse() == ResidueScalar(ring, Scalar::one(kind)) &&
                                ra.inverse() * ra == ResidueScalar(ring, Scalar::one(kind));
        if (!ok) field.fail(wit + ";" + c.to_literal());

        if (tabled) {
            canon.sample();
            const int la = residue_canonical(ra).index;
            const int lb = residue_canonical(rb).index;
            if (residue_canonical(ra + rb).index != ring.table_add(la, lb) ||
                residue_canonical(ra * rb).index != ring.table_mul(la, lb)) {
                canon.fail(wit);
            }
        }

        coset.sample();
        const Scalar u = ring.sample_element(rng, shape);
        const CosetSpec s1{x}, s2{x * (ring.is_unit(u) ? u : Scalar::one(kind))}, s3{y};
        const bool refl = same_coset(ring, s1, s1);
        const bool unit_move = same_coset(ring, s1, s2);
        const bool symm = same_coset(ring, s1, s3) == same_coset(ring, s3, s1);
        const bool trans = !(same_coset(ring, s1, s3) && same_coset(ring, s3, s2)) || same_coset(ring, s1, s2);
        if (!refl || !unit_move || !symm || !trans) coset.fail(x.to_literal() + ";" + y.to_literal());
    }
    if (!tabled) canon.note("no residue table");
    return {std::move(closure).done(), std::move(total).done(), std::move(val).done(),
            std::move(mchar).done(),   std::move(ideal).done(), std::move(field).done(),
            std::move(canon).done(),   std::move(coset).done()};
}

CheckList check_c1(const TotalSubring& ring, const CosetSpec& coset, Involution sigma, Sampler& rng, long samples,
                   const ScalarShape& shape)
{
    CheckBuilder fwd("c1.sigma_s_stabilizes_R");
    CheckBuilder back("c1.inverse_stabilizes_R");
    const Scalar& s = coset.s;
    const Scalar s_sig = apply_sigma(s, sigma);
    for (long n = 0; n < samples; ++n) {
        const Scalar a = ring.sample_element(rng, shape);
        fwd.sample();
        const Scalar image = sigma_s(a, s, sigma);
        if (!ring.contains(image)) fwd.fail(a.to_literal(), "a^(sigma s) = " + image.to_literal() + " is not in R");
        back.sample();
        const Scalar pre = s_sig.inverse() * apply_sigma(a, sigma) * s_sig;
        if (!ring.contains(pre)) back.fail(a.to_literal(), "preimage " + pre.to_literal() + " is not in R");
    }
    return {std::move(fwd).done(), std::move(back).done()};
}

std::optional<TElement> sample_t_in_coset(const PseudoQuadraticSpace& pq, const TotalSubring& ring,
                                          const CosetSpec& coset, bool in_m, Sampler& rng, const ScalarShape& shape)
{
    const Rational target = ring.valuation(coset.s) + (in_m ? ring.step() : Rational(0));
    L0Vector u = pq.random_l0(rng, shape);
    if (rng.uniform(0, 15) == 0) u = pq.l0_zero();
    for (long n = rng.uniform(-1, 3); n != 0; n += n > 0 ? -1 : 1) {
        u = l0_mul(u, n > 0 ? ring.uniformizer() : ring.uniformizer().inverse());
    }
    const Scalar q = pq.q0(u);
    const auto k = ring.k0_shift(q, target);
    if (!k) return std::nullopt;
    // Extra K_0 part of valuation at least the target.
    Rational extra = rng.rational(shape);
    if (sgn(extra) != 0) {
        const Rational v = ring.valuation(Scalar(pq.kind(), extra));
        if (v < target) extra *= rpow(ring.prime(), ceil_rational(target - v).get_si());
    }
    const Scalar t = q - *k - Scalar(pq.kind(), extra);
    return t_make(pq, std::move(u), t);
}

CheckList check_c2_c3(const PseudoQuadraticSpace& pq, const TotalSubring& ring, const CosetSpec& coset, Sampler& rng,
                      long samples, const ScalarShape& shape)
{
    CheckBuilder c2("c2.f0_in_sR");
    CheckBuilder c3("c3.f0_in_sm");
    if (!ring.has_k0_hooks()) {
        c2.undecided("no targeted sampling of T without K0 hooks");
        c3.undecided("no targeted sampling of T without K0 hooks");
        return {std::move(c2).done(), std::move(c3).done()};
    }
    const Scalar s_inv = coset.s.inverse();
    const long budget = 20 * samples;
    long admissible = 0;
    long attempts = 0;
    auto draw = [&](bool in_m) -> std::optional<TElement> {
        while (attempts < budget) {
            ++attempts;
            if (auto x = sample_t_in_coset(pq, ring, coset, in_m, rng, shape)) return x;
        }
        return std::nullopt;
    };
    for (long n = 0; n < samples; ++n) {
        const auto ut = draw(false);
        const auto wr = draw(false);
        const auto wr_m = draw(true);
        if (!ut || !wr || !wr_m) break;
        ++admissible;
        c2.sample();
        const Scalar f2 = s_inv * pq.f0(ut->w(), wr->w());
        if (!ring.contains(f2)) c2.fail(ut->to_literal() + ";" + wr->to_literal(), "s^-1 f0 = " + f2.to_literal());
        c3.sample();
        const Scalar f3 = s_inv * pq.f0(ut->w(), wr_m->w());
        if (!ring.in_m(f3)) c3.fail(ut->to_literal() + ";" + wr_m->to_literal(), "s^-1 f0 = " + f3.to_literal());
    }
    if (admissible < samples / 10 || (samples > 0 && admissible == 0)) {
        throw GenerationStarvation("only " + std::to_string(admissible) + " admissible pairs in " +
                                   std::to_string(attempts) + " attempts");
    }
    c2.note("no counterexample in " + std::to_string(admissible) + " samples");
    c3.note("no counterexample in " + std::to_string(admissible) + " samples");
    return {std::move(c2).done(), std::move(c3).done()};
}

}  // namespace polarepi
