#include <algorithm>

#include "polarepi/epimorphism.hpp"

namespace polarepi {

namespace {

ScalarShape ring_shape(const EpimorphismContext& ctx, const ScalarShape& shape)
{
    ScalarShape out = shape;
    out.prime = ctx.ring().prime();
    return out;
}

Scalar pi_power(const TotalSubring& ring, long n)
{
    Scalar out = Scalar::one(ring.kind());
    const Scalar step = n > 0 ? ring.uniformizer() : ring.uniformizer().inverse();
    for (long k = 0; k < std::abs(n); ++k) out = out * step;
    return out;
}

/// Nonzero scalar of widely varying valuation.
Scalar spread_scalar(const EpimorphismContext& ctx, Sampler& rng, const ScalarShape& shape)
{
    return rng.nonzero_scalar(ctx.space().kind(), shape) * pi_power(ctx.ring(), rng.uniform(-3, 3));
}

std::string literal(const ResidueScalar& x)
{
    const auto l = residue_canonical(x);
    return l.index < 0 ? x.rep().to_literal() : l.text;
}

ResidueVector random_residue_vector(const EpimorphismContext& ctx, Sampler& rng, const ScalarShape& shape)
{
    std::vector<ResidueScalar> lambda;
    for (std::size_t idx = 0; idx < ctx.lbar_dim(); ++idx) lambda.push_back(ctx.random_residue(rng, shape));
    return ctx.from_lbar_coords(lambda);
}

}  // namespace

DescentReport descent_check(const EpimorphismContext& ctx, const GeneratorAction& g, Sampler& rng, long samples,
                            const ScalarShape& shape)
{
    const PolarSpace& space = ctx.space();
    const TotalSubring& ring = ctx.ring();
    const ScalarShape rshape = ring_shape(ctx, shape);
    DescentReport report;
    report.theorem_descends =
        g.is_long() ? ring.contains(ctx.s().inverse() * g.wt().t()) : ring.contains(g.k());

    const auto separates = [&](const XVector& x, const XVector& y) {
        return ctx.rho_vector(x) == ctx.rho_vector(y) &&
               !(ctx.rho_vector(act(space, g, x)) == ctx.rho_vector(act(space, g, y)));
    };

    if (!report.theorem_descends) {
        // Two coordinate vectors with different images that g sends to one image.
        std::size_t i = 1, j = 2;
        if (!g.is_long()) {
            const auto p = static_cast<std::size_t>(space.rank() - g.index);
            i = 2 * p - 1;
            j = 2 * p + 1;
        }
        const XVector x = space.basis(i);
        const XVector y = space.basis(j);
        const bool apart = !(ctx.rho_vector(x) == ctx.rho_vector(y));
        const bool joined = ctx.rho_vector(act(space, g, x)) == ctx.rho_vector(act(space, g, y));
        if (apart && joined) {
            report.separated = true;
            report.witness = x.to_literal() + ";" + y.to_literal();
            report.detail = "images differ before and agree after " + g.to_literal();
        }
    }

    for (long n = 0; n < samples; ++n) {
        const ProjectivePoint p = random_point(space, rng, rshape);
        const ResiduePoint image = ctx.rho_point(p);
        const ProjectivePoint q = ctx.lift_point(image, &rng, rshape);
        ++report.samples;
        if (!report.separated && separates(p.rep(), q.rep())) {
            report.separated = true;
            report.witness = p.to_literal() + ";" + q.to_literal();
            report.detail = "equal images, different images after " + g.to_literal();
        }
        if (!g.is_long() && report.theorem_descends && !report.action_mismatch) {
            const TargetVector moved = ctx.target_short_action(g.index, ctx.residue(g.k()), image.rep());
            if (!(ctx.rho_point(ProjectivePoint::make(space, act(space, g, p.rep()))) ==
                  ctx.make_target_point(moved))) {
                report.action_mismatch = p.to_literal();
            }
        }
    }
    if (!report.separated) report.detail = "no separation found in " + std::to_string(report.samples) + " samples";
    return report;
}

CheckList verify_case(const EpimorphismContext& ctx, Sampler& rng, long samples, const ScalarShape& shape)
{
    const TotalSubring& ring = ctx.ring();
    const auto& pq = ctx.space().pq();
    const ScalarShape rshape = ring_shape(ctx, shape);
    const Scalar& r = ctx.s();
    const bool case1 = ctx.case_tag().variant == CaseVariant::I;

    CheckBuilder rep("case.representative");
    CheckBuilder sig("case.sigma_r_laws");
    CheckBuilder coset(case1 ? "case.sigma_r_involution_on_K" : "case.k0_avoids_coset");
    CheckBuilder comm(case1 ? "case.k0_bar_fixed" : "case.residue_field_commutative");
    CheckBuilder mod("l0.module_laws");
    CheckBuilder coords("l0.bar_coordinates");

    rep.sample();
    if (!same_coset(ring, {r}, {ctx.s_given()})) rep.fail(r.to_literal(), "not in the given coset");
    if (case1 && !pq.k0().contains(r)) rep.fail(r.to_literal(), "not in K0");
    if (!case1 && !ring.in_m(r.inverse() * pq.sigma(r) + Scalar::one(r.kind()))) {
        rep.fail(r.to_literal(), "r^-1 r^sigma + 1 is not in m");
    }

    for (long n = 0; n < samples; ++n) {
        const Scalar a = ring.sample_element(rng, rshape);
        const Scalar b = ring.sample_element(rng, rshape);
        const ResidueScalar ra = ctx.residue(a), rb = ctx.residue(b);
        const ResidueScalar ra2 = ctx.residue(a + ring.sample_m(rng, rshape));
        sig.sample();
        const bool well = ctx.sigma_r(ra) == ctx.sigma_r(ra2);
        const bool anti = ctx.sigma_r(ra * rb) == ctx.sigma_r(rb) * ctx.sigma_r(ra) &&
                          ctx.sigma_r(ra + rb) == ctx.sigma_r(ra) + ctx.sigma_r(rb);
        const bool invol = ctx.sigma_r(ctx.sigma_r(ra)) == ra;
        const bool ident = case1 || ctx.sigma_r(ra) == ra;
        if (!well || !anti || !invol || !ident) sig.fail(a.to_literal() + ";" + b.to_literal());

        coset.sample();
        if (case1) {
            const Scalar x = rng.nonzero_scalar(pq.kind(), rshape);
            if (sigma_s(sigma_s(x, r, pq.involution()), r, pq.involution()) != x) coset.fail(x.to_literal());
        } else {
            const Scalar k(pq.kind(), rng.rational(rshape));
            if (!k.is_zero() && same_coset(ring, {k}, {r})) coset.fail(k.to_literal(), "rational in rR^*");
        }

        comm.sample();
        if (case1) {
            const ResidueScalar k0 = ctx.residue(Scalar(pq.kind(), rng.uniform(0, 12)));
            if (!ctx.in_k0_bar(k0) || !(ctx.sigma_r(k0) == k0)) comm.fail(k0.rep().to_literal());
        } else if (!(ra * rb == rb * ra)) {
            comm.fail(a.to_literal() + ";" + b.to_literal());
        }

        if (pq.dim_l0() == 0) continue;
        const L0Vector v = pq.random_l0(rng, rshape);
        const L0Vector w = pq.random_l0(rng, rshape);
        if (ctx.in_l0_prime(v) && ctx.in_l0_prime(w)) {
            mod.sample();
            const bool ok = ctx.in_l0_prime(l0_add(v, w)) && ctx.in_l0_prime(l0_mul(v, a)) &&
                            ctx.in_l0_second(l0_mul(v, ring.sample_m(rng, rshape)));
            const bool second = !(ctx.in_l0_second(v) && ctx.in_l0_second(w)) || ctx.in_l0_second(l0_add(v, w));
            if (!ok || !second) mod.fail(l0_literal(v) + ";" + l0_literal(w));

            coords.sample();
            const ResidueVector rv = ctx.residue_vector(v);
            const auto lambda = ctx.lbar_coords(rv);
            const bool back = ctx.same_residue(ctx.from_lbar_coords(lambda), rv);
            const bool zero = ctx.in_l0_second(v) ==
                              std::all_of(lambda.begin(), lambda.end(), [](const auto& c) { return c.is_zero(); });
            if (!back || !zero) coords.fail(l0_literal(v));
        } else if (ctx.in_l0_second(v) && !ctx.in_l0_prime(v)) {
            mod.fail(l0_literal(v), "in L0'' but not in L0'");
        }
    }
    if (pq.dim_l0() == 0) {
        mod.note("L0 is zero");
        coords.note("L0 is zero");
    }
    return {std::move(rep).done(),  std::move(sig).done(), std::move(coset).done(),
            std::move(comm).done(), std::move(mod).done(), std::move(coords).done()};
}

CheckList verify_target_laws(const EpimorphismContext& ctx, Sampler& rng, long samples, const ScalarShape& shape)
{
    const ScalarShape rshape = ring_shape(ctx, shape);
    const bool case1 = ctx.case_tag().variant == CaseVariant::I;
    CheckList out;

    if (case1) {
        CheckBuilder inv("target.k0_bar_involutory_set");
        inv.sample();
        if (!ctx.in_k0_bar(ctx.rone())) inv.fail("1");
        for (long n = 0; n < samples; ++n) {
            const ResidueScalar a = ctx.random_residue(rng, rshape);
            const ResidueScalar t = ctx.random_residue(rng, rshape);
            const ResidueScalar k = ctx.residue(Scalar(ctx.space().kind(), rng.uniform(0, 12)));
            inv.sample();
            const bool trace = ctx.in_k0_bar(a + ctx.sigma_r(a));
            const bool fixed = ctx.sigma_r(k) == k;
            const bool stable = ctx.in_k0_bar(ctx.sigma_r(t) * k * t);
            if (!trace || !fixed || !stable) inv.fail(literal(a) + ";" + literal(t) + ";" + literal(k));
        }
        out.push_back(std::move(inv).done());
    }

    CheckBuilder form(case1 ? "target.f0_bar_skew_hermitian" : "target.f0_bar_symmetric_bilinear");
    CheckBuilder quad(case1 ? "target.q0_bar_pseudo_quadratic" : "target.q0_bar_quadratic");
    CheckBuilder aniso("target.q0_bar_anisotropic");
    CheckBuilder whole("target.q_bar_polarization");

    for (long n = 0; n < samples; ++n) {
        const ResidueVector u = random_residue_vector(ctx, rng, rshape);
        const ResidueVector w = random_residue_vector(ctx, rng, rshape);
        const ResidueScalar a = ctx.random_residue(rng, rshape);
        const ResidueScalar b = ctx.random_residue(rng, rshape);
        const std::string wit = l0_literal(u.rep) + ";" + l0_literal(w.rep) + ";" + literal(a) + ";" + literal(b);
        const ResidueVector sum{l0_add(u.rep, w.rep)};

        if (ctx.lbar_dim() > 0) {
            form.sample();
            const ResidueScalar fuw = ctx.f0_bar(u, w);
            const ResidueScalar fwu = ctx.f0_bar(w, u);
            const ResidueScalar scaled = ctx.f0_bar(ctx.scale(u, a), ctx.scale(w, b));
            bool ok = scaled == ctx.sigma_r(a) * fuw * b;
            if (case1) {
                const ResidueScalar qu = ctx.q0_bar(u);
                ok = ok && ctx.sigma_r(fuw) == -fwu && ctx.f0_bar(u, u) == qu - ctx.sigma_r(qu);
            } else {
                ok = ok && fuw == fwu;
            }
            if (!ok) form.fail(wit);

            quad.sample();
            const ResidueScalar lhs = ctx.q0_bar(sum);
            const ResidueScalar rhs = ctx.q0_bar(u) + ctx.q0_bar(w) + fuw;
            const ResidueScalar hom = ctx.q0_bar(ctx.scale(u, a));
            const ResidueScalar hom_rhs = ctx.sigma_r(a) * ctx.q0_bar(u) * a;
            if (!ctx.q_equal(lhs, rhs) || !ctx.q_equal(hom, hom_rhs)) quad.fail(wit);

            const auto lambda = ctx.lbar_coords(u);
            if (!lambda[0].is_zero()) {
                aniso.sample();
                const ResidueScalar q = ctx.q0_bar(u);
                if (case1 ? ctx.in_k0_bar(q) : q.is_zero()) aniso.fail(l0_literal(u.rep));
            }
        }

        whole.sample();
        TargetVector x, y;
        x.lbar = ctx.lbar_coords(u);
        y.lbar = ctx.lbar_coords(w);
        for (std::size_t idx = 0; idx < ctx.space().coords(); ++idx) {
            x.a.push_back(ctx.random_residue(rng, rshape));
            y.a.push_back(ctx.random_residue(rng, rshape));
        }
        const ResidueScalar lhs = ctx.q_bar(ctx.target_add(x, y));
        const ResidueScalar rhs = ctx.q_bar(x) + ctx.q_bar(y) + ctx.f_bar(x, y);
        if (!ctx.q_equal(lhs, rhs)) whole.fail(wit);
    }
    for (long attempt = 0; ctx.lbar_dim() > 0 && aniso.peek().samples < samples && attempt < 10 * samples; ++attempt) {
        const ResidueVector u = random_residue_vector(ctx, rng, rshape);
        if (ctx.lbar_coords(u)[0].is_zero()) continue;
        aniso.sample();
        const ResidueScalar q = ctx.q0_bar(u);
        if (case1 ? ctx.in_k0_bar(q) : q.is_zero()) aniso.fail(l0_literal(u.rep));
    }
    if (ctx.lbar_dim() == 0) {
        form.note("L0-bar is zero");
        quad.note("L0-bar is zero");
        aniso.note("L0-bar is zero");
    }
    out.push_back(std::move(form).done());
    out.push_back(std::move(quad).done());
    out.push_back(std::move(aniso).done());
    out.push_back(std::move(whole).done());
    return out;
}

CheckList verify_epimorphism(const EpimorphismContext& ctx, Sampler& rng, const EpimorphismBudget& budget,
                             const ScalarShape& shape)
{
    const PolarSpace& space = ctx.space();
    const TotalSubring& ring = ctx.ring();
    const ScalarShape rshape = ring_shape(ctx, shape);
    const int l = space.rank();

    CheckBuilder inv("rho.representative_invariance");
    for (long n = 0; n < budget.scalings; ++n) {
        const ProjectivePoint p = random_point(space, rng, rshape);
        const Scalar t = spread_scalar(ctx, rng, rshape);
        inv.sample();
        if (!(ctx.rho_vector(x_mul(p.rep(), t)) == ctx.rho_point(p))) {
            inv.fail(p.to_literal() + ";" + t.to_literal());
        }
    }

    CheckBuilder col("rho.collinearity");
    for (long n = 0; n < budget.pairs; ++n) {
        const ProjectivePoint p = random_point(space, rng, rshape);
        const XVector q = random_collinear_vector(space, {p.rep()}, rng, rshape);
        col.sample();
        if (!ctx.target_collinear(ctx.rho_point(p), ctx.rho_vector(q))) col.fail(p.to_literal() + ";" + q.to_literal());
    }

    CheckBuilder line("rho.lines");
    long coincident = 0;
    for (long attempt = 0; line.peek().samples < budget.triples && attempt < 4 * budget.triples; ++attempt) {
        const ProjectivePoint p1 = random_point(space, rng, rshape);
        XVector p2 = random_collinear_vector(space, {p1.rep()}, rng, rshape);
        // Nearby second points make coincident images likely.
        if (rng.coin(0.25)) p2 = x_add(p1.rep(), x_mul(p2, pi_power(ring, rng.uniform(1, 3))));
        const XVector p3 = x_add(x_mul(p1.rep(), spread_scalar(ctx, rng, rshape)),
                                 x_mul(p2, spread_scalar(ctx, rng, rshape)));
        if (p3.coords_zero()) continue;
        const ResiduePoint r1 = ctx.rho_point(p1), r2 = ctx.rho_vector(p2), r3 = ctx.rho_vector(p3);
        if (r1 == r2) {
            ++coincident;
            continue;
        }
        line.sample();
        const ResidueSubspace span = ctx.target_echelon({r1.rep(), r2.rep()});
        if (span.rank() != 2 || !ctx.target_span_contains(span, r3.rep())) {
            line.fail(p1.to_literal() + ";" + p2.to_literal() + ";" + p3.to_literal());
        }
    }
    if (line.peek().samples < budget.triples) {
        line.undecided("only " + std::to_string(line.peek().samples) + " triples with distinct images");
    }
    line.note(std::to_string(coincident) + " triples skipped with coincident images");

    CheckBuilder sub("rho.subspace_dimension");
    const int dim = std::min(3, l);
    for (long n = 0; n < budget.planes; ++n) {
        std::vector<XVector> vecs{random_point(space, rng, rshape).rep()};
        while (static_cast<int>(vecs.size()) < dim) vecs.push_back(random_collinear_vector(space, vecs, rng, rshape));
        if (rng.coin(0.3)) vecs[1] = x_add(vecs[0], x_mul(vecs[1], pi_power(ring, rng.uniform(1, 3))));
        const Subspace s = echelonize(space, vecs, 4);
        const ResidueSubspace image = ctx.rho_subspace(s);
        sub.sample();
        bool ok = image.rank() == s.rank();
        for (int k = 0; k < 4 && ok; ++k) {
            XVector x = space.zero();
            for (const auto& b : s.basis()) x = x_add(x, x_mul(b, spread_scalar(ctx, rng, rshape)));
            if (x.coords_zero()) continue;
            ok = ctx.target_span_contains(image, ctx.rho_vector(x).rep());
        }
        if (!ok) sub.fail(s.to_literal(), "image rank " + std::to_string(image.rank()));
    }
    for (const auto& member : standard_chamber(space)) {
        sub.sample();
        const ResidueSubspace image = ctx.rho_subspace(member);
        bool ok = image.rank() == member.rank();
        for (const auto& b : member.basis()) ok = ok && ctx.target_span_contains(image, ctx.rho_vector(b).rep());
        if (!ok) sub.fail(member.to_literal(), "standard chamber member");
    }

    CheckBuilder lift("rho.lift_roundtrip");
    for (long n = 0; n < budget.lifts; ++n) {
        const ResiduePoint target = ctx.random_target_point(rng, rshape);
        lift.sample();
        const ProjectivePoint p = ctx.lift_point(target, rng.coin() ? &rng : nullptr, rshape);
        if (!(ctx.rho_point(p) == target)) lift.fail(target.to_literal(), "lift " + p.to_literal());
    }

    CheckBuilder short_in("descent.short_root_in_R");
    CheckBuilder short_out("descent.short_root_outside_R");
    CheckBuilder long_in("descent.long_root_in_sR");
    CheckBuilder long_out("descent.long_root_outside_sR");
    const long generators = 10;
    const long pairs = std::max(1L, budget.descent / generators);
    for (long n = 0; n < generators; ++n) {
        const int index = static_cast<int>(rng.uniform(1, l - 1));
        const auto inside = y_short(space, index, ring.sample_element(rng, rshape));
        const auto report_in = descent_check(ctx, inside, rng, pairs, rshape);
        short_in.sample();
        if (report_in.separated) short_in.fail(inside.to_literal() + " at " + report_in.witness.value_or(""));
        if (report_in.action_mismatch) {
            short_in.fail(inside.to_literal() + " at " + *report_in.action_mismatch, "induced action differs");
        }

        const auto outside = y_short(space, index, ring.sample_m(rng, rshape).inverse());
        const auto report_out = descent_check(ctx, outside, rng, pairs / 4, rshape);
        short_out.sample();
        if (!report_out.separated) short_out.fail(outside.to_literal(), "no separating pair");

        const auto& pq = space.pq();
        std::optional<TElement> wt;
        while (!wt) wt = sample_t_in_coset(pq, ring, {ctx.s()}, false, rng, rshape);
        const auto long_g = y_long(space, *wt);
        const auto report_long = descent_check(ctx, long_g, rng, pairs, rshape);
        long_in.sample();
        if (report_long.separated) long_in.fail(long_g.to_literal() + " at " + report_long.witness.value_or(""));

        TElement bad = t_random(pq, rng, rshape);
        while (bad.t().is_zero()) bad = t_random(pq, rng, rshape);
        while (ring.contains(ctx.s().inverse() * bad.t())) {
            const Scalar c = ring.uniformizer().inverse();
            bad = t_make(pq, l0_mul(bad.w(), c), pq.sigma(c) * bad.t() * c);
        }
        const auto long_bad = y_long(space, bad);
        const auto report_bad = descent_check(ctx, long_bad, rng, pairs / 4, rshape);
        long_out.sample();
        if (!report_bad.separated) long_out.fail(long_bad.to_literal(), "no separating pair");
    }

    return {std::move(inv).done(),      std::move(col).done(),       std::move(line).done(),
            std::move(sub).done(),      std::move(lift).done(),      std::move(short_in).done(),
            std::move(short_out).done(), std::move(long_in).done(),  std::move(long_out).done()};
}

}  // namespace polarepi
