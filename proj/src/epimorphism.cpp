#include "polarepi/epimorphism.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace polarepi {

std::string_view to_string(CaseVariant c) { return c == CaseVariant::I ? "I" : "II"; }

namespace {

std::string label(const ResidueScalar& x)
{
    const ResidueLabel l = residue_canonical(x);
    return l.index < 0 ? x.rep().to_literal() : l.text;
}

/// Replaces the representative by the table representative when there is one.
ResidueScalar canonical(const ResidueScalar& x)
{
    const ResidueLabel l = residue_canonical(x);
    if (l.index < 0) return x;
    return ResidueScalar(x.ring(), x.ring().residue_table()[static_cast<std::size_t>(l.index)].first);
}

std::vector<ResidueScalar> flat(const TargetVector& x)
{
    std::vector<ResidueScalar> out = x.lbar;
    out.insert(out.end(), x.a.begin(), x.a.end());
    return out;
}

TargetVector unflat(std::vector<ResidueScalar> v, std::size_t lbar_dim)
{
    TargetVector out;
    out.lbar.assign(v.begin(), v.begin() + static_cast<long>(lbar_dim));
    out.a.assign(v.begin() + static_cast<long>(lbar_dim), v.end());
    return out;
}

std::optional<std::size_t> last_nonzero(const std::vector<ResidueScalar>& v)
{
    for (std::size_t idx = v.size(); idx-- > 0;) {
        if (!v[idx].is_zero()) return idx;
    }
    return std::nullopt;
}

}  // namespace

CaseTag classify_coset(const PseudoQuadraticSpace& pq, const TotalSubring& ring, const Scalar& s)
{
    if (!ring.has_k0_hooks()) throw CaseUndecided("no K0 search available for " + ring.tag());
    if (s.is_zero()) throw AlgebraError("the coset representative must be nonzero");
    if (auto r = ring.k0_in_coset(s)) return {CaseVariant::I, *r};
    const Scalar probe = s.inverse() * pq.sigma(s) + Scalar::one(s.kind());
    if (!ring.in_m(probe)) {
        throw ContextInvalid("s^-1 s^sigma + 1 = " + probe.to_literal() + " is not in m, so (C1) fails");
    }
    return {CaseVariant::II, s};
}

std::string ResiduePoint::to_literal() const
{
    std::string out = "(";
    for (std::size_t idx = 0; idx < rep_.lbar.size(); ++idx) out += (idx ? "," : "") + label(rep_.lbar[idx]);
    out += "|";
    for (std::size_t idx = 0; idx < rep_.a.size(); ++idx) out += (idx ? "," : "") + label(rep_.a[idx]);
    return out + ")";
}

bool operator==(const ResiduePoint& x, const ResiduePoint& y)
{
    const auto fx = flat(x.rep_);
    const auto fy = flat(y.rep_);
    if (fx.size() != fy.size()) return false;
    for (std::size_t idx = 0; idx < fx.size(); ++idx) {
        if (!(fx[idx] == fy[idx])) return false;
    }
    return true;
}

EpimorphismContext::EpimorphismContext(PolarSpace space, TotalSubring ring, Scalar s_given, CaseTag tag)
    : space_(std::move(space)),
      ring_(std::move(ring)),
      s_given_(std::move(s_given)),
      case_(std::move(tag)),
      twist_(ring_, case_.r.inverse() * space_.sigma(case_.r))
{
}

EpimorphismContext EpimorphismContext::build(PolarSpace space, TotalSubring ring, Scalar s, Sampler& rng,
                                             long samples, const ScalarShape& shape)
{
    const auto& pq = space.pq();
    if (ring.kind() != space.kind()) throw FieldMismatch(ring.kind(), space.kind());
    if (s.kind() != space.kind()) throw FieldMismatch(s.kind(), space.kind());
    if (pq.k0().tag() != "rational-center") throw ContextInvalid("only K0 = Q is supported");
    if (pq.dim_l0() > 1) throw ContextInvalid("only dim L0 <= 1 is supported");

    ScalarShape rshape = shape;
    rshape.prime = ring.prime();
    for (const auto& c : check_c1(ring, {s}, pq.involution(), rng, samples, rshape)) {
        if (c.verdict == Verdict::Fail) throw ContextInvalid(c.check + " fails at " + c.witness.value_or("?"));
    }
    for (const auto& c : check_c2_c3(pq, ring, {s}, rng, samples, rshape)) {
        if (c.verdict == Verdict::Fail) throw ContextInvalid(c.check + " fails at " + c.witness.value_or("?"));
    }

    CaseTag tag = classify_coset(pq, ring, s);
    EpimorphismContext ctx(std::move(space), std::move(ring), std::move(s), std::move(tag));

    if (ctx.space_.pq().dim_l0() == 1) {
        // L0' = {v : v(v) ≥ v(c)} since it is an R-module in K; find c among powers of π.
        const Scalar pi = ctx.ring_.uniformizer();
        const auto power = [&](int n) {
            Scalar out = Scalar::one(pi.kind());
            for (int k = 0; k < std::abs(n); ++k) out = out * (n > 0 ? pi : pi.inverse());
            return out;
        };
        std::optional<Scalar> found;
        for (int n = -16; n <= 16 && !found; ++n) {
            const Scalar c = power(n);
            if (ctx.in_l0_prime({c})) found = c;
        }
        if (!found) throw ContextInvalid("could not locate L0' among powers of the uniformizer");
        if (!ctx.in_l0_second({*found})) ctx.generator_ = *found;
    }

    for (const auto& list : {verify_case(ctx, rng, samples, rshape), verify_target_laws(ctx, rng, samples, rshape)}) {
        for (const auto& c : list) {
            if (c.verdict == Verdict::Fail) {
                throw ContextInvalid(c.check + " fails at " + c.witness.value_or("?") + " " + c.detail);
            }
        }
    }
    return ctx;
}

ResidueScalar EpimorphismContext::sigma_r(const ResidueScalar& a) const
{
    return residue(sigma_s(a.rep(), s(), space_.pq().involution()));
}

bool EpimorphismContext::in_l0_prime(const L0Vector& v) const
{
    if (l0_is_zero(v)) return true;
    return ring_.k0_shift(space_.pq().q0(v), ring_.valuation(s())).has_value();
}

bool EpimorphismContext::in_l0_second(const L0Vector& v) const
{
    if (l0_is_zero(v)) return true;
    return ring_.k0_shift(space_.pq().q0(v), ring_.valuation(s()) + ring_.step()).has_value();
}

ResidueVector EpimorphismContext::residue_vector(const L0Vector& v) const
{
    if (!in_l0_prime(v)) throw AlgebraError(l0_literal(v) + " is not in L0'");
    return {v};
}

bool EpimorphismContext::same_residue(const ResidueVector& v, const ResidueVector& w) const
{
    return in_l0_second(l0_sub(v.rep, w.rep));
}

ResidueVector EpimorphismContext::scale(const ResidueVector& v, const ResidueScalar& k) const
{
    return {l0_mul(v.rep, k.rep())};
}

std::vector<ResidueScalar> EpimorphismContext::lbar_coords(const ResidueVector& v) const
{
    if (!generator_) return {};
    return {residue(generator_->inverse() * v.rep.at(0))};
}

ResidueVector EpimorphismContext::from_lbar_coords(const std::vector<ResidueScalar>& lambda) const
{
    if (lambda.size() != lbar_dim()) throw AlgebraError("wrong number of L0-bar coordinates");
    if (!generator_) return {space_.pq().l0_zero()};
    return {{*generator_ * lambda[0].rep()}};
}

bool EpimorphismContext::in_k0_bar(const ResidueScalar& a) const
{
    if (case_.variant != CaseVariant::I) throw AlgebraError("the involutory set of K_R exists in Case I only");
    // a ≡ s⁻¹k mod m ⟺ v(s a − k) > v(s); s ∈ K_0 = Q is central.
    return ring_.k0_shift(s() * a.rep(), ring_.valuation(s()) + ring_.step()).has_value();
}

bool EpimorphismContext::q_equal(const ResidueScalar& a, const ResidueScalar& b) const
{
    return case_.variant == CaseVariant::I ? in_k0_bar(a - b) : a == b;
}

ResidueScalar EpimorphismContext::q0_bar(const ResidueVector& v) const
{
    if (l0_is_zero(v.rep)) return rzero();
    const Scalar q = space_.pq().q0(v.rep);
    const auto k = ring_.k0_shift(q, ring_.valuation(s()));
    if (!k) throw InternalInconsistency(l0_literal(v.rep) + " was accepted as an element of L0' but is not");
    return residue(s().inverse() * (q - *k));
}

ResidueScalar EpimorphismContext::f0_bar(const ResidueVector& v, const ResidueVector& w) const
{
    const Scalar x = s().inverse() * space_.pq().f0(v.rep, w.rep);
    if (!ring_.contains(x)) throw ContextInvalid("(C2) fails: s^-1 f0 = " + x.to_literal() + " is not in R");
    return residue(x);
}

ResidueScalar EpimorphismContext::q_bar(const TargetVector& x) const
{
    ResidueScalar out = q0_bar(from_lbar_coords(x.lbar));
    for (std::size_t i = 0; i + 1 < x.a.size(); i += 2) out = out + sigma_r(x.a[i]) * x.a[i + 1];
    return out;
}

ResidueScalar EpimorphismContext::f_bar(const TargetVector& x, const TargetVector& y) const
{
    ResidueScalar out = f0_bar(from_lbar_coords(x.lbar), from_lbar_coords(y.lbar));
    for (std::size_t i = 0; i + 1 < x.a.size(); i += 2) {
        out = out + sigma_r(x.a[i]) * y.a[i + 1] - sigma_r(x.a[i + 1]) * twist_ * y.a[i];
    }
    return out;
}

bool EpimorphismContext::target_singular(const TargetVector& x) const
{
    const ResidueScalar q = q_bar(x);
    return case_.variant == CaseVariant::I ? in_k0_bar(q) : q.is_zero();
}

bool EpimorphismContext::target_collinear(const ResiduePoint& x, const ResiduePoint& y) const
{
    return f_bar(x.rep(), y.rep()).is_zero();
}

ResiduePoint EpimorphismContext::make_target_point(const TargetVector& x) const
{
    if (x.lbar.size() != lbar_dim() || x.a.size() != space_.coords()) throw AlgebraError("target vector has wrong shape");
    auto v = flat(x);
    const auto pivot = last_nonzero(v);
    if (!pivot) throw AlgebraError("the zero vector spans no point");
    const ResidueScalar inv = v[*pivot].inverse();
    for (auto& c : v) c = canonical(c * inv);
    return ResiduePoint(unflat(std::move(v), lbar_dim()));
}

TargetVector EpimorphismContext::target_mul(const TargetVector& x, const ResidueScalar& k) const
{
    auto v = flat(x);
    for (auto& c : v) c = canonical(c * k);
    return unflat(std::move(v), lbar_dim());
}

TargetVector EpimorphismContext::target_add(const TargetVector& x, const TargetVector& y) const
{
    auto v = flat(x);
    const auto w = flat(y);
    for (std::size_t idx = 0; idx < v.size(); ++idx) v[idx] = canonical(v[idx] + w[idx]);
    return unflat(std::move(v), lbar_dim());
}

ResidueSubspace EpimorphismContext::target_echelon(std::vector<TargetVector> vectors) const
{
    std::vector<std::pair<std::size_t, std::vector<ResidueScalar>>> rows;
    for (const auto& x : vectors) {
        auto v = flat(x);
        for (const auto& [p, row] : rows) {
            const ResidueScalar c = v[p];
            for (std::size_t idx = 0; idx < v.size(); ++idx) v[idx] = canonical(v[idx] - row[idx] * c);
        }
        const auto pivot = last_nonzero(v);
        if (!pivot) continue;
        const ResidueScalar inv = v[*pivot].inverse();
        for (auto& c : v) c = canonical(c * inv);
        for (auto& [p, row] : rows) {
            const ResidueScalar c = row[*pivot];
            for (std::size_t idx = 0; idx < v.size(); ++idx) row[idx] = canonical(row[idx] - v[idx] * c);
        }
        rows.emplace_back(*pivot, std::move(v));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    ResidueSubspace out;
    for (auto& [p, row] : rows) out.basis.push_back(unflat(std::move(row), lbar_dim()));
    return out;
}

bool EpimorphismContext::target_span_contains(const ResidueSubspace& s, const TargetVector& x) const
{
    auto v = flat(x);
    for (const auto& b : s.basis) {
        const auto row = flat(b);
        const auto pivot = last_nonzero(row);
        const ResidueScalar c = v[*pivot];
        for (std::size_t idx = 0; idx < v.size(); ++idx) v[idx] = v[idx] - row[idx] * c;
    }
    return !last_nonzero(v).has_value();
}

ResidueScalar EpimorphismContext::random_residue(Sampler& rng, const ScalarShape& shape) const
{
    const auto& table = ring_.residue_table();
    if (!table.empty()) {
        return residue(table[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(table.size()) - 1))].first);
    }
    if (rng.uniform(0, 4) == 0) return rzero();
    return residue(ring_.sample_element(rng, shape));
}

ResiduePoint EpimorphismContext::random_target_point(Sampler& rng, const ScalarShape& shape) const
{
    TargetVector x;
    for (std::size_t idx = 0; idx < lbar_dim(); ++idx) x.lbar.push_back(random_residue(rng, shape));
    for (std::size_t idx = 0; idx < space_.coords(); ++idx) x.a.push_back(random_residue(rng, shape));
    const auto pair = static_cast<std::size_t>(rng.uniform(0, rank() - 1));
    const bool fix_odd = rng.coin();
    x.a[2 * pair + (fix_odd ? 0 : 1)] = rone();
    // q̄ = rest + α_{2i-1}^{σ_R} α_{2i}; solve for the free partner so that q̄ = k.
    TargetVector rest = x;
    rest.a[2 * pair] = rzero();
    rest.a[2 * pair + 1] = rzero();
    ResidueScalar k = rzero();
    if (case_.variant == CaseVariant::I) {
        k = residue(Scalar(space_.kind(), rng.uniform(0, static_cast<long>(ring_.prime()) - 1)));
    }
    const ResidueScalar need = k - q_bar(rest);
    if (fix_odd) {
        x.a[2 * pair + 1] = need;
    } else {
        x.a[2 * pair] = sigma_r(need);
    }
    ResidueScalar scale = random_residue(rng, shape);
    while (scale.is_zero()) scale = random_residue(rng, shape);
    x = target_mul(x, scale);
    if (!target_singular(x)) throw InternalInconsistency("sampled target vector is not singular");
    return make_target_point(x);
}

ResiduePoint EpimorphismContext::parse_target_point(std::string_view text) const
{
    std::string body;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) body += ch;
    }
    if (body.size() < 3 || body.front() != '(' || body.back() != ')') {
        throw AlgebraError("target point literal must look like (l|a1,...,a2l)");
    }
    body = body.substr(1, body.size() - 2);
    const auto bar = body.find('|');
    if (bar == std::string::npos) throw AlgebraError("target point literal needs a '|'");
    const auto items = [&](const std::string& part) {
        std::vector<ResidueScalar> out;
        if (part.empty()) return out;
        std::size_t start = 0;
        for (;;) {
            const auto comma = part.find(',', start);
            const std::string item = part.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            std::optional<Scalar> rep;
            for (const auto& [r, l] : ring_.residue_table()) {
                if (l == item) rep = r;
            }
            out.push_back(residue(rep ? *rep : parse_scalar(item, space_.kind())));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    };
    TargetVector x{items(body.substr(0, bar)), items(body.substr(bar + 1))};
    if (x.lbar.size() != lbar_dim() || x.a.size() != space_.coords()) {
        throw AlgebraError("target point needs " + std::to_string(lbar_dim()) + " L0-bar and " +
                           std::to_string(space_.coords()) + " coordinates");
    }
    if (!target_singular(x)) throw AlgebraError("not a point of the target space: " + std::string(text));
    return make_target_point(x);
}

TargetVector EpimorphismContext::target_short_action(int index, const ResidueScalar& k, const TargetVector& x) const
{
    if (index < 1 || index >= rank()) throw AlgebraError("short root index out of range");
    const auto p = static_cast<std::size_t>(rank() - index);
    TargetVector out = x;
    // 1-based a_{2p-1} += k a_{2p+1}; a_{2p+2} −= k^{σ_R} a_{2p}
    out.a[2 * p - 2] = canonical(x.a[2 * p - 2] + k * x.a[2 * p]);
    out.a[2 * p + 1] = canonical(x.a[2 * p + 1] - sigma_r(k) * x.a[2 * p - 1]);
    return out;
}

std::vector<Scalar> EpimorphismContext::twisted(const XVector& x) const
{
    std::vector<Scalar> out = x.a;
    const Scalar s_inv = s().inverse();
    for (std::size_t idx = 1; idx < out.size(); idx += 2) out[idx] = s_inv * out[idx];
    return out;
}

bool EpimorphismContext::normed(const XVector& x) const
{
    bool unit = false;
    for (const auto& c : twisted(x)) {
        if (!ring_.contains(c)) return false;
        unit = unit || ring_.is_unit(c);
    }
    return unit;
}

XVector EpimorphismContext::normalize(const XVector& x) const
{
    if (x.coords_zero()) throw AlgebraError("cannot normalize a vector with zero coordinate part");
    XVector out = x;
    auto tw = twisted(out);
    const bool all_in =
        std::all_of(tw.begin(), tw.end(), [&](const Scalar& c) { return ring_.contains(c); });
    const bool any_unit = std::any_of(tw.begin(), tw.end(), [&](const Scalar& c) { return ring_.is_unit(c); });
    if (all_in && !any_unit) {
        std::optional<std::size_t> best;
        for (std::size_t idx = 0; idx < tw.size(); ++idx) {
            if (tw[idx].is_zero()) continue;
            if (!best || ring_.valuation(tw[idx]) < ring_.valuation(tw[*best])) best = idx;
        }
        out = x_mul(out, tw[*best].inverse());
    }
    const int cap = 2 * rank() + 2;
    for (int step = 0; step < cap; ++step) {
        tw = twisted(out);
        const auto it = std::find_if(tw.begin(), tw.end(), [&](const Scalar& c) { return !ring_.contains(c); });
        if (it == tw.end()) break;
        out = x_mul(out, it->inverse());
    }
    if (!normed(out)) throw InternalInconsistency("normalization did not terminate for " + x.to_literal());
    return out;
}

TargetVector EpimorphismContext::reduce_normed(const XVector& x) const
{
    TargetVector out;
    out.lbar = lbar_coords(residue_vector(x.v));
    for (const auto& c : twisted(x)) out.a.push_back(canonical(residue(c)));
    for (auto& c : out.lbar) c = canonical(c);
    return out;
}

ResiduePoint EpimorphismContext::rho_vector(const XVector& x) const
{
    return make_target_point(reduce_normed(normalize(x)));
}

ResiduePoint EpimorphismContext::rho_point(const ProjectivePoint& p) const { return rho_vector(p.rep()); }

ResidueSubspace EpimorphismContext::rho_subspace(const Subspace& sub) const
{
    // Elimination with pivots of minimal valuation gives normed vectors whose
    // reductions are independent.
    std::vector<XVector> remaining = sub.basis();
    std::vector<TargetVector> images;
    while (!remaining.empty()) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Rational best_v;
        for (std::size_t r = 0; r < remaining.size(); ++r) {
            const auto tw = twisted(remaining[r]);
            for (std::size_t j = 0; j < tw.size(); ++j) {
                if (tw[j].is_zero()) continue;
                const Rational v = ring_.valuation(tw[j]);
                if (!best || v < best_v) {
                    best = {r, j};
                    best_v = v;
                }
            }
        }
        if (!best) throw AlgebraError("subspace contains a vector with zero coordinate part");
        const auto [r, j] = *best;
        const XVector row = x_mul(remaining[r], twisted(remaining[r])[j].inverse());
        remaining.erase(remaining.begin() + static_cast<long>(r));
        for (auto& y : remaining) y = x_sub(y, x_mul(row, twisted(y)[j]));
        images.push_back(reduce_normed(row));
    }
    return target_echelon(std::move(images));
}

ProjectivePoint EpimorphismContext::lift_point(const ResiduePoint& p, Sampler* rng, const ScalarShape& shape) const
{
    TargetVector x = p.rep();
    std::vector<std::size_t> units;
    for (std::size_t idx = 0; idx < x.a.size(); ++idx) {
        if (!x.a[idx].is_zero()) units.push_back(idx);
    }
    if (units.empty()) throw AlgebraError("malformed target point: no unit coordinate in " + p.to_literal());
    const std::size_t j = rng ? units[static_cast<std::size_t>(rng->uniform(0, static_cast<long>(units.size()) - 1))]
                              : units.front();
    x = target_mul(x, x.a[j].inverse());

    ScalarShape rshape = shape;
    rshape.prime = ring_.prime();
    const auto lift = [&](const ResidueScalar& c) {
        Scalar rep = c.rep();
        if (rng && rng->coin()) rep = rep + ring_.sample_m(*rng, rshape);
        return rep;
    };
    std::vector<ResidueScalar> lambda;
    for (const auto& c : x.lbar) lambda.push_back(residue(lift(c)));
    XVector v = space_.zero();
    v.v = from_lbar_coords(lambda).rep;
    for (std::size_t idx = 0; idx < x.a.size(); ++idx) {
        const Scalar a = idx == j ? Scalar::one(space_.kind()) : lift(x.a[idx]);
        v.a[idx] = idx % 2 == 1 ? s() * a : a;
    }
    // q(v) ≡ s t mod K_0 with t ∈ m; correct the partner of coordinate j.
    const Scalar q = space_.q(v);
    const auto k = ring_.k0_shift(q, ring_.valuation(s()) + ring_.step());
    if (!k) throw InternalInconsistency("lift defect of " + p.to_literal() + " is not in K0 + sm");
    const Scalar t = s().inverse() * (q - *k);
    if (j % 2 == 0) {
        // 1-based j odd: b_{j+1} = a_{j+1} − st
        v.a[j + 1] = v.a[j + 1] - s() * t;
    } else {
        // 1-based j even: b_{j-1} = a_{j-1} − t^{σ s^σ}
        const Scalar ss = space_.sigma(s());
        v.a[j - 1] = v.a[j - 1] - ss.inverse() * space_.sigma(t) * ss;
    }
    return ProjectivePoint::make(space_, v);
}

}  // namespace polarepi
