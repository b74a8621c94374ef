#include "polarepi/polar.hpp"

#include <algorithm>
#include <cctype>

namespace polarepi {

namespace {

// Flat coordinate order: v_1 … v_d, a_1 … a_2l. Pivots are the last nonzero
// flat coordinate, so the a-part always wins when it is nonzero.
std::size_t flat_size(const XVector& x) { return x.v.size() + x.a.size(); }

const Scalar& flat(const XVector& x, std::size_t idx)
{
    return idx < x.v.size() ? x.v[idx] : x.a[idx - x.v.size()];
}

long pivot_of(const XVector& x)
{
    for (std::size_t idx = flat_size(x); idx-- > 0;) {
        if (!flat(x, idx).is_zero()) return static_cast<long>(idx);
    }
    return -1;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Reduced {
    std::vector<XVector> rows;
    std::vector<long> pivots;
};

// Incremental reduced echelon form over right spans.
void absorb(Reduced& r, XVector x)
{
    for (std::size_t b = 0; b < r.rows.size(); ++b) {
        const Scalar c = flat(x, static_cast<std::size_t>(r.pivots[b]));
        if (!c.is_zero()) x = x_sub(x, x_mul(r.rows[b], c));
    }
    const long p = pivot_of(x);
    if (p < 0) return;
    x = x_mul(x, flat(x, static_cast<std::size_t>(p)).inverse());
    for (auto& row : r.rows) {
        const Scalar c = flat(row, static_cast<std::size_t>(p));
        if (!c.is_zero()) row = x_sub(row, x_mul(x, c));
    }
    r.rows.push_back(std::move(x));
    r.pivots.push_back(p);
}

std::vector<XVector> sorted_rows(Reduced r)
{
    std::vector<std::size_t> order(r.rows.size());
    for (std::size_t idx = 0; idx < order.size(); ++idx) order[idx] = idx;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r.pivots[a] > r.pivots[b]; });
    std::vector<XVector> out;
    out.reserve(order.size());
    for (auto idx : order) out.push_back(std::move(r.rows[idx]));
    return out;
}

void check_shape(const PolarSpace& space, const XVector& x)
{
    if (x.v.size() != space.pq().dim_l0() || x.a.size() != space.coords()) {
        throw AlgebraError("vector " + x.to_literal() + " does not fit the space");
    }
    for (const auto& s : x.v) {
        if (s.kind() != space.kind()) throw FieldMismatch(s.kind(), space.kind());
    }
    for (const auto& s : x.a) {
        if (s.kind() != space.kind()) throw FieldMismatch(s.kind(), space.kind());
    }
}

}  // namespace

std::vector<Scalar> parse_scalar_list(std::string_view text, FieldKind kind)
{
    std::vector<Scalar> out;
    text = trim(text);
    if (text.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        out.push_back(parse_scalar(trim(part), kind));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool XVector::coords_zero() const
{
    return std::all_of(a.begin(), a.end(), [](const Scalar& s) { return s.is_zero(); });
}

std::string XVector::to_literal() const
{
    std::string out = "(" + l0_literal(v) + "|";
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
        if (idx) out += ',';
        out += a[idx].to_literal();
    }
    return out + ")";
}

XVector x_add(const XVector& x, const XVector& y)
{
    XVector out{l0_add(x.v, y.v), x.a};
    if (x.a.size() != y.a.size()) throw AlgebraError("coordinate count mismatch");
    for (std::size_t idx = 0; idx < out.a.size(); ++idx) out.a[idx] += y.a[idx];
    return out;
}

XVector x_sub(const XVector& x, const XVector& y)
{
    XVector out{l0_sub(x.v, y.v), x.a};
    if (x.a.size() != y.a.size()) throw AlgebraError("coordinate count mismatch");
    for (std::size_t idx = 0; idx < out.a.size(); ++idx) out.a[idx] -= y.a[idx];
    return out;
}

XVector x_mul(const XVector& x, const Scalar& t)
{
    XVector out{l0_mul(x.v, t), {}};
    out.a.reserve(x.a.size());
    for (const auto& s : x.a) out.a.push_back(s * t);
    return out;
}

PolarSpace::PolarSpace(PseudoQuadraticSpace pq, int rank) : pq_(std::move(pq)), rank_(rank)
{
    if (rank_ < 2) throw AlgebraError("rank l must be at least 2");
}

XVector PolarSpace::zero() const
{
    return XVector{pq_.l0_zero(), std::vector<Scalar>(coords(), pq_.zero())};
}

XVector PolarSpace::basis(std::size_t idx) const
{
    if (idx < 1 || idx > coords()) throw AlgebraError("coordinate index out of range");
    XVector out = zero();
    out.coord(idx) = pq_.one();
    return out;
}

XVector PolarSpace::make(L0Vector v, std::vector<Scalar> a) const
{
    XVector out{std::move(v), std::move(a)};
    check_shape(*this, out);
    return out;
}

Scalar PolarSpace::q(const XVector& x) const
{
    check_shape(*this, x);
    Scalar out = pq_.q0(x.v);
    for (std::size_t i = 0; i < x.a.size(); i += 2) out += sigma(x.a[i]) * x.a[i + 1];
    return out;
}

Scalar PolarSpace::f(const XVector& x, const XVector& y) const
{
    check_shape(*this, x);
    check_shape(*this, y);
    Scalar out = pq_.f0(x.v, y.v);
    for (std::size_t i = 0; i < x.a.size(); i += 2) {
        out += sigma(x.a[i]) * y.a[i + 1];
        out -= sigma(x.a[i + 1]) * y.a[i];
    }
    return out;
}

XVector PolarSpace::random_vector(Sampler& rng, const ScalarShape& shape) const
{
    XVector out{pq_.random_l0(rng, shape), {}};
    for (std::size_t idx = 0; idx < coords(); ++idx) out.a.push_back(rng.scalar(kind(), shape));
    return out;
}

XVector PolarSpace::parse_vector(std::string_view text) const
{
    text = trim(text);
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
        throw AlgebraError("vector literal must look like (v|a_1,...,a_2l): " + std::string(text));
    }
    text = text.substr(1, text.size() - 2);
    const std::size_t bar = text.find('|');
    if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
        throw AlgebraError("vector literal needs exactly one '|'");
    }
    XVector out{parse_scalar_list(text.substr(0, bar), kind()), parse_scalar_list(text.substr(bar + 1), kind())};
    check_shape(*this, out);
    return out;
}

ProjectivePoint ProjectivePoint::make(const PolarSpace& space, const XVector& x)
{
    check_shape(space, x);
    if (x.is_zero()) throw AlgebraError("the zero vector spans no point");
    const Scalar qx = space.q(x);
    if (!space.in_k0(qx)) throw NotSingular(x.to_literal(), "q = " + qx.to_literal() + " is not in K0");
    const long p = pivot_of(x);
    return ProjectivePoint(x_mul(x, flat(x, static_cast<std::size_t>(p)).inverse()));
}

std::string Subspace::to_literal() const
{
    std::string out = "[";
    for (std::size_t idx = 0; idx < basis_.size(); ++idx) {
        if (idx) out += ',';
        out += basis_[idx].to_literal();
    }
    return out + "]";
}

std::vector<XVector> echelon_basis(const PolarSpace& space, std::vector<XVector> vectors)
{
    Reduced r;
    for (auto& x : vectors) {
        check_shape(space, x);
        absorb(r, std::move(x));
    }
    return sorted_rows(std::move(r));
}

std::size_t span_rank(const PolarSpace& space, const std::vector<XVector>& vectors)
{
    return echelon_basis(space, vectors).size();
}

bool span_contains(const PolarSpace& space, const std::vector<XVector>& basis, const XVector& x)
{
    std::vector<XVector> all = basis;
    all.push_back(x);
    return span_rank(space, all) == span_rank(space, basis);
}

Subspace echelonize(const PolarSpace& space, const std::vector<XVector>& vectors, int guard_samples)
{
    std::vector<XVector> basis = echelon_basis(space, vectors);
    for (const auto& b : basis) {
        const Scalar qb = space.q(b);
        if (!space.in_k0(qb)) throw NotSingular(b.to_literal(), "q = " + qb.to_literal() + " is not in K0");
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const Scalar fij = space.f(basis[i], basis[j]);
            if (fij.is_zero()) continue;
            // q(b_i + b_j t) ≡ f(b_i, b_j) t modulo K_0.
            std::vector<Scalar> trials{space.pq().one()};
            if (space.kind() != FieldKind::Rational) trials.push_back(Scalar::unit(space.kind(), 'i'));
            if (space.kind() == FieldKind::Quaternion) trials.push_back(Scalar::unit(space.kind(), 'j'));
            for (const auto& t : trials) {
                const XVector w = x_add(basis[i], x_mul(basis[j], t));
                const Scalar qw = space.q(w);
                if (!space.in_k0(qw)) throw NotSingular(w.to_literal(), "q = " + qw.to_literal() + " is not in K0");
            }
            throw NotSingular(basis[i].to_literal() + ";" + basis[j].to_literal(),
                              "f = " + fij.to_literal() + " is not zero");
        }
    }
    if (basis.size() >= 2 && guard_samples > 0) {
        Sampler rng(0x5ca1ab1eULL + basis.size());
        const ScalarShape shape{};
        for (int n = 0; n < guard_samples; ++n) {
            XVector x = space.zero();
            for (const auto& b : basis) x = x_add(x, x_mul(b, rng.scalar(space.kind(), shape)));
            if (!space.in_k0(space.q(x))) {
                throw InternalInconsistency("basis passes the singularity criterion but " + x.to_literal() +
                                            " is not singular");
            }
        }
    }
    return Subspace(std::move(basis));
}

bool collinear(const PolarSpace& space, const ProjectivePoint& p, const ProjectivePoint& q)
{
    return space.f(p.rep(), q.rep()).is_zero();
}

Subspace perp_filter(const PolarSpace& space, const Subspace& s, const ProjectivePoint& p)
{
    if (span_contains(space, s.basis(), p.rep())) throw AlgebraError("point " + p.to_literal() + " lies in the subspace");
    const auto& basis = s.basis();
    std::vector<Scalar> c;
    c.reserve(basis.size());
    for (const auto& b : basis) c.push_back(space.f(p.rep(), b));
    const auto m = std::find_if(c.begin(), c.end(), [](const Scalar& x) { return !x.is_zero(); });
    if (m == c.end()) return s;
    const std::size_t mi = static_cast<std::size_t>(m - c.begin());
    const Scalar cm_inv = c[mi].inverse();
    std::vector<XVector> kernel;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (j == mi) continue;
        kernel.push_back(x_sub(basis[j], x_mul(basis[mi], cm_inv * c[j])));
    }
    return Subspace(echelon_basis(space, std::move(kernel)));
}

std::vector<Subspace> standard_chamber(const PolarSpace& space)
{
    std::vector<Subspace> out;
    std::vector<XVector> span;
    for (int i = space.rank(); i >= 1; --i) {
        span.push_back(space.basis(static_cast<std::size_t>(2 * i)));
        out.push_back(echelonize(space, span));
    }
    return out;
}

std::optional<std::vector<Scalar>> solve_left_linear(FieldKind kind, std::vector<std::vector<Scalar>> rows,
                                                     std::vector<Scalar> rhs, Sampler* rng,
                                                     const ScalarShape& shape)
{
    if (rows.size() != rhs.size()) throw AlgebraError("system shape mismatch");
    const std::size_t n = rows.empty() ? 0 : rows.front().size();
    std::vector<long> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        std::swap(rhs[r], rhs[sel]);
        const Scalar inv = rows[r][col].inverse();
        for (auto& c : rows[r]) c = inv * c;
        rhs[r] = inv * rhs[r];
        for (std::size_t other = 0; other < rows.size(); ++other) {
            if (other == r || rows[other][col].is_zero()) continue;
            const Scalar factor = rows[other][col];
            for (std::size_t k = 0; k < n; ++k) rows[other][k] -= factor * rows[r][k];
            rhs[other] -= factor * rhs[r];
        }
        pivot_col.push_back(static_cast<long>(col));
        ++r;
    }
    for (std::size_t k = r; k < rows.size(); ++k) {
        if (!rhs[k].is_zero()) return std::nullopt;
    }
    std::vector<Scalar> u(n, Scalar::zero(kind));
    std::vector<bool> is_pivot(n, false);
    for (auto col : pivot_col) is_pivot[static_cast<std::size_t>(col)] = true;
    if (rng != nullptr) {
        for (std::size_t col = 0; col < n; ++col) {
            if (!is_pivot[col]) u[col] = rng->scalar(kind, shape);
        }
    }
    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
        Scalar val = rhs[k];
        for (std::size_t col = 0; col < n; ++col) {
            if (!is_pivot[col]) val -= rows[k][col] * u[col];
        }
        u[static_cast<std::size_t>(pivot_col[k])] = val;
    }
    return u;
}

std::optional<XVector> random_perp_vector(const PolarSpace& space, const std::vector<XVector>& others,
                                          Sampler& rng, const ScalarShape& shape)
{
    const auto kind = space.kind();
    const std::size_t l = static_cast<std::size_t>(space.rank());
    auto maybe = [&](double p) { return rng.coin(p) ? rng.scalar(kind, shape) : Scalar::zero(kind); };

    // One coordinate of every hyperbolic pair is fixed at random, the other
    // is unknown. Modulo K_0, x^σ c ≡ −c^σ x, so both the conditions
    // f(o, x) = 0 and q(x) ≡ k are left-linear in the unknowns.
    XVector x = space.zero();
    for (auto& s : x.v) s = maybe(0.5);
    std::vector<std::size_t> unknown(l);
    for (std::size_t i = 0; i < l; ++i) {
        const bool odd_unknown = rng.coin();
        unknown[i] = odd_unknown ? 2 * i : 2 * i + 1;
        x.a[odd_unknown ? 2 * i + 1 : 2 * i] = maybe(0.6);
    }

    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (const auto& o : others) {
        std::vector<Scalar> row(l);
        for (std::size_t i = 0; i < l; ++i) {
            row[i] = unknown[i] == 2 * i ? -space.sigma(o.a[2 * i + 1]) : space.sigma(o.a[2 * i]);
        }
        rows.push_back(std::move(row));
        rhs.push_back(-space.f(o, x));
    }
    std::vector<Scalar> qrow(l);
    for (std::size_t i = 0; i < l; ++i) {
        qrow[i] = unknown[i] == 2 * i ? -space.sigma(x.a[2 * i + 1]) : space.sigma(x.a[2 * i]);
    }
    rows.push_back(std::move(qrow));
    rhs.push_back(space.pq().random_k0(rng, shape) - space.q(x));

    const auto u = solve_left_linear(kind, std::move(rows), std::move(rhs), &rng, shape);
    if (!u) return std::nullopt;
    for (std::size_t i = 0; i < l; ++i) x.a[unknown[i]] = (*u)[i];
    for (const auto& o : others) {
        if (rng.coin()) x = x_add(x, x_mul(o, rng.scalar(kind, shape)));
    }
    if (x.is_zero()) return std::nullopt;
    x = x_mul(x, rng.nonzero_scalar(kind, shape));
    if (!space.singular_vector(x)) throw InternalInconsistency("constructed vector " + x.to_literal() + " is not singular");
    for (const auto& o : others) {
        if (!space.f(o, x).is_zero()) throw InternalInconsistency("constructed vector is not orthogonal");
    }
    return x;
}

ProjectivePoint random_point(const PolarSpace& space, Sampler& rng, const ScalarShape& shape)
{
    for (int attempt = 0; attempt < 1000; ++attempt) {
        if (auto x = random_perp_vector(space, {}, rng, shape)) return ProjectivePoint::make(space, *x);
    }
    throw InternalInconsistency("could not sample a point");
}

XVector random_collinear_vector(const PolarSpace& space, const std::vector<XVector>& others, Sampler& rng,
                                const ScalarShape& shape)
{
    if (others.size() >= static_cast<std::size_t>(space.rank())) {
        throw AlgebraError("a singular subspace has rank at most l");
    }
    const std::size_t base = span_rank(space, others);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        auto x = random_perp_vector(space, others, rng, shape);
        if (!x) continue;
        std::vector<XVector> all = others;
        all.push_back(*x);
        if (span_rank(space, all) == base + 1) return *x;
    }
    throw InternalInconsistency("could not sample a collinear vector");
}

}  // namespace polarepi
