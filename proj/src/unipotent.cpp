#include "polarepi/unipotent.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <regex>

namespace polarepi {

// ---------------------------------------------------------------------------
// A_2(K^op)

std::string A2Word::to_literal() const
{
    return "[" + a.to_literal() + ";" + b.to_literal() + ";" + c.to_literal() + "]";
}

A2Word a2_identity(FieldKind kind)
{
    return A2Word{Scalar::zero(kind), Scalar::zero(kind), Scalar::zero(kind)};
}

// x_3(c) x_1(a') = x_1(a') x_3(c) x_2(−a'∗c) and x_2 is central.
A2Word a2_mul(const A2Word& x, const A2Word& y)
{
    return A2Word{x.a + y.a, x.b + y.b - OppositeView::mul(y.a, x.c), x.c + y.c};
}

A2Word a2_inv(const A2Word& x)
{
    return A2Word{-x.a, -x.b - OppositeView::mul(x.a, x.c), -x.c};
}

A2Word a2_commutator(const A2Word& x, const A2Word& y)
{
    return a2_mul(a2_mul(a2_inv(x), a2_inv(y)), a2_mul(x, y));
}

// ---------------------------------------------------------------------------
// BC_2

namespace {

struct Letter {
    int root;
    Scalar k;                  // roots 2, 4
    std::optional<TElement> t; // roots 1, 3
};

bool odd_root(int root) { return root % 2 == 1; }

bool trivial(const Letter& x)
{
    if (odd_root(x.root)) return l0_is_zero(x.t->w()) && x.t->t().is_zero();
    return x.k.is_zero();
}

Letter short_letter(int root, Scalar k) { return Letter{root, std::move(k), std::nullopt}; }
Letter long_letter(int root, TElement t) { return Letter{root, Scalar(), std::move(t)}; }

Letter invert(const PseudoQuadraticSpace& pq, const Letter& x)
{
    if (odd_root(x.root)) return long_letter(x.root, t_inv(pq, *x.t));
    return short_letter(x.root, -x.k);
}

Letter merge(const PseudoQuadraticSpace& pq, const Letter& x, const Letter& y)
{
    if (odd_root(x.root)) return long_letter(x.root, t_mul(pq, *x.t, *y.t));
    return short_letter(x.root, x.k + y.k);
}

// [b, a] for root(b) < root(a), in ascending root order.
std::vector<Letter> ordered_commutator(const PseudoQuadraticSpace& pq, const Letter& b, const Letter& a)
{
    const int i = b.root;
    const int j = a.root;
    if (i == 1 && j == 3) {
        return {short_letter(2, -pq.f0(b.t->w(), a.t->w()))};
    }
    if (i == 2 && j == 4) {
        const Scalar tr = pq.sigma(b.k) * a.k + pq.sigma(a.k) * b.k;
        return {long_letter(3, t_make(pq, pq.l0_zero(), -tr))};
    }
    if (i == 1 && j == 4) {
        const Scalar& t = b.t->t();
        const Scalar& k = a.k;
        return {short_letter(2, -(t * k)), long_letter(3, t_make(pq, l0_mul(b.t->w(), -k), pq.sigma(k) * t * k))};
    }
    return {};
}

void collect(const PseudoQuadraticSpace& pq, std::vector<Letter>& word)
{
    for (;;) {
        word.erase(std::remove_if(word.begin(), word.end(), trivial), word.end());
        bool changed = false;
        for (std::size_t p = 0; p + 1 < word.size(); ++p) {
            if (word[p].root == word[p + 1].root) {
                word[p] = merge(pq, word[p], word[p + 1]);
                word.erase(word.begin() + static_cast<long>(p) + 1);
                changed = true;
                break;
            }
            if (word[p].root > word[p + 1].root) {
                // ab = ba[a,b] with [a,b] = [b,a]⁻¹.
                const Letter a = word[p];
                const Letter b = word[p + 1];
                std::vector<Letter> comm = ordered_commutator(pq, b, a);
                std::vector<Letter> repl{b, a};
                for (auto it = comm.rbegin(); it != comm.rend(); ++it) repl.push_back(invert(pq, *it));
                word.erase(word.begin() + static_cast<long>(p), word.begin() + static_cast<long>(p) + 2);
                word.insert(word.begin() + static_cast<long>(p), repl.begin(), repl.end());
                changed = true;
                break;
            }
        }
        if (!changed) return;
    }
}

std::vector<Letter> letters(const BC2Word& x)
{
    return {long_letter(1, x.t1), short_letter(2, x.k2), long_letter(3, x.t3), short_letter(4, x.k4)};
}

BC2Word from_letters(const PseudoQuadraticSpace& pq, const std::vector<Letter>& word)
{
    BC2Word out = bc2_identity(pq);
    for (const auto& x : word) {
        switch (x.root) {
        case 1: out.t1 = *x.t; break;
        case 2: out.k2 = x.k; break;
        case 3: out.t3 = *x.t; break;
        default: out.k4 = x.k; break;
        }
    }
    return out;
}

}  // namespace

std::string BC2Word::to_literal() const
{
    return "[" + t1.to_literal() + ";" + k2.to_literal() + ";" + t3.to_literal() + ";" + k4.to_literal() + "]";
}

BC2Word bc2_identity(const PseudoQuadraticSpace& pq)
{
    return BC2Word{t_identity(pq), pq.zero(), t_identity(pq), pq.zero()};
}

BC2Word bc2_letter1(const PseudoQuadraticSpace& pq, const TElement& t)
{
    BC2Word out = bc2_identity(pq);
    out.t1 = t;
    return out;
}

BC2Word bc2_letter2(const PseudoQuadraticSpace& pq, const Scalar& k)
{
    BC2Word out = bc2_identity(pq);
    out.k2 = k;
    return out;
}

BC2Word bc2_letter3(const PseudoQuadraticSpace& pq, const TElement& t)
{
    BC2Word out = bc2_identity(pq);
    out.t3 = t;
    return out;
}

BC2Word bc2_letter4(const PseudoQuadraticSpace& pq, const Scalar& k)
{
    BC2Word out = bc2_identity(pq);
    out.k4 = k;
    return out;
}

BC2Word bc2_mul(const PseudoQuadraticSpace& pq, const BC2Word& x, const BC2Word& y)
{
    std::vector<Letter> word = letters(x);
    const std::vector<Letter> rest = letters(y);
    word.insert(word.end(), rest.begin(), rest.end());
    collect(pq, word);
    return from_letters(pq, word);
}

BC2Word bc2_inv(const PseudoQuadraticSpace& pq, const BC2Word& x)
{
    std::vector<Letter> word;
    const std::vector<Letter> fwd = letters(x);
    for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) word.push_back(invert(pq, *it));
    collect(pq, word);
    return from_letters(pq, word);
}

BC2Word bc2_commutator(const PseudoQuadraticSpace& pq, const BC2Word& x, const BC2Word& y)
{
    return bc2_mul(pq, bc2_mul(pq, bc2_inv(pq, x), bc2_inv(pq, y)), bc2_mul(pq, x, y));
}

// ---------------------------------------------------------------------------
// Actions on X

std::string GeneratorAction::to_literal() const
{
    if (is_long()) return "y" + std::to_string(index) + "((" + l0_literal(wt().w()) + ")," + wt().t().to_literal() + ")";
    return "y" + std::to_string(index) + "(" + k().to_literal() + ")";
}

GeneratorAction y_short(const PolarSpace& space, int index, Scalar k)
{
    if (index < 1 || index >= space.rank()) throw AlgebraError("y_i(k) needs 1 <= i < l");
    if (k.kind() != space.kind()) throw FieldMismatch(k.kind(), space.kind());
    return GeneratorAction{index, std::move(k)};
}

GeneratorAction y_long(const PolarSpace& space, TElement wt)
{
    return GeneratorAction{space.rank(), std::move(wt)};
}

GeneratorAction y_inverse(const PolarSpace& space, const GeneratorAction& g)
{
    if (g.is_long()) return GeneratorAction{g.index, t_inv(space.pq(), g.wt())};
    return GeneratorAction{g.index, -g.k()};
}

XVector act(const PolarSpace& space, const GeneratorAction& g, const XVector& x)
{
    XVector out = x;
    if (g.is_long()) {
        const TElement& wt = g.wt();
        out.v = l0_add(x.v, l0_mul(wt.w(), x.coord(1)));
        out.coord(2) = x.coord(2) - wt.t() * x.coord(1) - space.pq().f0(wt.w(), x.v);
        return out;
    }
    const auto p = static_cast<std::size_t>(space.rank() - g.index);
    out.coord(2 * p - 1) = x.coord(2 * p - 1) + g.k() * x.coord(2 * p + 1);
    out.coord(2 * p + 2) = x.coord(2 * p + 2) - space.sigma(g.k()) * x.coord(2 * p);
    return out;
}

XVector act_a2_interior(const PolarSpace& space, int i, const Scalar& u, const XVector& x)
{
    if (i < 1 || i > space.rank() - 2) throw AlgebraError("interior A2 root needs 1 <= i <= l-2");
    const auto p = static_cast<std::size_t>(space.rank() - i);
    const std::size_t lo = p - 1;
    const std::size_t hi = p + 1;
    XVector out = x;
    out.coord(2 * lo - 1) = x.coord(2 * lo - 1) + u * x.coord(2 * hi - 1);
    out.coord(2 * hi) = x.coord(2 * hi) - space.sigma(u) * x.coord(2 * lo);
    return out;
}

XVector act_bc2_x2(const PolarSpace& space, const Scalar& c, const XVector& x)
{
    XVector out = x;
    out.coord(2) = x.coord(2) - c * x.coord(3);
    out.coord(4) = x.coord(4) - space.sigma(c) * x.coord(1);
    return out;
}

XVector act_bc2_x3(const PolarSpace& space, const TElement& ur, const XVector& x)
{
    XVector out = x;
    out.v = l0_add(x.v, l0_mul(ur.w(), x.coord(3)));
    out.coord(4) = x.coord(4) - ur.t() * x.coord(3) - space.pq().f0(ur.w(), x.v);
    return out;
}

XVector act_a2_word(const PolarSpace& space, int i, const A2Word& w, const XVector& x)
{
    XVector out = act(space, y_short(space, i, w.a), x);
    out = act_a2_interior(space, i, w.b, out);
    return act(space, y_short(space, i + 1, w.c), out);
}

XVector act_bc2_word(const PolarSpace& space, const BC2Word& w, const XVector& x)
{
    XVector out = act(space, y_long(space, w.t1), x);
    out = act_bc2_x2(space, w.k2, out);
    out = act_bc2_x3(space, w.t3, out);
    return act(space, y_short(space, space.rank() - 1, w.k4), out);
}

std::string ZetaAutomorphism::to_literal() const
{
    return "zeta" + std::to_string(index) + "(" + m.to_literal() + ")";
}

ZetaAutomorphism zeta(const PolarSpace& space, int index, Scalar m)
{
    if (index < 1 || index > space.rank()) throw AlgebraError("zeta_i(m) needs 1 <= i <= l");
    if (m.kind() != space.kind()) throw FieldMismatch(m.kind(), space.kind());
    if (m.is_zero()) throw AlgebraError("zeta_i(m) needs m != 0");
    return ZetaAutomorphism{index, std::move(m)};
}

ZetaAutomorphism zeta_inverse(const ZetaAutomorphism& z)
{
    return ZetaAutomorphism{z.index, z.m.inverse()};
}

XVector act(const PolarSpace& space, const ZetaAutomorphism& z, const XVector& x)
{
    XVector out = x;
    const auto i = static_cast<std::size_t>(z.index);
    out.coord(2 * i - 1) = z.m * x.coord(2 * i - 1);
    out.coord(2 * i) = space.sigma(z.m).inverse() * x.coord(2 * i);
    return out;
}

GeneratorAction zeta_conjugate(const PolarSpace& space, const ZetaAutomorphism& z, const GeneratorAction& g)
{
    if (g.is_long()) throw UnsupportedIndex("conjugation of y_l by zeta is not covered by the known formula");
    const int l = space.rank();
    if (g.index == l - z.index) return GeneratorAction{g.index, z.m * g.k()};
    if (g.index == l - z.index + 1) return GeneratorAction{g.index, g.k() * z.m.inverse()};
    return g;
}

GeneratorAction random_generator(const PolarSpace& space, int index, Sampler& rng, const ScalarShape& shape)
{
    if (index == space.rank()) return y_long(space, t_random(space.pq(), rng, shape));
    return y_short(space, index, rng.scalar(space.kind(), shape));
}

namespace {

std::string strip_spaces(std::string_view text)
{
    std::string out;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
    }
    return out;
}

}  // namespace

GeneratorAction parse_generator(const PolarSpace& space, std::string_view text)
{
    static const std::regex pattern(R"(^y(\d+)\((.*)\)$)");
    const std::string s = strip_spaces(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) throw AlgebraError("generator literal must look like y<i>(...): " + s);
    const int index = std::stoi(m[1].str());
    const std::string inner = m[2].str();
    if (index != space.rank()) return y_short(space, index, parse_scalar(inner, space.kind()));
    const std::size_t close = inner.find(')');
    if (inner.empty() || inner.front() != '(' || close == std::string::npos || close + 1 >= inner.size() ||
        inner[close + 1] != ',') {
        throw AlgebraError("y_l literal must look like y<l>((w...),t): " + s);
    }
    L0Vector w = parse_scalar_list(inner.substr(1, close - 1), space.kind());
    Scalar t = parse_scalar(inner.substr(close + 2), space.kind());
    return y_long(space, t_make(space.pq(), std::move(w), std::move(t)));
}

ZetaAutomorphism parse_zeta(const PolarSpace& space, std::string_view text)
{
    static const std::regex pattern(R"(^zeta(\d+)\((.*)\)$)");
    const std::string s = strip_spaces(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) throw AlgebraError("zeta literal must look like zeta<i>(m): " + s);
    return zeta(space, std::stoi(m[1].str()), parse_scalar(m[2].str(), space.kind()));
}

// ---------------------------------------------------------------------------
// Checks

namespace {

using Map = std::function<XVector(const XVector&)>;

XVector commutator_action(const Map& g, const Map& g_inv, const Map& h, const Map& h_inv, const XVector& x)
{
    return h(g(h_inv(g_inv(x))));
}

A2Word random_a2(FieldKind kind, Sampler& rng, const ScalarShape& shape)
{
    return A2Word{rng.scalar(kind, shape), rng.scalar(kind, shape), rng.scalar(kind, shape)};
}

BC2Word random_bc2(const PseudoQuadraticSpace& pq, Sampler& rng, const ScalarShape& shape)
{
    return BC2Word{t_random(pq, rng, shape), rng.scalar(pq.kind(), shape), t_random(pq, rng, shape),
                   rng.scalar(pq.kind(), shape)};
}

}  // namespace

CheckList verify_relations(const PolarSpace& space, Sampler& rng, long samples, const ScalarShape& shape,
                           Corruption corruption)
{
    const auto& pq = space.pq();
    const FieldKind kind = space.kind();
    const int l = space.rank();
    const Scalar a2_sign = Scalar::from_int(kind, corruption == Corruption::FlipA2Sign ? -1 : 1);
    const Scalar bc2_sign = Scalar::from_int(kind, corruption == Corruption::FlipBC2Sign ? -1 : 1);

    CheckBuilder a2_group("a2.group_laws");
    CheckBuilder a2_formal("a2.commutator_formal");
    CheckBuilder a2_ext("a2.commutator_action");
    CheckBuilder a2_hom("a2.action_homomorphism");
    CheckBuilder bc2_group("bc2.group_laws");
    CheckBuilder bc2_formal("bc2.relations_formal");
    CheckBuilder bc2_ext("bc2.relations_action");
    CheckBuilder bc2_hom("bc2.action_homomorphism");
    CheckBuilder distant("roots.distant_commute");

    const A2Word e2 = a2_identity(kind);
    const BC2Word e4 = bc2_identity(pq);
    for (long n = 0; n < samples; ++n) {
        const XVector x = space.random_vector(rng, shape);

        // A_2(K^op)
        const A2Word u = random_a2(kind, rng, shape);
        const A2Word v = random_a2(kind, rng, shape);
        const A2Word w = random_a2(kind, rng, shape);
        a2_group.sample();
        if (a2_mul(a2_mul(u, v), w) != a2_mul(u, a2_mul(v, w)) || a2_mul(u, e2) != u || a2_mul(e2, u) != u ||
            a2_mul(u, a2_inv(u)) != e2 || a2_mul(a2_inv(u), u) != e2) {
            a2_group.fail(u.to_literal() + ";" + v.to_literal() + ";" + w.to_literal());
        }

        const Scalar s = rng.scalar(kind, shape);
        const Scalar t = rng.scalar(kind, shape);
        const Scalar st = a2_sign * OppositeView::mul(s, t);
        a2_formal.sample();
        const A2Word xs{s, Scalar::zero(kind), Scalar::zero(kind)};
        const A2Word xt{Scalar::zero(kind), Scalar::zero(kind), t};
        if (a2_commutator(xs, xt) != A2Word{Scalar::zero(kind), st, Scalar::zero(kind)}) {
            a2_formal.fail(s.to_literal() + ";" + t.to_literal(), "[x1(s),x3(t)] is not x2(s*t)");
        }

        if (l >= 3) {
            const int i = static_cast<int>(rng.uniform(1, l - 2));
            const auto g = y_short(space, i, s);
            const auto h = y_short(space, i + 1, t);
            const XVector lhs = commutator_action(
                [&](const XVector& y) { return act(space, g, y); },
                [&](const XVector& y) { return act(space, y_inverse(space, g), y); },
                [&](const XVector& y) { return act(space, h, y); },
                [&](const XVector& y) { return act(space, y_inverse(space, h), y); }, x);
            a2_ext.sample();
            if (lhs != act_a2_interior(space, i, st, x)) {
                a2_ext.fail(g.to_literal() + ";" + h.to_literal() + ";" + x.to_literal());
            }

            a2_hom.sample();
            if (act_a2_word(space, i, a2_mul(u, v), x) != act_a2_word(space, i, v, act_a2_word(space, i, u, x))) {
                a2_hom.fail(u.to_literal() + ";" + v.to_literal() + ";" + x.to_literal());
            }

            // y_j for j ≤ l − 2 against every generator at distance ≥ 2.
            const int j = static_cast<int>(rng.uniform(1, l - 2));
            const int k = static_cast<int>(rng.uniform(j + 2, l));
            const auto gj = random_generator(space, j, rng, shape);
            const auto gk = random_generator(space, k, rng, shape);
            distant.sample();
            if (act(space, gk, act(space, gj, x)) != act(space, gj, act(space, gk, x))) {
                distant.fail(gj.to_literal() + ";" + gk.to_literal() + ";" + x.to_literal());
            }
        }

        // BC_2
        const BC2Word p = random_bc2(pq, rng, shape);
        const BC2Word q = random_bc2(pq, rng, shape);
        const BC2Word r = random_bc2(pq, rng, shape);
        bc2_group.sample();
        if (bc2_mul(pq, bc2_mul(pq, p, q), r) != bc2_mul(pq, p, bc2_mul(pq, q, r)) || bc2_mul(pq, p, e4) != p ||
            bc2_mul(pq, e4, p) != p || bc2_mul(pq, p, bc2_inv(pq, p)) != e4) {
            bc2_group.fail(p.to_literal() + ";" + q.to_literal() + ";" + r.to_literal());
        }

        bc2_hom.sample();
        if (act_bc2_word(space, bc2_mul(pq, p, q), x) != act_bc2_word(space, q, act_bc2_word(space, p, x))) {
            bc2_hom.fail(p.to_literal() + ";" + q.to_literal() + ";" + x.to_literal());
        }

        const TElement wt = t_random(pq, rng, shape);
        const TElement vr = t_random(pq, rng, shape);
        const Scalar k = rng.scalar(kind, shape);
        const Scalar a = rng.scalar(kind, shape);
        const std::string wit = wt.to_literal() + ";" + vr.to_literal() + ";" + k.to_literal() + ";" + a.to_literal();

        // The three relations, left sides as words and predicted right sides.
        const BC2Word x1 = bc2_letter1(pq, wt);
        const BC2Word x3inv = bc2_inv(pq, bc2_letter3(pq, vr));
        const BC2Word x2k = bc2_letter2(pq, k);
        const BC2Word x4inv_a = bc2_inv(pq, bc2_letter4(pq, a));
        const BC2Word x4inv_k = bc2_inv(pq, bc2_letter4(pq, k));
        const BC2Word rhs13 = bc2_letter2(pq, bc2_sign * pq.f0(wt.w(), vr.w()));
        const BC2Word rhs24 =
            bc2_letter3(pq, t_make(pq, pq.l0_zero(), pq.sigma(k) * a + pq.sigma(a) * k));
        const BC2Word rhs14 = bc2_mul(pq, bc2_letter2(pq, bc2_sign * wt.t() * k),
                                      bc2_letter3(pq, t_make(pq, l0_mul(wt.w(), k), pq.sigma(k) * wt.t() * k)));
        const std::pair<BC2Word, BC2Word> lhs_pairs[] = {{x1, x3inv}, {x2k, x4inv_a}, {x1, x4inv_k}};
        const BC2Word* rhs[] = {&rhs13, &rhs24, &rhs14};

        for (int rel = 0; rel < 3; ++rel) {
            const auto& [g, h] = lhs_pairs[rel];
            bc2_formal.sample();
            if (bc2_commutator(pq, g, h) != *rhs[rel]) {
                bc2_formal.fail(wit, "relation " + std::to_string(rel + 1) + " fails in the collector");
            }
            const BC2Word gi = bc2_inv(pq, g);
            const BC2Word hi = bc2_inv(pq, h);
            const XVector lhs = commutator_action(
                [&](const XVector& y) { return act_bc2_word(space, g, y); },
                [&](const XVector& y) { return act_bc2_word(space, gi, y); },
                [&](const XVector& y) { return act_bc2_word(space, h, y); },
                [&](const XVector& y) { return act_bc2_word(space, hi, y); }, x);
            bc2_ext.sample();
            if (lhs != act_bc2_word(space, *rhs[rel], x)) {
                bc2_ext.fail(wit + ";" + x.to_literal(), "relation " + std::to_string(rel + 1) + " fails on X");
            }
        }
    }
    if (l < 3) {
        a2_ext.note("no interior A2 pair for l = 2");
        a2_hom.note("no interior A2 pair for l = 2");
        distant.note("no generators at distance 2 for l = 2");
    }
    return {std::move(a2_group).done(),  std::move(a2_formal).done(), std::move(a2_ext).done(),
            std::move(a2_hom).done(),    std::move(bc2_group).done(), std::move(bc2_formal).done(),
            std::move(bc2_ext).done(),   std::move(bc2_hom).done(),   std::move(distant).done()};
}

CheckList verify_actions(const PolarSpace& space, Sampler& rng, long samples, const ScalarShape& shape)
{
    CheckBuilder sing("actions.preserve_singularity");
    CheckBuilder form("actions.preserve_form");
    CheckBuilder lin("actions.right_linear");
    CheckBuilder inv("actions.inverse");
    CheckBuilder chamber("actions.fix_chamber");
    CheckBuilder conj("zeta.conjugation");
    const auto chambers = standard_chamber(space);
    const int l = space.rank();
    for (long n = 0; n < samples; ++n) {
        const XVector x = space.random_vector(rng, shape);
        const XVector y = space.random_vector(rng, shape);
        const Scalar t = rng.scalar(space.kind(), shape);
        const int i = static_cast<int>(rng.uniform(1, l));
        const auto g = random_generator(space, i, rng, shape);
        const auto z = zeta(space, static_cast<int>(rng.uniform(1, l)), rng.nonzero_scalar(space.kind(), shape));
        const Map maps[] = {[&](const XVector& u) { return act(space, g, u); },
                            [&](const XVector& u) { return act(space, z, u); }};
        const std::string names[] = {g.to_literal(), z.to_literal()};
        for (int m = 0; m < 2; ++m) {
            const XVector gx = maps[m](x);
            const XVector gy = maps[m](y);
            sing.sample();
            if (!space.in_k0(space.q(gx) - space.q(x))) sing.fail(names[m] + ";" + x.to_literal());
            form.sample();
            if (space.f(gx, gy) != space.f(x, y)) form.fail(names[m] + ";" + x.to_literal() + ";" + y.to_literal());
            lin.sample();
            if (maps[m](x_add(x, x_mul(y, t))) != x_add(gx, x_mul(gy, t))) lin.fail(names[m] + ";" + x.to_literal());
        }
        inv.sample();
        if (act(space, y_inverse(space, g), act(space, g, x)) != x ||
            act(space, zeta_inverse(z), act(space, z, x)) != x) {
            inv.fail(g.to_literal() + ";" + z.to_literal() + ";" + x.to_literal());
        }

        chamber.sample();
        for (const auto& member : chambers) {
            std::vector<XVector> imgs;
            for (const auto& b : member.basis()) imgs.push_back(act(space, g, b));
            if (echelonize(space, imgs, 0) != member) chamber.fail(g.to_literal() + ";" + member.to_literal());
        }

        if (i < l) {
            conj.sample();
            const GeneratorAction c = zeta_conjugate(space, z, g);
            const XVector lhs = act(space, z, act(space, g, act(space, zeta_inverse(z), x)));
            if (lhs != act(space, c, x)) conj.fail(z.to_literal() + ";" + g.to_literal() + ";" + x.to_literal());
        }
    }
    return {std::move(sing).done(), std::move(form).done(),    std::move(lin).done(),
            std::move(inv).done(),  std::move(chamber).done(), std::move(conj).done()};
}

}  // namespace polarepi
