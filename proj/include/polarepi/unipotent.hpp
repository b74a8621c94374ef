#pragma once

/**
 * @file unipotent.hpp
 * @brief Root groups of BC_l(K, K_0, σ, L_0, q_0): the rank-two commutator
 *        calculus of A_2(K^op) and BC_2, the generator actions y_i on X and
 *        the renormalizing maps ζ_i(m).
 *
 * Everything acts on the right: x^{gh} = (x^g)^h, and [g, h] = g⁻¹h⁻¹gh.
 * Normal forms are collected in ascending root order.
 */

#include <string>
#include <variant>

#include "polarepi/polar.hpp"

namespace polarepi {

/// x_1(a) x_2(b) x_3(c) in A_2(K^op); products of parameters use a ∗ b = b·a.
struct A2Word {
    Scalar a, b, c;
    friend bool operator==(const A2Word&, const A2Word&) = default;
    std::string to_literal() const;
};

A2Word a2_identity(FieldKind kind);
A2Word a2_mul(const A2Word& x, const A2Word& y);
A2Word a2_inv(const A2Word& x);
A2Word a2_commutator(const A2Word& x, const A2Word& y);

/// x_1(t1) x_2(k2) x_3(t3) x_4(k4) in BC_2(K, K_0, σ, L_0, q_0).
struct BC2Word {
    TElement t1;
    Scalar k2;
    TElement t3;
    Scalar k4;
    friend bool operator==(const BC2Word&, const BC2Word&) = default;
    std::string to_literal() const;
};

BC2Word bc2_identity(const PseudoQuadraticSpace& pq);
BC2Word bc2_letter1(const PseudoQuadraticSpace& pq, const TElement& t);
BC2Word bc2_letter2(const PseudoQuadraticSpace& pq, const Scalar& k);
BC2Word bc2_letter3(const PseudoQuadraticSpace& pq, const TElement& t);
BC2Word bc2_letter4(const PseudoQuadraticSpace& pq, const Scalar& k);
BC2Word bc2_mul(const PseudoQuadraticSpace& pq, const BC2Word& x, const BC2Word& y);
BC2Word bc2_inv(const PseudoQuadraticSpace& pq, const BC2Word& x);
BC2Word bc2_commutator(const PseudoQuadraticSpace& pq, const BC2Word& x, const BC2Word& y);

/// y_i(k) for i < l, y_l(w, t) for i = l.
struct GeneratorAction {
    int index = 1;
    std::variant<Scalar, TElement> param;

    bool is_long() const noexcept { return std::holds_alternative<TElement>(param); }
    const Scalar& k() const { return std::get<Scalar>(param); }
    const TElement& wt() const { return std::get<TElement>(param); }
    friend bool operator==(const GeneratorAction&, const GeneratorAction&) = default;
    std::string to_literal() const;
};

GeneratorAction y_short(const PolarSpace& space, int index, Scalar k);
GeneratorAction y_long(const PolarSpace& space, TElement wt);
GeneratorAction y_inverse(const PolarSpace& space, const GeneratorAction& g);

XVector act(const PolarSpace& space, const GeneratorAction& g, const XVector& x);

/// Interior root of the pair (y_i, y_{i+1}), i ≤ l − 2: the map realizing x_2(u).
XVector act_a2_interior(const PolarSpace& space, int i, const Scalar& u, const XVector& x);
/// x_2(c) of the BC_2 pair (y_l ↔ x_1, y_{l-1} ↔ x_4).
XVector act_bc2_x2(const PolarSpace& space, const Scalar& c, const XVector& x);
/// x_3(u, r) of the BC_2 pair.
XVector act_bc2_x3(const PolarSpace& space, const TElement& ur, const XVector& x);

/// x_1(a) x_2(b) x_3(c) with x_1 ↔ y_i and x_3 ↔ y_{i+1}.
XVector act_a2_word(const PolarSpace& space, int i, const A2Word& w, const XVector& x);
/// x_1 ↔ y_l, x_4 ↔ y_{l-1}.
XVector act_bc2_word(const PolarSpace& space, const BC2Word& w, const XVector& x);

/// ζ_i(m): a_{2i-1} ↦ m a_{2i-1}, a_{2i} ↦ m^{-σ} a_{2i}.
struct ZetaAutomorphism {
    int index = 1;
    Scalar m;
    friend bool operator==(const ZetaAutomorphism&, const ZetaAutomorphism&) = default;
    std::string to_literal() const;
};

ZetaAutomorphism zeta(const PolarSpace& space, int index, Scalar m);
ZetaAutomorphism zeta_inverse(const ZetaAutomorphism& z);
XVector act(const PolarSpace& space, const ZetaAutomorphism& z, const XVector& x);

class UnsupportedIndex : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

/// ζ_i(m)⁻¹ y_j(k) ζ_i(m) for j < l. Throws UnsupportedIndex for j = l.
GeneratorAction zeta_conjugate(const PolarSpace& space, const ZetaAutomorphism& z, const GeneratorAction& g);

GeneratorAction random_generator(const PolarSpace& space, int index, Sampler& rng, const ScalarShape& shape);

/// `y<i>(<scalar>)` or `y<l>((w...),t)`.
GeneratorAction parse_generator(const PolarSpace& space, std::string_view text);
/// `zeta<i>(<scalar>)`.
ZetaAutomorphism parse_zeta(const PolarSpace& space, std::string_view text);

/// Deliberate defects for exercising the relation checks.
enum class Corruption { None, FlipA2Sign, FlipBC2Sign };

/**
 * Group laws of both collectors, the formal commutator relations, and the
 * extensional comparison of composed actions on sampled vectors.
 */
CheckList verify_relations(const PolarSpace& space, Sampler& rng, long samples, const ScalarShape& shape,
                           Corruption corruption = Corruption::None);

/// Every y_i and ζ_i preserves singularity and the form, and fixes the standard chamber.
CheckList verify_actions(const PolarSpace& space, Sampler& rng, long samples, const ScalarShape& shape);

}  // namespace polarepi
