#pragma once

/**
 * @file forms.hpp
 * @brief Involutory sets, pseudo-quadratic spaces (K, K_0, σ, L_0, q_0) and
 *        the group T of pairs (w, t) with q_0(w) − t ∈ K_0.
 */

#include <functional>
#include <string>
#include <vector>

#include "polarepi/report.hpp"
#include "polarepi/sampler.hpp"
#include "polarepi/scalar.hpp"

namespace polarepi {

using L0Vector = std::vector<Scalar>;

L0Vector l0_zero(FieldKind kind, std::size_t dim);
L0Vector l0_add(const L0Vector& a, const L0Vector& b);
L0Vector l0_sub(const L0Vector& a, const L0Vector& b);
L0Vector l0_neg(const L0Vector& a);
/// Right scalar action v·t.
L0Vector l0_mul(const L0Vector& v, const Scalar& t);
bool l0_is_zero(const L0Vector& v);

/// x = k + c with k ∈ K_0 and c in a fixed additive complement.
struct K0Split {
    Scalar k;
    Scalar c;
};

/**
 * An involutory set K_0 of (K, σ), given by a membership oracle and a
 * decomposition onto a fixed additive complement. The decomposition is the
 * one place where "modulo K_0" becomes computable.
 */
class InvolutorySet {
public:
    using Membership = std::function<bool(const Scalar&)>;
    using Splitter = std::function<K0Split(const Scalar&)>;

    InvolutorySet(std::string tag, Membership contains, Splitter split, Membership in_complement);

    /// K_0 = Q inside Q, Q(i) or the rational quaternions; the complement is
    /// the pure imaginary part.
    static InvolutorySet rational_center();
    /// {0}: not an involutory set (1 is missing). Kept as a negative control.
    static InvolutorySet zero_set();

    const std::string& tag() const noexcept { return tag_; }
    bool contains(const Scalar& x) const { return contains_(x); }
    K0Split decompose(const Scalar& x) const { return split_(x); }
    bool in_complement(const Scalar& c) const { return in_complement_(c); }
    bool congruent(const Scalar& a, const Scalar& b) const { return contains(a - b); }

private:
    std::string tag_;
    Membership contains_;
    Splitter split_;
    Membership in_complement_;
};

/// Skew field axioms, the anti-automorphism and involution laws of σ and
/// multiplicativity of the norm.
CheckList verify_field(FieldKind kind, Involution sigma, Sampler& rng, long samples, const ScalarShape& shape);

CheckList verify_involutory_set(const InvolutorySet& k0, FieldKind kind, Involution sigma, Sampler& rng,
                                long samples, const ScalarShape& shape);

class NotInT : public AlgebraError {
public:
    explicit NotInT(const Scalar& residual)
        : AlgebraError("not in T: q0(w) - t = " + residual.to_literal() + " is not in K0")
    {
    }
};

/**
 * Anisotropic skew-hermitian pseudo-quadratic space with
 * q_0(v) = Σ v_i^σ δ v_i and f_0(v, w) = Σ v_i^σ (δ − δ^σ) w_i.
 */
class PseudoQuadraticSpace {
public:
    PseudoQuadraticSpace(FieldKind kind, Involution sigma, InvolutorySet k0, std::size_t dim_l0, Scalar delta);

    FieldKind kind() const noexcept { return kind_; }
    Involution involution() const noexcept { return sigma_; }
    const InvolutorySet& k0() const noexcept { return k0_; }
    std::size_t dim_l0() const noexcept { return dim_l0_; }
    const Scalar& delta() const noexcept { return delta_; }

    Scalar sigma(const Scalar& a) const { return apply_sigma(a, sigma_); }
    Scalar zero() const { return Scalar::zero(kind_); }
    Scalar one() const { return Scalar::one(kind_); }
    L0Vector l0_zero() const { return polarepi::l0_zero(kind_, dim_l0_); }

    Scalar q0(const L0Vector& v) const;
    Scalar f0(const L0Vector& v, const L0Vector& w) const;

    Scalar random_k0(Sampler& rng, const ScalarShape& shape) const;
    L0Vector random_l0(Sampler& rng, const ScalarShape& shape) const;

private:
    FieldKind kind_;
    Involution sigma_;
    InvolutorySet k0_;
    std::size_t dim_l0_;
    Scalar delta_;
    Scalar form_coeff_;  // δ − δ^σ
};

/// Q(i) with complex conjugation, δ = i, L_0 = K, K_0 = Q.
PseudoQuadraticSpace gaussian_pq_space();
/// Rational quaternions with the standard conjugation, δ = i, L_0 = K, K_0 = Q.
PseudoQuadraticSpace quaternion_pq_space();

/// Pseudo-quadratic laws, skew-hermitian laws and sampled anisotropy.
CheckList verify_pq_space(const PseudoQuadraticSpace& space, Sampler& rng, long samples, const ScalarShape& shape);

/// An element (w, t) of T.
class TElement {
public:
    const L0Vector& w() const noexcept { return w_; }
    const Scalar& t() const noexcept { return t_; }

    friend bool operator==(const TElement& a, const TElement& b) { return a.w_ == b.w_ && a.t_ == b.t_; }

    std::string to_literal() const;

private:
    friend TElement t_make(const PseudoQuadraticSpace&, L0Vector, Scalar);
    friend TElement t_mul(const PseudoQuadraticSpace&, const TElement&, const TElement&);
    friend TElement t_inv(const PseudoQuadraticSpace&, const TElement&);
    TElement(L0Vector w, Scalar t) : w_(std::move(w)), t_(std::move(t)) {}

    L0Vector w_;
    Scalar t_;
};

/// Throws NotInT unless q_0(w) − t ∈ K_0.
TElement t_make(const PseudoQuadraticSpace& space, L0Vector w, Scalar t);
TElement t_identity(const PseudoQuadraticSpace& space);
/// (w,t)·(v,r) = (w+v, t+r+f_0(v,w)).
TElement t_mul(const PseudoQuadraticSpace& space, const TElement& x, const TElement& y);
/// (w,t)⁻¹ = (−w, −t^σ).
TElement t_inv(const PseudoQuadraticSpace& space, const TElement& x);
/// Random element: t = q_0(w) − k for random w and k ∈ K_0.
TElement t_random(const PseudoQuadraticSpace& space, Sampler& rng, const ScalarShape& shape);

/// Group axioms of T and f_0(w,w) = t − t^σ.
CheckList verify_t_group(const PseudoQuadraticSpace& space, Sampler& rng, long samples, const ScalarShape& shape);

std::string l0_literal(const L0Vector& v);

}  // namespace polarepi
