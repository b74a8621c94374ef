#pragma once

/**
 * @file subring.hpp
 * @brief Total subrings R ⊂ K given by valuation oracles, the maximal ideal m,
 *        the residue skew field K_R = R/m, left cosets sR^* and the
 *        conditions (C1)–(C3).
 */

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polarepi/forms.hpp"

namespace polarepi {

/// A finite-field element label: index into the residue table plus its text.
struct ResidueLabel {
    int index = -1;  ///< −1 for an opaque residue
    std::string text;
};

class TotalSubring {
public:
    /// {x + iy : min(v_p(x), v_p(y)) ≥ 0} for an inert prime p ≡ 3 (mod 4); residue F_{p²}.
    static TotalSubring inert_gaussian(unsigned long p = 3);
    /// {a : v_2(N(a)) ≥ 0} in the rational quaternions; v(a) = v_2(N(a))/2, residue F_4.
    static TotalSubring ramified_quaternion(unsigned long p = 2);
    /// Valuation ring of one Gaussian prime above a split p ≡ 1 (mod 4). Not
    /// stable under complex conjugation, so (C1) fails: a negative control.
    static TotalSubring split_gaussian(unsigned long p = 5);

    const std::string& tag() const noexcept;
    FieldKind kind() const noexcept;
    unsigned long prime() const noexcept;

    /// Valuation of a nonzero element; throws AlgebraError for zero.
    Rational valuation(const Scalar& a) const;
    /// Smallest positive value of the valuation.
    Rational step() const;
    Scalar uniformizer() const;

    bool contains(const Scalar& a) const;
    bool in_m(const Scalar& a) const;
    bool is_unit(const Scalar& a) const { return !a.is_zero() && contains(a) && contains(a.inverse()); }

    /**
     * Some k ∈ K_0 = Q with v(x − k) ≥ target, or nullopt when no such k
     * exists. Throws when the ring does not provide the hook.
     */
    std::optional<Scalar> k0_shift(const Scalar& x, const Rational& target) const;
    /// Some r ∈ K_0 ∩ sR^*, or nullopt when the intersection is empty.
    std::optional<Scalar> k0_in_coset(const Scalar& s) const;
    bool has_k0_hooks() const noexcept;

    /// Representatives of R/m with labels; empty when the ring has none.
    const std::vector<std::pair<Scalar, std::string>>& residue_table() const;
    /// Multiplication and addition tables on residue indices, computed
    /// independently of the representatives.
    int table_add(int a, int b) const;
    int table_mul(int a, int b) const;

    /// Random element of R (nonzero), biased towards small valuations.
    Scalar sample_element(Sampler& rng, const ScalarShape& shape) const;
    /// Random element of m (nonzero).
    Scalar sample_m(Sampler& rng, const ScalarShape& shape) const;

    struct Impl;

private:
    explicit TotalSubring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Builds a ring from its config tag: inert-gaussian, ramified-quaternion,
/// split-gaussian-negative-control.
TotalSubring total_subring_from_tag(std::string_view tag, unsigned long p);

/// An element of K_R, carried by a representative in R.
class ResidueScalar {
public:
    ResidueScalar(TotalSubring ring, Scalar rep);

    const Scalar& rep() const noexcept { return rep_; }
    const TotalSubring& ring() const noexcept { return ring_; }
    bool is_zero() const { return ring_.in_m(rep_); }

    ResidueScalar operator+(const ResidueScalar& o) const { return {ring_, rep_ + o.rep_}; }
    ResidueScalar operator-(const ResidueScalar& o) const { return {ring_, rep_ - o.rep_}; }
    ResidueScalar operator*(const ResidueScalar& o) const { return {ring_, rep_ * o.rep_}; }
    ResidueScalar operator-() const { return {ring_, -rep_}; }
    /// Throws AlgebraError for a residue of m.
    ResidueScalar inverse() const;

    friend bool operator==(const ResidueScalar& a, const ResidueScalar& b) { return a.ring_.in_m(a.rep_ - b.rep_); }

private:
    TotalSubring ring_;
    Scalar rep_;
};

/// Finite-field label of a residue, or an opaque label when there is no table.
ResidueLabel residue_canonical(const ResidueScalar& x);

/// A left coset sR^*.
struct CosetSpec {
    Scalar s;
};

bool same_coset(const TotalSubring& ring, const CosetSpec& a, const CosetSpec& b);

/// a^{σs} = s⁻¹ a^σ s.
Scalar sigma_s(const Scalar& a, const Scalar& s, Involution sigma);

class GenerationStarvation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Subring and valuation laws, totality, ideal property of m, residue field
/// axioms and agreement of the canonical labels with the finite field.
CheckList verify_subring(const TotalSubring& ring, Involution sigma, Sampler& rng, long samples,
                         const ScalarShape& shape);

/// (C1): a ↦ a^{σs} and its inverse map R into R.
CheckList check_c1(const TotalSubring& ring, const CosetSpec& coset, Involution sigma, Sampler& rng, long samples,
                   const ScalarShape& shape);

/**
 * Random (u, t) ∈ T with t ∈ sR (or t ∈ sm when @p in_m), or nullopt when
 * the attempt was not admissible.
 */
std::optional<TElement> sample_t_in_coset(const PseudoQuadraticSpace& pq, const TotalSubring& ring,
                                          const CosetSpec& coset, bool in_m, Sampler& rng, const ScalarShape& shape);

/// (C2) and (C3) by targeted refutation search. Throws GenerationStarvation
/// when fewer than samples/10 admissible pairs could be generated.
CheckList check_c2_c3(const PseudoQuadraticSpace& pq, const TotalSubring& ring, const CosetSpec& coset, Sampler& rng,
                      long samples, const ScalarShape& shape);

}  // namespace polarepi
