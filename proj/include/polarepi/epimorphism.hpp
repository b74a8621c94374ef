#pragma once

/**
 * @file epimorphism.hpp
 * @brief The epimorphism ρ of BC_l(K, K_0, σ, L_0, q_0) determined by a total
 *        subring R and a left coset sR^*, together with its residue target
 *        space, a constructive lift and the descent test for root groups.
 *
 * Residue objects are carried by representatives. The target space has
 * coordinates (λ | α_1, …, α_2l) over K_R, where λ is the coordinate of
 * the L0' part with respect to a generator c of L0' modulo L0''
 * (absent when L0' = L0'').
 */

#include <optional>
#include <string>
#include <vector>

#include "polarepi/subring.hpp"
#include "polarepi/unipotent.hpp"

namespace polarepi {

enum class CaseVariant { I, II };
std::string_view to_string(CaseVariant c);

struct CaseTag {
    CaseVariant variant = CaseVariant::I;
    Scalar r;  ///< the representative of sR^* used by the construction
};

/// The coset case could not be decided (the ring provides no K_0 hooks).
class CaseUndecided : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

/// The data do not satisfy the hypotheses of the construction.
class ContextInvalid : public AlgebraError {
public:
    using AlgebraError::AlgebraError;
};

CaseTag classify_coset(const PseudoQuadraticSpace& pq, const TotalSubring& ring, const Scalar& s);

/// A vector of L_0' standing for its class modulo L_0''.
struct ResidueVector {
    L0Vector rep;
};

/// A vector of the residue target space; lbar has 0 or 1 entries.
struct TargetVector {
    std::vector<ResidueScalar> lbar;
    std::vector<ResidueScalar> a;
};

/// Target point, normalized so that its last nonzero coordinate is 1.
class ResiduePoint {
public:
    const TargetVector& rep() const noexcept { return rep_; }
    std::string to_literal() const;
    friend bool operator==(const ResiduePoint& x, const ResiduePoint& y);

private:
    friend class EpimorphismContext;
    explicit ResiduePoint(TargetVector rep) : rep_(std::move(rep)) {}
    TargetVector rep_;
};

/// Reduced echelon basis over K_R.
struct ResidueSubspace {
    std::vector<TargetVector> basis;
    std::size_t rank() const noexcept { return basis.size(); }
};

class EpimorphismContext {
public:
    /**
     * Validates (C1)–(C3) and the target invariants on @p samples random
     * draws, classifies the coset and fixes the target space. Throws
     * ContextInvalid when a hypothesis is refuted.
     */
    static EpimorphismContext build(PolarSpace space, TotalSubring ring, Scalar s, Sampler& rng, long samples = 100,
                                    const ScalarShape& shape = {});

    const PolarSpace& space() const noexcept { return space_; }
    const TotalSubring& ring() const noexcept { return ring_; }
    /// The coset datum as given.
    const Scalar& s_given() const noexcept { return s_given_; }
    const CaseTag& case_tag() const noexcept { return case_; }
    /// The representative used throughout (the r of the case lemma).
    const Scalar& s() const noexcept { return case_.r; }
    int rank() const noexcept { return space_.rank(); }
    std::size_t lbar_dim() const noexcept { return generator_ ? 1 : 0; }
    const std::optional<Scalar>& lbar_generator() const noexcept { return generator_; }

    ResidueScalar residue(const Scalar& a) const { return ResidueScalar(ring_, a); }
    ResidueScalar rzero() const { return residue(Scalar::zero(space_.kind())); }
    ResidueScalar rone() const { return residue(Scalar::one(space_.kind())); }
    /// σ_R, induced by a ↦ s⁻¹ a^σ s.
    ResidueScalar sigma_r(const ResidueScalar& a) const;
    /// Residue of s⁻¹ s^σ: 1 in Case I, −1 in Case II.
    ResidueScalar twist() const { return twist_; }

    // --- L_0', L_0'', the involutory set K̄_0 ---
    bool in_l0_prime(const L0Vector& v) const;
    bool in_l0_second(const L0Vector& v) const;
    ResidueVector residue_vector(const L0Vector& v) const;
    bool same_residue(const ResidueVector& v, const ResidueVector& w) const;
    ResidueVector scale(const ResidueVector& v, const ResidueScalar& k) const;
    /// Coordinate of v with respect to the generator of L̄_0.
    std::vector<ResidueScalar> lbar_coords(const ResidueVector& v) const;
    ResidueVector from_lbar_coords(const std::vector<ResidueScalar>& lambda) const;
    /// a ∈ K̄_0 = (s⁻¹K_0 ∩ R) + m. Case I only.
    bool in_k0_bar(const ResidueScalar& a) const;
    /// Equality of residues, modulo K̄_0 in Case I.
    bool q_equal(const ResidueScalar& a, const ResidueScalar& b) const;

    ResidueScalar q0_bar(const ResidueVector& v) const;
    ResidueScalar f0_bar(const ResidueVector& v, const ResidueVector& w) const;

    // --- the target polar space ---
    ResidueScalar q_bar(const TargetVector& x) const;
    ResidueScalar f_bar(const TargetVector& x, const TargetVector& y) const;
    bool target_singular(const TargetVector& x) const;
    bool target_collinear(const ResiduePoint& x, const ResiduePoint& y) const;
    ResiduePoint make_target_point(const TargetVector& x) const;
    ResidueSubspace target_echelon(std::vector<TargetVector> vectors) const;
    bool target_span_contains(const ResidueSubspace& s, const TargetVector& x) const;
    TargetVector target_mul(const TargetVector& x, const ResidueScalar& k) const;
    TargetVector target_add(const TargetVector& x, const TargetVector& y) const;
    ResiduePoint random_target_point(Sampler& rng, const ScalarShape& shape) const;
    ResidueScalar random_residue(Sampler& rng, const ScalarShape& shape) const;
    /// Parses `(λ|α_1,…,α_2l)`; entries are residue labels or scalar literals.
    ResiduePoint parse_target_point(std::string_view text) const;
    /// y_i(k̄) on the target space, i < l.
    TargetVector target_short_action(int index, const ResidueScalar& k, const TargetVector& x) const;

    // --- ρ ---
    /// Twisted coordinates: a_i for odd i, s⁻¹a_i for even i.
    std::vector<Scalar> twisted(const XVector& x) const;
    bool normed(const XVector& x) const;
    XVector normalize(const XVector& x) const;
    ResiduePoint rho_point(const ProjectivePoint& p) const;
    ResiduePoint rho_vector(const XVector& x) const;
    ResidueSubspace rho_subspace(const Subspace& s) const;
    /// A preimage of @p p; representatives are randomized when @p rng is given.
    ProjectivePoint lift_point(const ResiduePoint& p, Sampler* rng = nullptr, const ScalarShape& shape = {}) const;

private:
    EpimorphismContext(PolarSpace space, TotalSubring ring, Scalar s_given, CaseTag tag);

    TargetVector reduce_normed(const XVector& x) const;

    PolarSpace space_;
    TotalSubring ring_;
    Scalar s_given_;
    CaseTag case_;
    std::optional<Scalar> generator_;
    ResidueScalar twist_;
};

/// Outcome of the descent test for one root group element.
struct DescentReport {
    bool theorem_descends = false;  ///< k ∈ R, respectively t ∈ sR
    bool separated = false;         ///< a pair with equal images and different image after g was found
    long samples = 0;
    std::optional<std::string> witness;
    /// A point where ρ(p^g) differs from the induced residue action (short roots, k ∈ R).
    std::optional<std::string> action_mismatch;
    std::string detail;
};

/**
 * Empirical descent test: pairs p, q with ρ(p) = ρ(q) are compared after g.
 * For k ∉ R (t ∉ sR) the explicit coordinate-vector witness pair is run
 * first.
 */
DescentReport descent_check(const EpimorphismContext& ctx, const GeneratorAction& g, Sampler& rng, long samples,
                            const ScalarShape& shape = {});

/// Invariants of the context: case data, σ_R, K̄_0, L_0' module laws.
CheckList verify_case(const EpimorphismContext& ctx, Sampler& rng, long samples, const ScalarShape& shape = {});

/// Laws of the target space: involutory set and pseudo-quadratic laws in
/// Case I, symmetric bilinear and quadratic laws in Case II, anisotropy.
CheckList verify_target_laws(const EpimorphismContext& ctx, Sampler& rng, long samples,
                             const ScalarShape& shape = {});

struct EpimorphismBudget {
    long scalings = 1000;
    long pairs = 1000;
    long triples = 1000;
    long planes = 200;
    long lifts = 1000;
    long descent = 100;
};

/// Representative invariance, collinearity, lines, subspaces, ρ∘lift = id
/// and the descent dichotomy.
CheckList verify_epimorphism(const EpimorphismContext& ctx, Sampler& rng, const EpimorphismBudget& budget,
                             const ScalarShape& shape = {});

}  // namespace polarepi
