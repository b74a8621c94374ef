#pragma once

/**
 * @file polar.hpp
 * @brief The polar space BC_l(K, K_0, σ, L_0, q_0) on X = L_0 ⊕ K^{2l}.
 *
 * Vectors of X are right vector-space elements; scalars always act on the
 * right. Coordinates a_1 … a_{2l} are 1-based in the public API.
 *
 * The sesquilinear form on X is
 *
 *     f(x, y) = f_0(v, w) + Σ_i (a_{2i-1}^σ b_{2i} − a_{2i}^σ b_{2i-1}),
 *
 * the skew-hermitian form associated with
 * q(x) = q_0(v) + Σ_i a_{2i-1}^σ a_{2i}. With this form a span is singular
 * iff q of each basis vector lies in K_0 and the basis is pairwise
 * orthogonal.
 */

#include <optional>
#include <string>
#include <vector>

#include "polarepi/forms.hpp"

namespace polarepi {

struct XVector {
    L0Vector v;
    std::vector<Scalar> a;

    friend bool operator==(const XVector&, const XVector&) = default;

    /// Coordinate a_idx, 1-based.
    const Scalar& coord(std::size_t idx) const { return a.at(idx - 1); }
    Scalar& coord(std::size_t idx) { return a.at(idx - 1); }

    bool coords_zero() const;
    bool is_zero() const { return coords_zero() && l0_is_zero(v); }

    /// `(v_1,…|a_1,…,a_2l)`
    std::string to_literal() const;
};

/// Comma-separated scalar literals; empty text gives an empty list.
std::vector<Scalar> parse_scalar_list(std::string_view text, FieldKind kind);

XVector x_add(const XVector& x, const XVector& y);
XVector x_sub(const XVector& x, const XVector& y);
XVector x_mul(const XVector& x, const Scalar& t);

class NotSingular : public AlgebraError {
public:
    NotSingular(std::string witness, std::string why)
        : AlgebraError("not singular: " + why + " (witness " + witness + ")"), witness_(std::move(witness))
    {
    }
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class PolarSpace {
public:
    PolarSpace(PseudoQuadraticSpace pq, int rank);

    const PseudoQuadraticSpace& pq() const noexcept { return pq_; }
    FieldKind kind() const noexcept { return pq_.kind(); }
    int rank() const noexcept { return rank_; }
    std::size_t coords() const noexcept { return static_cast<std::size_t>(2 * rank_); }
    Scalar sigma(const Scalar& a) const { return pq_.sigma(a); }

    XVector zero() const;
    /// e_idx (1-based coordinate vector).
    XVector basis(std::size_t idx) const;
    XVector make(L0Vector v, std::vector<Scalar> a) const;

    Scalar q(const XVector& x) const;
    Scalar f(const XVector& x, const XVector& y) const;
    bool in_k0(const Scalar& s) const { return pq_.k0().contains(s); }
    bool singular_vector(const XVector& x) const { return in_k0(q(x)); }

    XVector random_vector(Sampler& rng, const ScalarShape& shape) const;
    XVector parse_vector(std::string_view text) const;

private:
    PseudoQuadraticSpace pq_;
    int rank_;
};

/// q on X.
inline Scalar q_on_X(const PolarSpace& space, const XVector& x) { return space.q(x); }
/// The associated skew-hermitian form on X.
inline Scalar f_on_X(const PolarSpace& space, const XVector& x, const XVector& y) { return space.f(x, y); }

/// A point ⟨x⟩; the stored representative has its last nonzero coordinate 1.
class ProjectivePoint {
public:
    static ProjectivePoint make(const PolarSpace& space, const XVector& x);

    const XVector& rep() const noexcept { return rep_; }
    friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
    std::string to_literal() const { return rep_.to_literal(); }

private:
    explicit ProjectivePoint(XVector rep) : rep_(std::move(rep)) {}
    XVector rep_;
};

/// Reduced echelon basis (pivots on the last nonzero coordinate, pivot 1).
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::vector<XVector> basis) : basis_(std::move(basis)) {}

    std::size_t rank() const noexcept { return basis_.size(); }
    const std::vector<XVector>& basis() const noexcept { return basis_; }
    friend bool operator==(const Subspace&, const Subspace&) = default;
    std::string to_literal() const;

private:
    std::vector<XVector> basis_;
};

/// Plain right-span echelon form; no singularity requirement.
std::vector<XVector> echelon_basis(const PolarSpace& space, std::vector<XVector> vectors);
std::size_t span_rank(const PolarSpace& space, const std::vector<XVector>& vectors);
bool span_contains(const PolarSpace& space, const std::vector<XVector>& basis, const XVector& x);

/**
 * Canonical echelon basis of a singular span. Throws NotSingular with a
 * witness x, q(x) ∉ K_0, when the span is not singular. After the basis-level
 * test, @p guard_samples random combinations are re-checked.
 */
Subspace echelonize(const PolarSpace& space, const std::vector<XVector>& vectors, int guard_samples = 100);

/// f(rep_p, rep_q) = 0.
bool collinear(const PolarSpace& space, const ProjectivePoint& p, const ProjectivePoint& q);

/// Points of @p s collinear with @p p. Throws AlgebraError when p ∈ s.
Subspace perp_filter(const PolarSpace& space, const Subspace& s, const ProjectivePoint& p);

/// ⟨e_2l⟩ ⊂ ⟨e_2l, e_{2l-2}⟩ ⊂ … (ranks 1 … l).
std::vector<Subspace> standard_chamber(const PolarSpace& space);

/**
 * Random singular vector orthogonal to every vector in @p others, or nullopt
 * when the attempt hit a degenerate system (callers retry). Needs
 * others.size() < l.
 */
std::optional<XVector> random_perp_vector(const PolarSpace& space, const std::vector<XVector>& others,
                                          Sampler& rng, const ScalarShape& shape);

/**
 * Solves Σ_j c_rj u_j = d_r (coefficients on the left of the unknowns).
 * Free unknowns are drawn from @p rng when given, otherwise set to zero.
 * Returns nullopt for an inconsistent system.
 */
std::optional<std::vector<Scalar>> solve_left_linear(FieldKind kind, std::vector<std::vector<Scalar>> rows,
                                                     std::vector<Scalar> rhs, Sampler* rng,
                                                     const ScalarShape& shape = {});

/// Random point of the polar space.
ProjectivePoint random_point(const PolarSpace& space, Sampler& rng, const ScalarShape& shape);

/// Random singular vector collinear with all of @p others and independent of them.
XVector random_collinear_vector(const PolarSpace& space, const std::vector<XVector>& others, Sampler& rng,
                                const ScalarShape& shape);

}  // namespace polarepi
