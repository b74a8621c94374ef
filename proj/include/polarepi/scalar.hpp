#pragma once

/**
 * @file scalar.hpp
 * @brief Exact arithmetic in the three shipped skew fields.
 *
 * Every element is stored as four GMP rationals (a + b i + c j + d k) together
 * with a field tag. Rationals use only the first component, Gaussian rationals
 * the first two. Arithmetic between different tags is refused rather than
 * promoted, so a formula can never silently leave its field.
 */

#include <array>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace polarepi {

using Rational = mpq_class;
using Integer = mpz_class;

enum class FieldKind { Rational, Gaussian, Quaternion };

std::string_view to_string(FieldKind kind);
FieldKind field_kind_from_string(std::string_view tag);

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public AlgebraError {
public:
    DivisionByZero() : AlgebraError("division by zero") {}
};

class FieldMismatch : public AlgebraError {
public:
    FieldMismatch(FieldKind a, FieldKind b);
};

class Scalar {
public:
    Scalar() = default;
    explicit Scalar(FieldKind kind) : kind_(kind) {}
    Scalar(FieldKind kind, Rational a, Rational b = 0, Rational c = 0, Rational d = 0);

    static Scalar zero(FieldKind kind) { return Scalar(kind); }
    static Scalar one(FieldKind kind) { return Scalar(kind, 1); }
    static Scalar from_int(FieldKind kind, long v) { return Scalar(kind, v); }
    /// Imaginary unit i (Gaussian or quaternion), j or k (quaternion only).
    static Scalar unit(FieldKind kind, char which);

    FieldKind kind() const noexcept { return kind_; }
    const Rational& re() const noexcept { return c_[0]; }
    const Rational& operator[](std::size_t idx) const { return c_.at(idx); }
    std::size_t components() const noexcept;

    bool is_zero() const;
    bool is_rational() const;  ///< all imaginary parts vanish

    /// Reduced norm a·conj(a) = a² + b² + c² + d².
    Rational norm() const;
    /// Real part; the K_0 = Q projection used by the shipped instances.
    Scalar real_part() const { return Scalar(kind_, c_[0]); }
    Scalar imaginary_part() const;

    Scalar conj() const;
    Scalar inverse() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    /// Right division a·b⁻¹.
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    /// Scale by a rational (central, so side does not matter).
    Scalar scaled(const Rational& r) const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical literal, e.g. `1/2-3*i+k`. parse(to_literal(x)) == x.
    std::string to_literal() const;

private:
    void require_same(const Scalar& o) const;

    FieldKind kind_ = FieldKind::Rational;
    std::array<Rational, 4> c_{};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses `n`, `n/d`, `x+y*i`, `a+b*i+c*j+d*k` (terms optional, whitespace
/// ignored). Units not present in @p kind are rejected.
Scalar parse_scalar(std::string_view text, FieldKind kind);

/// Multiplication in the opposite ring: a ∗ b := b·a.
struct OppositeView {
    static Scalar mul(const Scalar& a, const Scalar& b) { return b * a; }
};

enum class Involution { Identity, GaussianConjugation, QuaternionConjugation };

std::string_view to_string(Involution inv);
Involution involution_from_string(std::string_view tag);

/// True when @p inv is an involutive anti-automorphism of the field @p kind.
bool compatible(Involution inv, FieldKind kind);

/// a^σ. Throws AlgebraError when the tags do not fit together.
Scalar apply_sigma(const Scalar& a, Involution inv);

/// 2-adic (or p-adic) valuation of a nonzero rational.
long padic_valuation(const Rational& r, unsigned long p);
long padic_valuation(const Integer& z, unsigned long p);

}  // namespace polarepi
