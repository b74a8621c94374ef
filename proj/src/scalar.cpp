#include "polarepi/scalar.hpp"

#include <cctype>
#include <sstream>

namespace polarepi {

std::string_view to_string(FieldKind kind)
{
    switch (kind) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Gaussian: return "gaussian";
    case FieldKind::Quaternion: return "quaternion";
    }
    return "?";
}

FieldKind field_kind_from_string(std::string_view tag)
{
    if (tag == "rational") return FieldKind::Rational;
    if (tag == "gaussian") return FieldKind::Gaussian;
    if (tag == "quaternion") return FieldKind::Quaternion;
    throw AlgebraError("unknown field tag '" + std::string(tag) + "'");
}

FieldMismatch::FieldMismatch(FieldKind a, FieldKind b)
    : AlgebraError("mixed field tags: " + std::string(to_string(a)) + " vs " + std::string(to_string(b)))
{
}

Scalar::Scalar(FieldKind kind, Rational a, Rational b, Rational c, Rational d) : kind_(kind)
{
    c_[0] = std::move(a);
    c_[1] = std::move(b);
    c_[2] = std::move(c);
    c_[3] = std::move(d);
    const std::size_t n = components();
    for (std::size_t idx = n; idx < 4; ++idx) {
        if (c_[idx] != 0) {
            throw AlgebraError("component " + std::to_string(idx) + " not available in field " +
                               std::string(to_string(kind)));
        }
    }
}

Scalar Scalar::unit(FieldKind kind, char which)
{
    switch (which) {
    case 'i':
        if (kind == FieldKind::Rational) break;
        return Scalar(kind, 0, 1);
    case 'j':
        if (kind != FieldKind::Quaternion) break;
        return Scalar(kind, 0, 0, 1);
    case 'k':
        if (kind != FieldKind::Quaternion) break;
        return Scalar(kind, 0, 0, 0, 1);
    default: break;
    }
    throw AlgebraError(std::string("unit '") + which + "' not available in field " +
                       std::string(to_string(kind)));
}

std::size_t Scalar::components() const noexcept
{
    switch (kind_) {
    case FieldKind::Rational: return 1;
    case FieldKind::Gaussian: return 2;
    case FieldKind::Quaternion: return 4;
    }
    return 4;
}

bool Scalar::is_zero() const
{
    return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

bool Scalar::is_rational() const
{
    return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
}

Rational Scalar::norm() const
{
    Rational n = c_[0] * c_[0];
    for (std::size_t idx = 1; idx < components(); ++idx) n += c_[idx] * c_[idx];
    return n;
}

Scalar Scalar::imaginary_part() const
{
    Scalar out = *this;
    out.c_[0] = 0;
    return out;
}

Scalar Scalar::conj() const
{
    Scalar out = *this;
    for (std::size_t idx = 1; idx < 4; ++idx) out.c_[idx] = -out.c_[idx];
    return out;
}

Scalar Scalar::inverse() const
{
    if (is_zero()) throw DivisionByZero();
    Rational n = norm();
    Scalar out = conj();
    for (auto& x : out.c_) x /= n;
    return out;
}

Scalar Scalar::operator-() const
{
    Scalar out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

void Scalar::require_same(const Scalar& o) const
{
    if (kind_ != o.kind_) throw FieldMismatch(kind_, o.kind_);
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    require_same(o);
    for (std::size_t idx = 0; idx < components(); ++idx) c_[idx] += o.c_[idx];
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    require_same(o);
    for (std::size_t idx = 0; idx < components(); ++idx) c_[idx] -= o.c_[idx];
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    *this = *this * o;
    return *this;
}

Scalar operator*(const Scalar& x, const Scalar& y)
{
    x.require_same(y);
    Scalar out(x.kind_);
    const auto& [a1, b1, c1, d1] = x.c_;
    const auto& [a2, b2, c2, d2] = y.c_;
    switch (x.kind_) {
    case FieldKind::Rational:
        out.c_[0] = a1 * a2;
        break;
    case FieldKind::Gaussian:
        out.c_[0] = a1 * a2 - b1 * b2;
        out.c_[1] = a1 * b2 + b1 * a2;
        break;
    case FieldKind::Quaternion:
        out.c_[0] = a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2;
        out.c_[1] = a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2;
        out.c_[2] = a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2;
        out.c_[3] = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2;
        break;
    }
    return out;
}

Scalar Scalar::scaled(const Rational& r) const
{
    Scalar out = *this;
    for (std::size_t idx = 0; idx < components(); ++idx) out.c_[idx] *= r;
    return out;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    return a.kind_ == b.kind_ && a.c_ == b.c_;
}

std::string Scalar::to_literal() const
{
    static constexpr char units[4] = {'\0', 'i', 'j', 'k'};
    std::string out;
    for (std::size_t idx = 0; idx < components(); ++idx) {
        const Rational& c = c_[idx];
        if (sgn(c) == 0) continue;
        std::string term;
        if (idx == 0) {
            term = c.get_str();
        } else if (c == 1) {
            term = std::string(1, units[idx]);
        } else if (c == -1) {
            term = std::string("-") + units[idx];
        } else {
            term = c.get_str() + "*" + units[idx];
        }
        if (!out.empty() && term.front() != '-') out += '+';
        out += term;
    }
    return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.to_literal();
}

namespace {

class LiteralReader {
public:
    LiteralReader(std::string_view text, FieldKind kind) : kind_(kind)
    {
        for (char ch : text) {
            if (!std::isspace(static_cast<unsigned char>(ch))) text_ += ch;
        }
    }

    Scalar read()
    {
        if (text_.empty()) fail("empty scalar literal");
        Scalar acc(kind_);
        while (pos_ < text_.size()) acc += read_term();
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw AlgebraError(what + " in scalar literal '" + text_ + "'");
    }

    bool at(char ch) const { return pos_ < text_.size() && text_[pos_] == ch; }

    std::string digits()
    {
        std::string out;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) out += text_[pos_++];
        return out;
    }

    Scalar read_term()
    {
        bool negative = false;
        while (at('+') || at('-')) {
            negative ^= at('-');
            ++pos_;
        }
        Rational coeff = 1;
        bool have_number = false;
        std::string num = digits();
        if (!num.empty()) {
            have_number = true;
            Integer n(num);
            Integer d = 1;
            if (at('/')) {
                ++pos_;
                std::string den = digits();
                if (den.empty()) fail("missing denominator");
                d = Integer(den);
                if (d == 0) fail("zero denominator");
            }
            coeff = Rational(n, d);
            coeff.canonicalize();
        }
        bool have_unit = false;
        char unit = '\0';
        if (at('*')) {
            if (!have_number) fail("dangling '*'");
            ++pos_;
            if (!(at('i') || at('j') || at('k'))) fail("expected unit after '*'");
        }
        if (at('i') || at('j') || at('k')) {
            unit = text_[pos_++];
            have_unit = true;
        }
        if (!have_number && !have_unit) fail("unexpected character");
        if (pos_ < text_.size() && !at('+') && !at('-')) fail("unexpected character");
        if (negative) coeff = -coeff;
        if (!have_unit) return Scalar(kind_, coeff);
        return Scalar::unit(kind_, unit).scaled(coeff);
    }

    std::string text_;
    std::size_t pos_ = 0;
    FieldKind kind_;
};

}  // namespace

Scalar parse_scalar(std::string_view text, FieldKind kind)
{
    return LiteralReader(text, kind).read();
}

std::string_view to_string(Involution inv)
{
    switch (inv) {
    case Involution::Identity: return "identity";
    case Involution::GaussianConjugation: return "gaussian-conjugation";
    case Involution::QuaternionConjugation: return "quaternion-conjugation";
    }
    return "?";
}

Involution involution_from_string(std::string_view tag)
{
    if (tag == "identity") return Involution::Identity;
    if (tag == "gaussian-conjugation") return Involution::GaussianConjugation;
    if (tag == "quaternion-conjugation") return Involution::QuaternionConjugation;
    throw AlgebraError("unknown involution tag '" + std::string(tag) + "'");
}

bool compatible(Involution inv, FieldKind kind)
{
    switch (inv) {
    // the identity is an anti-automorphism only of a commutative field
    case Involution::Identity: return kind != FieldKind::Quaternion;
    case Involution::GaussianConjugation: return kind == FieldKind::Gaussian;
    case Involution::QuaternionConjugation: return kind == FieldKind::Quaternion;
    }
    return false;
}

Scalar apply_sigma(const Scalar& a, Involution inv)
{
    if (!compatible(inv, a.kind())) {
        throw AlgebraError("involution " + std::string(to_string(inv)) + " incompatible with field " +
                           std::string(to_string(a.kind())));
    }
    return inv == Involution::Identity ? a : a.conj();
}

long padic_valuation(const Integer& z, unsigned long p)
{
    if (z == 0) throw AlgebraError("valuation of zero");
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), Integer(p).get_mpz_t()));
}

long padic_valuation(const Rational& r, unsigned long p)
{
    if (sgn(r) == 0) throw AlgebraError("valuation of zero");
    return padic_valuation(Integer(r.get_num()), p) - padic_valuation(Integer(r.get_den()), p);
}

}  // namespace polarepi
