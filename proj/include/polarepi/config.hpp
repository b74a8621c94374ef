#pragma once

/**
 * @file config.hpp
 * @brief Instance configuration: one field with involution and pseudo-quadratic
 *        space, one total subring, one coset. JSON syntax, scalars in the
 *        literal grammar.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polarepi/epimorphism.hpp"

namespace polarepi {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sample budgets per suite.
struct SampleBudget {
    long algebra = 10000;
    long t_group = 1000;
    long relations = 1000;
    long conditions = 10000;
    long target_laws = 1000;
    EpimorphismBudget epimorphism;

    /// Every budget replaced by @p n (the planes budget by n/5, descent by n/10).
    static SampleBudget uniform(long n);
};

struct InstanceConfig {
    std::string id;
    FieldKind field = FieldKind::Gaussian;
    Involution involution = Involution::GaussianConjugation;
    int l = 2;
    std::size_t dim_l0 = 1;
    Scalar delta;
    std::string k0 = "rational-center";
    std::string subring_kind;
    unsigned long p = 0;
    Scalar s;
    std::uint64_t seed = 0;
    SampleBudget samples;
    std::optional<CaseVariant> expect_case;
    std::optional<std::size_t> expect_residue_size;
    /// Checks that are meant to fail (negative controls).
    std::vector<std::string> expect_fail;

    PseudoQuadraticSpace pq_space() const;
    TotalSubring ring() const;
    ScalarShape shape() const { return ScalarShape{5, p, -2, 2}; }
};

/// Throws ConfigError on malformed JSON, unknown keys or bad literals.
InstanceConfig parse_config(std::string_view text);
InstanceConfig load_config(const std::string& path);

}  // namespace polarepi
