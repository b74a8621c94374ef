#pragma once

/**
 * @file suite.hpp
 * @brief Runs every verification suite on one configured instance and turns
 *        the check results into report records.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polarepi/config.hpp"

namespace polarepi {

struct ReportRecord {
    std::string check;
    std::string instance;
    Verdict verdict = Verdict::Pass;
    std::optional<std::string> witness;
    long samples = 0;
    std::uint64_t seed = 0;
    std::string detail;
};

/// One JSON object per line, keys in a fixed order.
std::string to_json_line(const ReportRecord& r);
/// `PASS check [instance] samples=N witness=...`.
std::string to_text_line(const ReportRecord& r);

struct SuiteOutcome {
    std::vector<ReportRecord> records;
    long failures = 0;
    /// Failures not announced by the config's expect block, plus unmet expectations.
    long unexpected = 0;
    bool internal_error = false;
};

using RecordSink = std::function<void(const ReportRecord&)>;
/// Receives the wall time of each stage; never part of the report stream.
using StageTimer = std::function<void(const std::string& instance, const std::string& stage, double seconds)>;

struct SuiteOptions {
    RecordSink sink;
    StageTimer timer;
    Corruption corruption = Corruption::None;
    /// Skip the stages that do not depend on l (field through (C1)–(C3)).
    bool rank_stages_only = false;
};

/**
 * Field and involution axioms, involutory set, pq-form and anisotropy,
 * T-group, subring, (C1)–(C3), case classification, residue structures,
 * relations and actions, ρ and descent, in this order.
 * Records are passed to @p sink as soon as each stage completes.
 */
SuiteOutcome run_suite(const InstanceConfig& cfg, std::uint64_t seed, const SampleBudget& budget,
                       const SuiteOptions& options = {});

/// File names of the shipped configs, in run order.
const std::vector<std::string>& shipped_config_names();

struct SelftestOutcome {
    std::vector<ReportRecord> records;
    long unexpected = 0;
    bool internal_error = false;
};

/**
 * Every shipped config from @p config_dir with @p seed. Positive instances
 * run at l = 2 and l = 3 unless @p rank overrides it; the l = 3 pass skips
 * the rank-independent stages. Instance ids carry the rank, e.g. `id/l3`.
 */
SelftestOutcome run_selftest(const std::string& config_dir, std::uint64_t seed, const SuiteOptions& options,
                             std::optional<long> samples = std::nullopt, int rank = 0);

}  // namespace polarepi
