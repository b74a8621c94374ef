#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polarepi {

enum class Verdict { Pass, Fail, Undecided };

std::string_view to_string(Verdict v);

/// Outcome of one executable check. Witnesses are always printed in the
/// literal grammar so a failure can be replayed.
struct CheckResult {
    std::string check;
    Verdict verdict = Verdict::Pass;
    long samples = 0;
    std::optional<std::string> witness;
    std::string detail;

    bool passed() const noexcept { return verdict == Verdict::Pass; }
};

using CheckList = std::vector<CheckResult>;

/// Accumulates a sampled check: counts samples and keeps the first witness.
class CheckBuilder {
public:
    explicit CheckBuilder(std::string name) { result_.check = std::move(name); }

    void sample() { ++result_.samples; }

    /// Records a counterexample; only the first witness is kept.
    void fail(std::string witness, std::string detail = {})
    {
        if (result_.verdict != Verdict::Fail) {
            result_.verdict = Verdict::Fail;
            result_.witness = std::move(witness);
            result_.detail = std::move(detail);
        }
    }

    bool failed() const noexcept { return result_.verdict == Verdict::Fail; }

    void undecided(std::string detail)
    {
        if (result_.verdict == Verdict::Pass) {
            result_.verdict = Verdict::Undecided;
            result_.detail = std::move(detail);
        }
    }

    void note(std::string detail)
    {
        if (result_.detail.empty()) result_.detail = std::move(detail);
    }

    CheckResult done() && { return std::move(result_); }
    const CheckResult& peek() const { return result_; }

private:
    CheckResult result_;
};

bool all_passed(const CheckList& checks);

}  // namespace polarepi
