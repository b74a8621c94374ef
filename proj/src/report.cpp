#include "polarepi/report.hpp"

namespace polarepi {

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undecided: return "undecided";
    }
    return "?";
}

bool all_passed(const CheckList& checks)
{
    for (const auto& c : checks) {
        if (!c.passed()) return false;
    }
    return true;
}

}  // namespace polarepi
