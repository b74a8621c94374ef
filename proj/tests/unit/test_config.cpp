#include <doctest.h>

#include <string>

#include "polarepi/suite.hpp"

using namespace polarepi;

namespace {

const char* kMinimal = R"({
  "id": "g",
  "field": "gaussian",
  "involution": "gaussian-conjugation",
  "delta": "i",
  "subring": {"kind": "inert-gaussian", "p": 3},
  "coset": {"s": "1"},
  "seed": 3
})";

std::string with(const std::string& extra)
{
    std::string text = kMinimal;
    text.insert(text.rfind('}'), "," + extra);
    return text;
}

}  // namespace

TEST_CASE("config defaults")
{
    const InstanceConfig cfg = parse_config(kMinimal);
    CHECK(cfg.id == "g");
    CHECK(cfg.l == 2);
    CHECK(cfg.dim_l0 == 1);
    CHECK(cfg.k0 == "rational-center");
    CHECK(cfg.seed == 3);
    CHECK(cfg.samples.algebra == 10000);
    CHECK(cfg.samples.epimorphism.planes == 200);
    CHECK_FALSE(cfg.expect_case.has_value());
    CHECK(cfg.delta == parse_scalar("i", FieldKind::Gaussian));
    CHECK(cfg.ring().tag() == "inert-gaussian");
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(with(R"("colour": "red")")), ConfigError);
    CHECK_THROWS_AS(parse_config(with(R"("samples": {"algebra": 10, "bogus": 1})")), ConfigError);
    CHECK_THROWS_AS(parse_config(with(R"("l": 1)")), ConfigError);
    CHECK_THROWS_AS(parse_config(with(R"("dim_l0": 2)")), ConfigError);
    CHECK_THROWS_AS(parse_config(with(R"("k0": "zero")")), ConfigError);
    CHECK_THROWS_AS(parse_config(with(R"("expect": {"case": "III"})")), ConfigError);
    std::string bad = kMinimal;
    bad.replace(bad.find("\"i\""), 3, "\"i+j\"");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    bad = kMinimal;
    bad.replace(bad.find("\"inert-gaussian\", \"p\": 3"), 24, "\"inert-gaussian\", \"p\": 5");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    bad = kMinimal;
    bad.replace(bad.find("\"seed\": 3"), 9, "\"seed\": -3");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config overrides")
{
    const InstanceConfig cfg =
        parse_config(with(R"("l": 3, "samples": {"pairs": 12}, "expect": {"case": "I", "residue_size": 9})"));
    CHECK(cfg.l == 3);
    CHECK(cfg.samples.epimorphism.pairs == 12);
    CHECK(cfg.samples.epimorphism.lifts == 1000);
    CHECK(cfg.expect_case == CaseVariant::I);
    CHECK(cfg.expect_residue_size == 9u);
    const SampleBudget b = SampleBudget::uniform(50);
    CHECK(b.algebra == 50);
    CHECK(b.epimorphism.planes == 10);
    CHECK(b.epimorphism.descent == 10);
}

TEST_CASE("shipped configs parse")
{
    for (const auto& name : shipped_config_names()) {
        CHECK_NOTHROW(load_config(std::string(POLAREPI_CONFIG_DIR) + "/" + name));
    }
}

TEST_CASE("report records")
{
    ReportRecord r{"c1.x", "inst", Verdict::Fail, std::string("1/2+i"), 12, 7, ""};
    CHECK(to_json_line(r) ==
          R"({"check":"c1.x","instance":"inst","verdict":"fail","witness":"1/2+i","samples":12,"seed":7})");
    CHECK(to_text_line(r) == "FAIL c1.x [inst] samples=12 witness=1/2+i");
    r.witness.reset();
    r.verdict = Verdict::Pass;
    r.detail = "note";
    CHECK(to_json_line(r) == R"({"check":"c1.x","instance":"inst","verdict":"pass","samples":12,"seed":7,"detail":"note"})");
}

TEST_CASE("suite streams are deterministic and ordered")
{
    InstanceConfig cfg = parse_config(kMinimal);
    cfg.samples = SampleBudget::uniform(15);
    const auto stream = [&](std::uint64_t seed) {
        std::string out;
        SuiteOptions opt;
        opt.sink = [&out](const ReportRecord& r) { out += to_json_line(r) + "\n"; };
        const SuiteOutcome o = run_suite(cfg, seed, cfg.samples, opt);
        CHECK(o.failures == 0);
        CHECK_FALSE(o.internal_error);
        return out;
    };
    const std::string a = stream(5);
    CHECK(a == stream(5));
    CHECK(a != stream(6));
    CHECK(a.find("field.additive_group") < a.find("c1.sigma_s_stabilizes_R"));
    CHECK(a.find("case.classification") < a.find("bc2.group_laws"));
    CHECK(a.find("bc2.group_laws") < a.find("rho.collinearity"));
}

TEST_CASE("expected failures of the negative control")
{
    InstanceConfig cfg = load_config(std::string(POLAREPI_CONFIG_DIR) + "/split_p5_negative.json");
    cfg.samples = SampleBudget::uniform(200);
    const SuiteOutcome out = run_suite(cfg, 7, cfg.samples);
    CHECK(out.failures == 2);
    CHECK(out.unexpected == 0);
    CHECK(out.records.back().check == "expect.designed_failures");
    CHECK(out.records.back().verdict == Verdict::Pass);

    cfg.expect_fail.push_back("ring.closure");
    const SuiteOutcome missed = run_suite(cfg, 7, cfg.samples);
    CHECK(missed.unexpected == 1);
    CHECK(missed.records.back().verdict == Verdict::Fail);
}

TEST_CASE("corrupted relations are reported")
{
    InstanceConfig cfg = parse_config(with(R"("l": 3)"));
    cfg.samples = SampleBudget::uniform(15);
    SuiteOptions opt;
    opt.corruption = Corruption::FlipA2Sign;
    const SuiteOutcome out = run_suite(cfg, 1, cfg.samples, opt);
    CHECK(out.failures > 0);
    bool a2 = false;
    for (const auto& r : out.records) a2 = a2 || (r.check.rfind("a2.", 0) == 0 && r.verdict == Verdict::Fail);
    CHECK(a2);
}
