#include "polarepi/suite.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include <json.hpp>

namespace polarepi {

std::string to_json_line(const ReportRecord& r)
{
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["instance"] = r.instance;
    j["verdict"] = std::string(to_string(r.verdict));
    if (r.witness) j["witness"] = *r.witness;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j.dump();
}

std::string to_text_line(const ReportRecord& r)
{
    std::ostringstream out;
    std::string verdict(to_string(r.verdict));
    std::transform(verdict.begin(), verdict.end(), verdict.begin(), [](unsigned char c) { return std::toupper(c); });
    out << verdict << ' ' << r.check << " [" << r.instance << "] samples=" << r.samples;
    if (r.witness) out << " witness=" << *r.witness;
    if (!r.detail.empty()) out << " (" << r.detail << ')';
    return out.str();
}

namespace {

class Runner {
public:
    Runner(const InstanceConfig& cfg, std::uint64_t seed, const SuiteOptions& options)
        : cfg_(cfg), seed_(seed), sink_(options.sink), timer_(options.timer), root_(seed)
    {
    }

    template <class F>
    void stage(const std::string& name, F&& body)
    {
        Sampler rng = root_.split();
        const auto start = std::chrono::steady_clock::now();
        CheckList checks;
        try {
            checks = body(rng);
        } catch (const GenerationStarvation& e) {
            checks = {{name + ".generation", Verdict::Undecided, 0, std::nullopt, e.what()}};
        } catch (const AlgebraError& e) {
            checks = {{name + ".error", Verdict::Fail, 0, std::nullopt, e.what()}};
            outcome_.internal_error = true;
        } catch (const std::logic_error& e) {
            checks = {{name + ".error", Verdict::Fail, 0, std::nullopt, e.what()}};
            outcome_.internal_error = true;
        }
        if (timer_) timer_(cfg_.id, name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        for (auto& c : checks) emit(std::move(c));
    }

    void emit(CheckResult c)
    {
        ReportRecord r{std::move(c.check), cfg_.id, c.verdict, std::move(c.witness), c.samples, seed_,
                       std::move(c.detail)};
        if (r.verdict == Verdict::Fail) {
            ++outcome_.failures;
            const auto& ex = cfg_.expect_fail;
            if (std::find(ex.begin(), ex.end(), r.check) == ex.end()) ++outcome_.unexpected;
            else failed_expected_.push_back(r.check);
        }
        if (sink_) sink_(r);
        outcome_.records.push_back(std::move(r));
    }

    void finish_expectations()
    {
        if (cfg_.expect_fail.empty()) return;
        CheckBuilder b("expect.designed_failures");
        std::string missing;
        for (const auto& name : cfg_.expect_fail) {
            b.sample();
            if (std::find(failed_expected_.begin(), failed_expected_.end(), name) == failed_expected_.end()) {
                missing += (missing.empty() ? "" : ",") + name;
            }
        }
        if (!missing.empty()) b.fail(missing, "expected failure did not occur");
        CheckResult c = std::move(b).done();
        if (!c.passed()) ++outcome_.unexpected;
        ReportRecord r{std::move(c.check), cfg_.id, c.verdict, std::move(c.witness), c.samples, seed_,
                       std::move(c.detail)};
        if (r.verdict == Verdict::Fail) ++outcome_.failures;
        if (sink_) sink_(r);
        outcome_.records.push_back(std::move(r));
    }

    SuiteOutcome take() { return std::move(outcome_); }

private:
    const InstanceConfig& cfg_;
    std::uint64_t seed_;
    const RecordSink& sink_;
    const StageTimer& timer_;
    Sampler root_;
    SuiteOutcome outcome_;
    std::vector<std::string> failed_expected_;
};

std::string case_detail(const CaseTag& tag, std::size_t residue_size)
{
    return "Case " + std::string(to_string(tag.variant)) + ", r = " + tag.r.to_literal() +
           ", |K_R| = " + std::to_string(residue_size);
}

}  // namespace

SuiteOutcome run_suite(const InstanceConfig& cfg, std::uint64_t seed, const SampleBudget& budget,
                       const SuiteOptions& options)
{
    Runner run(cfg, seed, options);
    const ScalarShape shape = cfg.shape();
    const PseudoQuadraticSpace pq = cfg.pq_space();
    const TotalSubring ring = cfg.ring();
    const PolarSpace space(pq, cfg.l);
    const CosetSpec coset{cfg.s};

    const bool all = !options.rank_stages_only;
    if (all) {
        run.stage("field", [&](Sampler& rng) { return verify_field(cfg.field, cfg.involution, rng, budget.algebra, shape); });
        run.stage("k0", [&](Sampler& rng) {
            return verify_involutory_set(pq.k0(), cfg.field, cfg.involution, rng, budget.algebra, shape);
        });
        run.stage("pq", [&](Sampler& rng) { return verify_pq_space(pq, rng, budget.algebra, shape); });
        run.stage("t", [&](Sampler& rng) { return verify_t_group(pq, rng, budget.t_group, shape); });
        run.stage("ring", [&](Sampler& rng) { return verify_subring(ring, cfg.involution, rng, budget.algebra, shape); });
        run.stage("c1", [&](Sampler& rng) { return check_c1(ring, coset, cfg.involution, rng, budget.conditions, shape); });
        run.stage("c2c3", [&](Sampler& rng) { return check_c2_c3(pq, ring, coset, rng, budget.conditions, shape); });
    }

    std::optional<EpimorphismContext> ctx;
    run.stage("case", [&](Sampler& rng) {
        CheckList out;
        CheckBuilder cls("case.classification");
        cls.sample();
        CaseTag tag;
        try {
            tag = classify_coset(pq, ring, cfg.s);
        } catch (const CaseUndecided& e) {
            cls.undecided(e.what());
            out.push_back(std::move(cls).done());
            out.push_back({"case.context", Verdict::Undecided, 0, std::nullopt, "no context without a case"});
            return out;
        }
        const std::size_t size = ring.residue_table().size();
        const std::string detail = case_detail(tag, size);
        if (cfg.expect_case && *cfg.expect_case != tag.variant) cls.fail(tag.r.to_literal(), detail);
        else if (cfg.expect_residue_size && *cfg.expect_residue_size != size) cls.fail(tag.r.to_literal(), detail);
        else cls.note(detail);
        out.push_back(std::move(cls).done());

        CheckBuilder build("case.context");
        build.sample();
        try {
            ctx.emplace(EpimorphismContext::build(space, ring, cfg.s, rng, 100, shape));
            build.note("dim L0bar = " + std::to_string(ctx->lbar_dim()));
        } catch (const ContextInvalid& e) {
            build.fail(cfg.s.to_literal(), e.what());
        }
        out.push_back(std::move(build).done());
        return out;
    });
    if (ctx) {
        run.stage("residue", [&](Sampler& rng) {
            CheckList out = verify_case(*ctx, rng, budget.target_laws, shape);
            CheckList laws = verify_target_laws(*ctx, rng, budget.target_laws, shape);
            out.insert(out.end(), laws.begin(), laws.end());
            return out;
        });
    }
    run.stage("relations", [&](Sampler& rng) {
        CheckList out = verify_relations(space, rng, budget.relations, shape, options.corruption);
        CheckList acts = verify_actions(space, rng, budget.relations, shape);
        out.insert(out.end(), acts.begin(), acts.end());
        return out;
    });
    if (ctx) {
        run.stage("rho", [&](Sampler& rng) { return verify_epimorphism(*ctx, rng, budget.epimorphism, shape); });
    }
    run.finish_expectations();
    return run.take();
}

const std::vector<std::string>& shipped_config_names()
{
    static const std::vector<std::string> names = {
        "gaussian_p3_s1.json",
        "quaternion_p2_s1pi.json",
        "quaternion_p2_s2.json",
        "split_p5_negative.json",
    };
    return names;
}

SelftestOutcome run_selftest(const std::string& config_dir, std::uint64_t seed, const SuiteOptions& options,
                             std::optional<long> samples, int rank)
{
    SelftestOutcome total;
    for (const auto& name : shipped_config_names()) {
        InstanceConfig base = load_config(config_dir + "/" + name);
        if (samples) base.samples = SampleBudget::uniform(*samples);
        std::vector<int> ranks{base.l};
        if (rank > 0) ranks = {rank};
        else if (base.expect_fail.empty()) ranks = {2, 3};
        for (std::size_t idx = 0; idx < ranks.size(); ++idx) {
            InstanceConfig cfg = base;
            cfg.l = ranks[idx];
            cfg.id = base.id + "/l" + std::to_string(cfg.l);
            SuiteOptions opt = options;
            opt.rank_stages_only = idx > 0;
            SuiteOutcome out = run_suite(cfg, seed, cfg.samples, opt);
            total.unexpected += out.unexpected;
            total.internal_error = total.internal_error || out.internal_error;
            for (auto& r : out.records) total.records.push_back(std::move(r));
        }
    }
    return total;
}

}  // namespace polarepi
