/**
 * @file polarepi.cpp
 * @brief Command line front end: verify, map, lift, descent and selftest.
 */

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarepi/suite.hpp"

#ifndef POLAREPI_CONFIG_DIR
#define POLAREPI_CONFIG_DIR "configs"
#endif

using namespace polarepi;

namespace {

enum Exit { Ok = 0, CheckFailed = 1, BadConfig = 2, Internal = 3, InvalidObject = 4 };


struct Options {
    long samples = -1;
    long long seed = -1;
    int l = 0;
    bool json = false;
    bool timings = false;
    std::string corrupt = "none";
    std::string config_dir = POLAREPI_CONFIG_DIR;
};

InstanceConfig configure(const std::string& path, const Options& opt)
{
    InstanceConfig cfg = load_config(path);
    if (opt.l > 0) {
        if (opt.l < 2) throw ConfigError("--l must be at least 2");
        cfg.l = opt.l;
    }
    if (opt.samples >= 0) cfg.samples = SampleBudget::uniform(opt.samples);
    return cfg;
}

Corruption corruption(const std::string& tag)
{
    if (tag == "none") return Corruption::None;
    if (tag == "a2") return Corruption::FlipA2Sign;
    if (tag == "bc2") return Corruption::FlipBC2Sign;
    throw ConfigError("unknown corruption '" + tag + "'");
}

StageTimer stage_timer(const Options& opt)
{
    if (!opt.timings) return {};
    return [](const std::string& id, const std::string& stage, double seconds) {
        std::fprintf(stderr, "  %s %s: %.2f s\n", id.c_str(), stage.c_str(), seconds);
    };
}

RecordSink printer(bool json)
{
    return [json](const ReportRecord& r) {
        std::cout << (json ? to_json_line(r) : to_text_line(r)) << '\n';
        std::cout.flush();
    };
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void summarize(const std::string& id, const SuiteOutcome& out, double seconds)
{
    long pass = 0, undecided = 0;
    for (const auto& r : out.records) {
        if (r.verdict == Verdict::Pass) ++pass;
        if (r.verdict == Verdict::Undecided) ++undecided;
    }
    std::fprintf(stderr, "%s: %zu checks, %ld pass, %ld fail (%ld unexpected), %ld undecided, %.2f s\n", id.c_str(),
                 out.records.size(), pass, out.failures, out.unexpected, undecided, seconds);
}

int cmd_verify(const std::string& path, const Options& opt)
{
    const InstanceConfig cfg = configure(path, opt);
    const std::uint64_t seed = opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed) : cfg.seed;
    const auto start = std::chrono::steady_clock::now();
    SuiteOptions suite;
    suite.sink = printer(opt.json);
    suite.timer = stage_timer(opt);
    suite.corruption = corruption(opt.corrupt);
    const SuiteOutcome out = run_suite(cfg, seed, cfg.samples, suite);
    summarize(cfg.id, out, seconds_since(start));
    if (out.internal_error) return Internal;
    return out.failures ? CheckFailed : Ok;
}

int cmd_selftest(const Options& opt)
{
    const std::uint64_t seed = opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed) : 7;
    SuiteOptions suite;
    suite.sink = printer(opt.json);
    suite.corruption = corruption(opt.corrupt);
    suite.timer = stage_timer(opt);
    const auto start = std::chrono::steady_clock::now();
    const SelftestOutcome out = run_selftest(opt.config_dir, seed, suite,
                                             opt.samples >= 0 ? std::optional<long>(opt.samples) : std::nullopt, opt.l);
    std::map<std::string, std::array<long, 3>> counts;
    for (const auto& r : out.records) ++counts[r.instance][static_cast<int>(r.verdict)];
    for (const auto& [id, c] : counts) {
        std::fprintf(stderr, "%s: %ld pass, %ld fail, %ld undecided\n", id.c_str(), c[0], c[1], c[2]);
    }
    std::fprintf(stderr, "selftest seed %llu: %s (%ld unexpected failures), %.2f s\n",
                 static_cast<unsigned long long>(seed),
                 out.internal_error ? "internal inconsistency" : (out.unexpected ? "FAIL" : "PASS"), out.unexpected,
                 seconds_since(start));
    if (out.internal_error) return Internal;
    return out.unexpected ? CheckFailed : Ok;
}

std::vector<std::string> split_vectors(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
        const std::size_t end = text.find(')', pos);
        if (end == std::string::npos) throw AlgebraError("unbalanced parentheses in " + text);
        out.push_back(text.substr(pos, end - pos + 1));
        pos = end + 1;
    }
    if (out.empty()) throw AlgebraError("no vector in " + text);
    return out;
}

std::string target_subspace_literal(const EpimorphismContext& ctx, const ResidueSubspace& s)
{
    std::string out = "[";
    for (std::size_t idx = 0; idx < s.basis.size(); ++idx) {
        out += (idx ? "," : "") + ctx.make_target_point(s.basis[idx]).to_literal();
    }
    return out + "]";
}

EpimorphismContext context_for(const InstanceConfig& cfg, std::uint64_t seed)
{
    Sampler rng(seed);
    return EpimorphismContext::build(PolarSpace(cfg.pq_space(), cfg.l), cfg.ring(), cfg.s, rng, 100, cfg.shape());
}

void print_result(const Options& opt, const std::string& input, const std::string& key, const std::string& value)
{
    if (opt.json) {
        nlohmann::ordered_json j;
        j["input"] = input;
        j[key] = value;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << value << '\n';
    }
}

int cmd_map(const std::string& path, const std::string& literal, const Options& opt)
{
    const InstanceConfig cfg = configure(path, opt);
    const auto ctx = context_for(cfg, opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed) : cfg.seed);
    const auto& space = ctx.space();
    std::vector<XVector> vectors;
    for (const auto& v : split_vectors(literal)) vectors.push_back(space.parse_vector(v));
    if (vectors.size() == 1 && literal.find('[') == std::string::npos) {
        print_result(opt, literal, "image", ctx.rho_point(ProjectivePoint::make(space, vectors.front())).to_literal());
    } else {
        print_result(opt, literal, "image", target_subspace_literal(ctx, ctx.rho_subspace(echelonize(space, vectors))));
    }
    return Ok;
}

int cmd_lift(const std::string& path, const std::string& literal, const Options& opt)
{
    const InstanceConfig cfg = configure(path, opt);
    const std::uint64_t seed = opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed) : cfg.seed;
    const auto ctx = context_for(cfg, seed);
    const ResiduePoint target = ctx.parse_target_point(literal);
    const ProjectivePoint pre = ctx.lift_point(target);
    if (!(ctx.rho_point(pre) == target)) {
        throw InternalInconsistency("rho(" + pre.to_literal() + ") = " + ctx.rho_point(pre).to_literal() +
                                    " differs from " + target.to_literal());
    }
    print_result(opt, literal, "preimage", pre.to_literal());
    return Ok;
}

int cmd_descent(const std::string& path, const std::string& generator, const Options& opt)
{
    const InstanceConfig cfg = configure(path, opt);
    const std::uint64_t seed = opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed) : cfg.seed;
    const auto ctx = context_for(cfg, seed);
    const GeneratorAction g = parse_generator(ctx.space(), generator);
    Sampler rng(seed);
    const DescentReport rep =
        descent_check(ctx, g, rng, opt.samples >= 0 ? opt.samples : cfg.samples.epimorphism.descent, cfg.shape());
    const bool agrees = rep.separated != rep.theorem_descends && !rep.action_mismatch;
    if (opt.json) {
        nlohmann::ordered_json j;
        j["generator"] = generator;
        j["descends"] = rep.theorem_descends;
        j["separated"] = rep.separated;
        if (rep.witness) j["witness"] = *rep.witness;
        if (rep.action_mismatch) j["action_mismatch"] = *rep.action_mismatch;
        j["samples"] = rep.samples;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << generator << (rep.theorem_descends ? " descends" : " does not descend");
        if (rep.witness) std::cout << "; separating pair " << *rep.witness;
        if (rep.action_mismatch) std::cout << "; action mismatch at " << *rep.action_mismatch;
        std::cout << '\n';
    }
    return agrees ? Ok : CheckFailed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Epimorphisms of polar spaces of type BC_l: verification and mapping"};
    app.require_subcommand(1);
    Options opt;
    const auto common = [&](CLI::App* sub) {
        sub->add_option("--samples", opt.samples, "Replace every sample budget by N")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", opt.seed, "Seed of the sampler")->check(CLI::NonNegativeNumber);
        sub->add_option("--l", opt.l, "Rank of the polar space");
        sub->add_flag("--json", opt.json, "Machine-readable output");
        sub->add_flag("--timings", opt.timings, "Stage wall times on standard error");
    };
    std::string config, literal;

    auto* verify = app.add_subcommand("verify", "Run every suite on one instance");
    verify->add_option("config", config, "Instance config")->required();
    verify->add_option("--corrupt", opt.corrupt, "Test hook: none, a2 or bc2")->group("");
    common(verify);

    auto* map = app.add_subcommand("map", "Image of a point or singular subspace under rho");
    map->add_option("config", config, "Instance config")->required();
    map->add_option("literal", literal, "(v|a1,...,a2l) or [(..),(..)]")->required();
    common(map);

    auto* lift = app.add_subcommand("lift", "A preimage of a residue point");
    lift->add_option("config", config, "Instance config")->required();
    lift->add_option("literal", literal, "(lambda|alpha1,...,alpha2l)")->required();
    common(lift);

    auto* descent = app.add_subcommand("descent", "Whether a root group element descends through rho");
    descent->add_option("config", config, "Instance config")->required();
    descent->add_option("generator", literal, "y<i>(k) or y<l>((w),t)")->required();
    common(descent);

    auto* selftest = app.add_subcommand("selftest", "Run the suites on every shipped config");
    selftest->add_option("--configs", opt.config_dir, "Directory of the shipped configs");
    selftest->add_option("--corrupt", opt.corrupt, "Test hook: none, a2 or bc2")->group("");
    common(selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : BadConfig;
    }

    try {
        if (*verify) return cmd_verify(config, opt);
        if (*map) return cmd_map(config, literal, opt);
        if (*lift) return cmd_lift(config, literal, opt);
        if (*descent) return cmd_descent(config, literal, opt);
        return cmd_selftest(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return BadConfig;
    } catch (const ContextInvalid& e) {
        std::cerr << "invalid context: " << e.what() << '\n';
        return CheckFailed;
    } catch (const NotSingular& e) {
        std::cerr << "invalid object: " << e.what() << '\n';
        return InvalidObject;
    } catch (const AlgebraError& e) {
        std::cerr << "invalid object: " << e.what() << '\n';
        return InvalidObject;
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return Internal;
    }
}
