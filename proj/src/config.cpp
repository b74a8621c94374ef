#include "polarepi/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace polarepi {

namespace {

using nlohmann::json;

void only_keys(const json& obj, std::string_view where, std::initializer_list<std::string_view> allowed)
{
    if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
        }
    }
}

const json& required(const json& obj, const char* key, std::string_view where)
{
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError("missing key '" + std::string(key) + "' in " + std::string(where));
    return *it;
}

std::string text(const json& value, const char* key)
{
    if (!value.is_string()) throw ConfigError(std::string(key) + " must be a string");
    return value.get<std::string>();
}

long count(const json& obj, const char* key, long fallback)
{
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer() || it->get<long>() < 0) {
        throw ConfigError(std::string(key) + " must be a nonnegative integer");
    }
    return it->get<long>();
}

Scalar scalar(const json& value, const char* key, FieldKind kind)
{
    try {
        return parse_scalar(text(value, key), kind);
    } catch (const AlgebraError& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

SampleBudget parse_samples(const json& obj)
{
    only_keys(obj, "samples",
              {"algebra", "t_group", "relations", "conditions", "target_laws", "scalings", "pairs", "triples", "planes",
               "lifts", "descent"});
    SampleBudget b;
    b.algebra = count(obj, "algebra", b.algebra);
    b.t_group = count(obj, "t_group", b.t_group);
    b.relations = count(obj, "relations", b.relations);
    b.conditions = count(obj, "conditions", b.conditions);
    b.target_laws = count(obj, "target_laws", b.target_laws);
    auto& e = b.epimorphism;
    e.scalings = count(obj, "scalings", e.scalings);
    e.pairs = count(obj, "pairs", e.pairs);
    e.triples = count(obj, "triples", e.triples);
    e.planes = count(obj, "planes", e.planes);
    e.lifts = count(obj, "lifts", e.lifts);
    e.descent = count(obj, "descent", e.descent);
    return b;
}

}  // namespace

SampleBudget SampleBudget::uniform(long n)
{
    SampleBudget b;
    b.algebra = b.t_group = b.relations = b.conditions = b.target_laws = n;
    b.epimorphism = {n, n, n, std::max(1L, n / 5), n, std::max(10L, n / 10)};
    return b;
}

PseudoQuadraticSpace InstanceConfig::pq_space() const
{
    return PseudoQuadraticSpace(field, involution, InvolutorySet::rational_center(), dim_l0, delta);
}

TotalSubring InstanceConfig::ring() const { return total_subring_from_tag(subring_kind, p); }

InstanceConfig parse_config(std::string_view source)
{
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    only_keys(doc, "config",
              {"id", "field", "involution", "l", "dim_l0", "delta", "k0", "subring", "coset", "seed", "samples",
               "expect"});

    InstanceConfig cfg;
    try {
        cfg.id = text(required(doc, "id", "config"), "id");
        cfg.field = field_kind_from_string(text(required(doc, "field", "config"), "field"));
        cfg.involution = involution_from_string(text(required(doc, "involution", "config"), "involution"));
        if (!compatible(cfg.involution, cfg.field)) throw ConfigError("involution does not fit the field");
    } catch (const AlgebraError& e) {
        throw ConfigError(e.what());
    }
    cfg.l = static_cast<int>(count(doc, "l", 2));
    if (cfg.l < 2) throw ConfigError("l must be at least 2");
    cfg.dim_l0 = static_cast<std::size_t>(count(doc, "dim_l0", 1));
    if (cfg.dim_l0 != 1) throw ConfigError("only dim_l0 = 1 is supported");
    cfg.delta = scalar(required(doc, "delta", "config"), "delta", cfg.field);
    if (doc.contains("k0")) cfg.k0 = text(doc["k0"], "k0");
    if (cfg.k0 != "rational-center") throw ConfigError("unsupported k0 tag '" + cfg.k0 + "'");

    const json& sub = required(doc, "subring", "config");
    only_keys(sub, "subring", {"kind", "p"});
    cfg.subring_kind = text(required(sub, "kind", "subring"), "kind");
    cfg.p = static_cast<unsigned long>(count(sub, "p", 0));

    const json& coset = required(doc, "coset", "config");
    only_keys(coset, "coset", {"s"});
    cfg.s = scalar(required(coset, "s", "coset"), "s", cfg.field);
    if (cfg.s.is_zero()) throw ConfigError("coset representative must be nonzero");

    const json& seed = required(doc, "seed", "config");
    if (!seed.is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
    cfg.seed = seed.get<std::uint64_t>();

    if (doc.contains("samples")) cfg.samples = parse_samples(doc["samples"]);

    if (doc.contains("expect")) {
        const json& ex = doc["expect"];
        only_keys(ex, "expect", {"case", "residue_size", "fail"});
        if (ex.contains("case")) {
            const std::string c = text(ex["case"], "case");
            if (c == "I") cfg.expect_case = CaseVariant::I;
            else if (c == "II") cfg.expect_case = CaseVariant::II;
            else throw ConfigError("expect.case must be \"I\" or \"II\"");
        }
        if (ex.contains("residue_size")) cfg.expect_residue_size = static_cast<std::size_t>(count(ex, "residue_size", 0));
        if (ex.contains("fail")) {
            if (!ex["fail"].is_array()) throw ConfigError("expect.fail must be an array");
            for (const auto& name : ex["fail"]) cfg.expect_fail.push_back(text(name, "fail"));
        }
    }

    try {
        cfg.pq_space();
        cfg.ring();
    } catch (const AlgebraError& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

InstanceConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace polarepi
