#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "multinorm/convexity.hpp"
#include "multinorm/errors.hpp"
#include "multinorm/geometry.hpp"
#include "multinorm/norms.hpp"
#include "multinorm/oracle.hpp"
#include "multinorm/projection.hpp"
#include "multinorm/vec.hpp"

namespace multinorm {

using Json = nlohmann::json;

inline const char* to_string(OracleReport::Agreement a) {
    switch (a) {
        case OracleReport::Agreement::unchecked: return "unchecked";
        case OracleReport::Agreement::match: return "match";
        case OracleReport::Agreement::distance_mismatch: return "distance_mismatch";
        case OracleReport::Agreement::witness_mismatch: return "witness_mismatch";
    }
    return "unchecked";
}

// ---------------------------------------------------------------------------
// writers

inline Json to_json(const NormSpec& s) {
    Json j;
    switch (s.kind) {
        case NormSpec::Kind::Lp:
            j["kind"] = "lp";
            if (s.p_inf)
                j["p"] = "inf";  // JSON has no Infinity literal
            else
                j["p"] = s.p;
            break;
        case NormSpec::Kind::WeightedLp:
            j["kind"] = "wlp";
            if (s.p_inf)
                j["p"] = "inf";
            else
                j["p"] = s.p;
            j["weights"] = s.weights;
            break;
        case NormSpec::Kind::Trunc:
            j["kind"] = "trunc";
            j["n"] = s.trunc_n;
            break;
        case NormSpec::Kind::Sum:
        case NormSpec::Kind::MaxPrefix: {
            j["kind"] = s.kind == NormSpec::Kind::Sum ? "sum" : "maxprefix";
            Json parts = Json::array();
            for (const auto& q : s.parts) parts.push_back(to_json(q));
            j["parts"] = std::move(parts);
            break;
        }
    }
    return j;
}

inline Json to_json(const NormFamily& f) {
    Json norms = Json::array();
    for (const auto& s : f.specs) norms.push_back(to_json(s));
    return Json{{"norms", std::move(norms)}, {"increasing", f.increasing_certified}};
}

inline Json to_json(const CompactSet& K) {
    switch (K.kind) {
        case CompactSet::Kind::Ball:
            return Json{{"kind", "ball"},
                        {"norm", to_json(K.norm)},
                        {"center", K.center},
                        {"radius", K.radius}};
        case CompactSet::Kind::Polytope:
            return Json{{"kind", "polytope"}, {"vertices", K.points}};
        case CompactSet::Kind::Cloud:
            return Json{{"kind", "cloud"}, {"points", K.points}};
    }
    throw Error("to_json: unreachable set kind");
}

inline Json to_json(const NearestPointResult& r) {
    Json trace = Json::array();
    for (const auto& t : r.trace)
        trace.push_back(Json{{"stage", t.stage},
                             {"resolution", t.resolution},
                             {"best", t.best},
                             {"points", t.points}});
    return Json{{"objective", r.objective},
                {"distance", r.distance},
                {"epsilon", r.epsilon},
                {"unique", to_string(r.unique)},
                {"witnesses", r.witnesses},
                {"single_distances", r.single_distances},
                {"trace", std::move(trace)}};
}

inline Json to_json(const ChainResult& c) {
    Json levels = Json::array();
    for (const auto& l : c.per_level) levels.push_back(to_json(l));
    return Json{{"x", c.x},
                {"epsilon", c.epsilon},
                {"per_level", std::move(levels)},
                {"intersection_witnesses", c.intersection_witnesses},
                {"nesting_excess", c.nesting_excess},
                {"single_distances", c.single_distances},
                {"set_convex_evidence", c.set_convex_evidence}};
}

inline Json to_json(const ModulusEstimate& e) {
    Json pairs = Json::array();
    for (std::size_t i = 0; i < e.witness_pairs.size(); ++i) {
        if (!e.sampled[i])
            pairs.push_back(nullptr);
        else
            pairs.push_back(
                Json{{"x", e.witness_pairs[i].first}, {"y", e.witness_pairs[i].second}});
    }
    Json sampled = Json::array();
    for (char s : e.sampled) sampled.push_back(static_cast<bool>(s));
    return Json{{"norm", to_json(e.norm)},
                {"dim", e.dim},
                {"samples", e.samples},
                {"eps_grid", e.eps_grid},
                {"delta_hat", e.delta_hat},
                {"sampled", std::move(sampled)},
                {"witness_pairs", std::move(pairs)},
                {"monotonicity_flags", e.monotonicity_flags}};
}

inline Json to_json(const OracleReport& r) {
    return Json{{"objective", r.objective_desc},
                {"x", r.x},
                {"resolution", r.resolution},
                {"eps", r.eps},
                {"min_value", r.min_value},
                {"lipschitz", r.lipschitz},
                {"argmin_points", r.argmin_points},
                {"agreement", to_string(r.agreement)},
                {"details", r.details}};
}

// One row per witness: coordinates, then the objective value at that point.
inline std::string witness_csv(const std::vector<Vector>& witnesses, const NormSpec& objective,
                               const Vector& x) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out += "x" + std::to_string(i + 1) + ",";
    }
    out += "value\n";
    for (const auto& w : witnesses) {
        for (double c : w) out += fmt(c) + ",";
        out += fmt(eval_norm(objective, sub(x, w))) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// readers — everything arriving from files maps malformed shapes, unknown
// kinds, and out-of-range values onto SchemaError

namespace detail {

template <class F>
auto schema_guard(const char* ctx, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const SchemaError&) {
        throw;
    } catch (const PreconditionError&) {
        throw;  // semantic failures keep their own exit code
    } catch (const InvalidArgument& e) {
        throw SchemaError(std::string(ctx) + ": " + e.what());
    } catch (const Json::exception& e) {
        throw SchemaError(std::string(ctx) + ": " + e.what());
    }
}

inline const Json& field(const Json& j, const char* key, const char* ctx) {
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(std::string(ctx) + ": missing required field \"" + key + "\"");
    return *it;
}

inline Vector vec_of(const Json& j, const char* ctx) {
    if (!j.is_array()) throw SchemaError(std::string(ctx) + ": expected an array of numbers");
    Vector v;
    v.reserve(j.size());
    for (const auto& c : j) {
        if (!c.is_number()) throw SchemaError(std::string(ctx) + ": expected an array of numbers");
        v.push_back(c.get<double>());
    }
    return v;
}

inline std::vector<Vector> vecs_of(const Json& j, const char* ctx) {
    if (!j.is_array()) throw SchemaError(std::string(ctx) + ": expected an array of points");
    std::vector<Vector> out;
    out.reserve(j.size());
    for (const auto& p : j) out.push_back(vec_of(p, ctx));
    return out;
}

}  // namespace detail

inline NormSpec parse_norm(const Json& j) {
    return detail::schema_guard("norm", [&]() -> NormSpec {
        if (!j.is_object()) throw SchemaError("norm: expected an object");
        const std::string kind = detail::field(j, "kind", "norm").get<std::string>();
        if (kind == "lp" || kind == "wlp") {
            const Json& p = detail::field(j, "p", "norm");
            bool inf = p.is_string() && p.get<std::string>() == "inf";
            if (!inf && !p.is_number())
                throw SchemaError("norm: \"p\" must be a number or the string \"inf\"");
            if (kind == "lp") return inf ? lp_inf() : lp(p.get<double>());
            Vector w = detail::vec_of(detail::field(j, "weights", "norm"), "norm weights");
            return weighted_lp(inf ? std::numeric_limits<double>::infinity() : p.get<double>(),
                               std::move(w));
        }
        if (kind == "trunc") {
            const Json& n = detail::field(j, "n", "norm");
            if (!n.is_number_integer()) throw SchemaError("norm: \"n\" must be an integer");
            return trunc_seminorm(n.get<int>());
        }
        if (kind == "sum" || kind == "maxprefix") {
            const Json& parts = detail::field(j, "parts", "norm");
            if (!parts.is_array()) throw SchemaError("norm: \"parts\" must be an array");
            std::vector<NormSpec> ps;
            ps.reserve(parts.size());
            for (const auto& q : parts) ps.push_back(parse_norm(q));
            return kind == "sum" ? sum_norm(std::move(ps)) : max_prefix(std::move(ps));
        }
        throw SchemaError("norm: unknown kind \"" + kind + "\"");
    });
}

struct ParsedFamily {
    NormFamily family;  // increasing_certified is NOT set from the file
    bool claimed_increasing = false;
};

inline ParsedFamily parse_family(const Json& j) {
    return detail::schema_guard("family", [&]() -> ParsedFamily {
        if (!j.is_object()) throw SchemaError("family: expected an object");
        const Json& norms = detail::field(j, "norms", "family");
        if (!norms.is_array()) throw SchemaError("family: \"norms\" must be an array");
        std::vector<NormSpec> specs;
        specs.reserve(norms.size());
        for (const auto& n : norms) specs.push_back(parse_norm(n));
        ParsedFamily out;
        out.family = family_of(std::move(specs));
        if (auto it = j.find("increasing"); it != j.end()) {
            if (!it->is_boolean()) throw SchemaError("family: \"increasing\" must be a boolean");
            out.claimed_increasing = it->get<bool>();
        }
        return out;
    });
}

inline CompactSet parse_set(const Json& j) {
    return detail::schema_guard("set", [&]() -> CompactSet {
        if (!j.is_object()) throw SchemaError("set: expected an object");
        const std::string kind = detail::field(j, "kind", "set").get<std::string>();
        if (kind == "ball") {
            const Json& r = detail::field(j, "radius", "set");
            if (!r.is_number()) throw SchemaError("set: \"radius\" must be a number");
            return make_ball(parse_norm(detail::field(j, "norm", "set")),
                             detail::vec_of(detail::field(j, "center", "set"), "set center"),
                             r.get<double>());
        }
        if (kind == "polytope")
            return make_polytope(
                detail::vecs_of(detail::field(j, "vertices", "set"), "set vertices"));
        if (kind == "cloud")
            return make_cloud(detail::vecs_of(detail::field(j, "points", "set"), "set points"));
        throw SchemaError("set: unknown kind \"" + kind + "\"");
    });
}

// A problem instance as loaded from disk. A family claiming
// "increasing": true is re-certified here (trust but verify): a refuted
// claim is a precondition failure, not a schema failure.
struct Instance {
    CompactSet set;
    NormFamily family;
    Vector x;
    double eps = 1e-6;
    std::uint64_t seed = 42;
};

inline Instance parse_instance(const Json& j) {
    return detail::schema_guard("instance", [&]() -> Instance {
        if (!j.is_object()) throw SchemaError("instance: expected an object");
        Instance inst;
        inst.set = parse_set(detail::field(j, "set", "instance"));
        auto pf = parse_family(detail::field(j, "family", "instance"));
        inst.x = detail::vec_of(detail::field(j, "x", "instance"), "instance x");
        if (inst.x.size() != set_dim(inst.set))
            throw SchemaError("instance: x and set dimensions disagree");
        if (auto it = j.find("eps"); it != j.end()) {
            if (!it->is_number()) throw SchemaError("instance: \"eps\" must be a number");
            inst.eps = it->get<double>();
            if (!(inst.eps > 0.0)) throw SchemaError("instance: \"eps\" must be positive");
        }
        if (auto it = j.find("seed"); it != j.end()) {
            if (!it->is_number_integer())
                throw SchemaError("instance: \"seed\" must be a nonnegative integer");
            if (!it->is_number_unsigned() && it->get<std::int64_t>() < 0)
                throw SchemaError("instance: \"seed\" must be a nonnegative integer");
            inst.seed = it->get<std::uint64_t>();
        }
        inst.family = std::move(pf.family);
        if (pf.claimed_increasing) {
            inst.family = certify_increasing(std::move(inst.family), inst.x.size());
            if (!inst.family.increasing_certified)
                throw PreconditionError(
                    "instance family claims \"increasing\": true, but a sampled counterexample "
                    "refutes the ordering");
        }
        return inst;
    });
}

inline Json to_json(const Instance& inst) {
    return Json{{"set", to_json(inst.set)},
                {"family", to_json(inst.family)},
                {"x", inst.x},
                {"eps", inst.eps},
                {"seed", inst.seed}};
}

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open instance file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_instance(parse_text(text));
}

}  // namespace multinorm
