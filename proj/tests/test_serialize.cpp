#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "multinorm/serialize.hpp"

using namespace multinorm;
using Catch::Matchers::WithinAbs;

TEST_CASE("norm specs round-trip through JSON") {
    const NormSpec cases[] = {
        lp(1),
        lp(2),
        lp(2.5),
        lp_inf(),
        weighted_lp(2.0, {1.0, 3.0}),
        weighted_lp(std::numeric_limits<double>::infinity(), {0.5, 2.0}),
        trunc_seminorm(2),
        sum_norm({lp(2), trunc_seminorm(1)}),
        sum_norm({lp_ratio(7, 3), lp_inf()}),
        max_prefix({lp_inf(), lp(2), lp(1)}),
        max_prefix({lp_inf(), sum_norm({lp(2), trunc_seminorm(2)})}),
    };
    for (const auto& n : cases) {
        INFO(describe(n));
        auto back = parse_norm(to_json(n));
        CHECK(back == n);
        Vector probe{0.3, -1.2};
        CHECK_THAT(eval_norm(back, probe), WithinAbs(eval_norm(n, probe), 0.0));
    }
}

TEST_CASE("wire format details") {
    CHECK(to_json(lp_inf())["p"] == "inf");
    CHECK(to_json(lp(2.5))["p"] == 2.5);
    CHECK(to_json(trunc_seminorm(3))["n"] == 3);
    // exponents built as exact ratios serialize by value
    CHECK(to_json(lp_ratio(5, 2))["p"] == 2.5);
    CHECK(to_json(sum_norm({lp(1), lp(2)}))["kind"] == "sum");
}

TEST_CASE("norm schema violations") {
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"banana"})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"p":2})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"lp"})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"lp","p":0.5})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"lp","p":"huge"})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"trunc","n":0})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"trunc","n":1.5})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"sum","parts":[]})")), SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"sum","parts":[{"kind":"trunc","n":1}]})")),
                    SchemaError);
    CHECK_THROWS_AS(
        parse_norm(parse_text(R"({"kind":"maxprefix","parts":[{"kind":"trunc","n":1}]})")),
        SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"({"kind":"wlp","p":2,"weights":[1,-1]})")),
                    SchemaError);
    CHECK_THROWS_AS(parse_norm(parse_text(R"([1,2,3])")), SchemaError);
    CHECK_THROWS_AS(parse_text("not json at all {"), SchemaError);
}

TEST_CASE("families round-trip and re-certify on load") {
    SECTION("round-trip") {
        auto fam = certify_increasing(family_of({lp_inf(), lp(2), lp(1)}), 2);
        REQUIRE(fam.increasing_certified);
        auto pf = parse_family(to_json(fam));
        CHECK(pf.claimed_increasing);
        CHECK(pf.family.specs == fam.specs);
        // the parsed family is not certified until someone re-checks
        CHECK_FALSE(pf.family.increasing_certified);
    }
    SECTION("claims are optional") {
        auto pf = parse_family(parse_text(R"({"norms":[{"kind":"lp","p":2}]})"));
        CHECK_FALSE(pf.claimed_increasing);
        CHECK(pf.family.size() == 1);
    }
    SECTION("violations") {
        CHECK_THROWS_AS(parse_family(parse_text(R"({"norms":[]})")), SchemaError);
        CHECK_THROWS_AS(parse_family(parse_text(R"({"norms":[{"kind":"trunc","n":1}]})")),
                        SchemaError);
        CHECK_THROWS_AS(parse_family(parse_text(R"({"norms":[{"kind":"lp","p":2}],"increasing":"yes"})")),
                        SchemaError);
        CHECK_THROWS_AS(parse_family(parse_text(R"({})")), SchemaError);
    }
}

TEST_CASE("sets round-trip through JSON") {
    SECTION("ball") {
        auto K = make_ball(lp(2.5), {0.5, -1.0}, 2.0);
        auto back = parse_set(to_json(K));
        CHECK(back.kind == CompactSet::Kind::Ball);
        CHECK(back.norm == K.norm);
        CHECK(back.center == K.center);
        CHECK(back.radius == K.radius);
    }
    SECTION("polytope") {
        auto K = make_polytope({{0, 0}, {1, 0}, {0.5, 1}});
        auto back = parse_set(to_json(K));
        CHECK(back.kind == CompactSet::Kind::Polytope);
        CHECK(back.points == K.points);
        CHECK(back.planar_hull == K.planar_hull);
    }
    SECTION("cloud") {
        auto K = make_cloud({{1, 0}, {0, 1}, {1, 0}});
        auto back = parse_set(to_json(K));
        CHECK(back.kind == CompactSet::Kind::Cloud);
        CHECK(back.points == K.points);  // deduped on both sides
    }
    SECTION("violations") {
        CHECK_THROWS_AS(parse_set(parse_text(R"({"kind":"torus"})")), SchemaError);
        CHECK_THROWS_AS(parse_set(parse_text(R"({"kind":"ball","center":[0,0],"radius":1})")),
                        SchemaError);
        CHECK_THROWS_AS(parse_set(parse_text(
                            R"({"kind":"ball","norm":{"kind":"lp","p":2},"center":[0,0],"radius":-1})")),
                        SchemaError);
        CHECK_THROWS_AS(parse_set(parse_text(R"({"kind":"polytope","vertices":[]})")), SchemaError);
        CHECK_THROWS_AS(parse_set(parse_text(R"({"kind":"polytope","vertices":[[0,0],[1]]})")),
                        SchemaError);
        CHECK_THROWS_AS(parse_set(parse_text(R"({"kind":"cloud","points":[["a"]]})")), SchemaError);
    }
}

TEST_CASE("instances") {
    const char* good = R"({
        "set": {"kind":"ball","norm":{"kind":"lp","p":"inf"},"center":[0,0],"radius":1},
        "family": {"norms":[{"kind":"lp","p":"inf"},{"kind":"lp","p":2}],"increasing":true},
        "x": [2, 0],
        "eps": 1e-5,
        "seed": 7
    })";
    SECTION("full parse with certification") {
        auto inst = parse_instance(parse_text(good));
        CHECK(inst.set.kind == CompactSet::Kind::Ball);
        CHECK(inst.family.increasing_certified);
        CHECK(inst.x == Vector{2, 0});
        CHECK(inst.eps == 1e-5);
        CHECK(inst.seed == 7);
    }
    SECTION("defaults") {
        auto j = parse_text(good);
        j.erase("eps");
        j.erase("seed");
        auto inst = parse_instance(j);
        CHECK(inst.eps == 1e-6);
        CHECK(inst.seed == 42);
    }
    SECTION("a false increasing claim is a precondition failure, not schema") {
        auto j = parse_text(good);
        // l1 exceeds l2 at (1,1), so this claimed ordering is refutable
        j["family"] = parse_text(R"({"norms":[{"kind":"lp","p":1},{"kind":"lp","p":2}],"increasing":true})");
        CHECK_THROWS_AS(parse_instance(j), PreconditionError);
        j["family"]["increasing"] = false;
        CHECK_FALSE(parse_instance(j).family.increasing_certified);
    }
    SECTION("violations") {
        auto j = parse_text(good);
        j["x"] = Json::array({1, 2, 3});
        CHECK_THROWS_AS(parse_instance(j), SchemaError);  // dimension mismatch
        j = parse_text(good);
        j["eps"] = 0.0;
        CHECK_THROWS_AS(parse_instance(j), SchemaError);
        j = parse_text(good);
        j["seed"] = -3;
        CHECK_THROWS_AS(parse_instance(j), SchemaError);
        j = parse_text(good);
        j.erase("x");
        CHECK_THROWS_AS(parse_instance(j), SchemaError);
    }
    SECTION("file loading") {
        const char* path = "serialize_test_instance.json";
        {
            std::ofstream out(path);
            out << good;
        }
        auto inst = load_instance(path);
        CHECK(inst.seed == 7);
        std::remove(path);
        CHECK_THROWS_AS(load_instance("does/not/exist.json"), SchemaError);
    }
}

TEST_CASE("result serialization") {
    auto K = make_ball(lp_inf(), {0, 0}, 1.0);
    SECTION("nearest point result") {
        auto r = nearest_point_set(K, lp_inf(), {2, 0}, 1e-6);
        auto j = to_json(r);
        CHECK(j["objective"] == "linf");
        CHECK_THAT(j["distance"].get<double>(), WithinAbs(1.0, 1e-6));
        CHECK(j["unique"] == "no");
        CHECK(j["witnesses"].size() == r.witnesses.size());
        CHECK(j["trace"].size() == r.trace.size());
        CHECK(j["trace"][0]["stage"] == "coarse");
        // identical dumps run to run
        CHECK(j.dump(2) == to_json(nearest_point_set(K, lp_inf(), {2, 0}, 1e-6)).dump(2));
    }
    SECTION("chain result") {
        auto fam = certify_increasing(family_of({lp_inf(), lp(2)}), 2);
        auto c = common_nearest_family(K, fam, {2, 0}, 1e-6);
        auto j = to_json(c);
        CHECK(j["per_level"].size() == 2);
        CHECK(j["x"] == Json::array({2.0, 0.0}));
        CHECK(j["set_convex_evidence"] == true);
        CHECK(j["intersection_witnesses"].size() == c.intersection_witnesses.size());
    }
    SECTION("oracle report") {
        auto rep = grid_argmin(K, lp_inf(), {2, 0}, 0.1, 0.01);
        auto j = to_json(rep);
        CHECK(j["agreement"] == "unchecked");
        CHECK_THAT(j["min_value"].get<double>(), WithinAbs(1.0, 1e-9));
        CHECK(j["argmin_points"].size() == rep.argmin_points.size());
    }
    SECTION("modulus estimate") {
        auto est = modulus_of_convexity(lp(1), 2, {1.0, 2.0}, 2000, 7);
        auto j = to_json(est);
        CHECK(j["norm"]["kind"] == "lp");
        CHECK(j["eps_grid"] == Json::array({1.0, 2.0}));
        CHECK(j["delta_hat"].size() == 2);
        CHECK(j["witness_pairs"][0]["x"].size() == 2);
        CHECK(j["samples"] == 2000);
    }
}

TEST_CASE("witness CSV export") {
    std::vector<Vector> ws{{1.0, 0.0}, {1.0, 0.5}};
    auto csv = witness_csv(ws, lp_inf(), {2.0, 0.0});
    CHECK(csv == "x1,x2,value\n1,0,1\n1,0.5,1\n");
}
