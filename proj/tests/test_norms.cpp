#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "multinorm/norms.hpp"

using namespace multinorm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("norm evaluation on fixed points") {
    CHECK(eval_norm(lp_inf(), {2, 0}) == 2.0);
    CHECK_THAT(eval_norm(lp(2.5), {1, 1}), WithinAbs(1.3195079107728942, 1e-12));
    CHECK(eval_norm(trunc_seminorm(2), {3, -1, 4}) == 4.0);
    CHECK(eval_norm(sum_norm({lp(2), trunc_seminorm(1)}), {3, 4}) == 8.0);
    CHECK(eval_norm(lp(1), {0.25, -0.75}) == 1.0);
    CHECK(eval_norm(weighted_lp(2.0, {4, 1}), {1, 0}) == 2.0);
}

TEST_CASE("sum norm equals the sum of its parts") {
    CHECK_THAT(eval_norm(sum_norm({lp(1), lp(2)}), {1, 1}), WithinAbs(3.414213562373095, 1e-12));
    CHECK(eval_norm(sum_norm({lp_inf()}), {2, 0}) == 2.0);
    CHECK_THAT(eval_norm(sum_norm({lp(2.5), trunc_seminorm(2)}), {1, 1, 0}),
               WithinAbs(1.3195079107728942 + 2.0, 1e-12));

    auto rng = detail::make_rng(7, 0);
    auto parts = std::vector<NormSpec>{lp(1), lp(2.5), lp_inf(), trunc_seminorm(2)};
    auto s = sum_norm(parts);
    for (int t = 0; t < 200; ++t) {
        Vector v = detail::gaussian_vector(rng, 3);
        double total = 0.0;
        for (const auto& q : parts) total += eval_norm(q, v);
        CHECK_THAT(eval_norm(s, v), WithinAbs(total, 1e-12));
    }
}

TEST_CASE("seminorm-only compositions are rejected") {
    CHECK_THROWS_AS(sum_norm({trunc_seminorm(1), trunc_seminorm(2)}), InvalidArgument);
    CHECK_THROWS_AS(max_prefix({trunc_seminorm(1), lp(2)}), InvalidArgument);
    CHECK_THROWS_AS(sum_norm({}), InvalidArgument);
    CHECK_THROWS_AS(lp(0.999), InvalidArgument);
    CHECK_THROWS_AS(family_of({trunc_seminorm(1)}), InvalidArgument);
}

TEST_CASE("homogeneity and triangle inequality") {
    auto specs = std::vector<NormSpec>{
        lp(1), lp(2), lp(2.5), lp_inf(), weighted_lp(2.0, {1, 2, 3}),
        sum_norm({lp(2), trunc_seminorm(2)}), max_prefix({lp_inf(), lp(1)})};
    auto rng = detail::make_rng(11, 0);
    for (const auto& s : specs) {
        for (int t = 0; t < 300; ++t) {
            Vector u = detail::gaussian_vector(rng, 3);
            Vector v = detail::gaussian_vector(rng, 3);
            double c = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
            double nu = eval_norm(s, u), nv = eval_norm(s, v);
            CHECK_THAT(eval_norm(s, scale(u, c)), WithinRel(std::abs(c) * nu, 1e-12));
            CHECK(eval_norm(s, add(u, v)) <= nu + nv + 1e-12);
        }
        CHECK(eval_norm(s, {0, 0, 0}) == 0.0);
    }
}

TEST_CASE("max-prefix transform") {
    SECTION("already-increasing family is value-identical") {
        auto fam = family_of({lp_inf(), lp(2), lp(1)});
        auto inc = make_increasing(fam);
        REQUIRE(inc.increasing_certified);
        Vector v{1, 1};
        CHECK(eval_norm(inc.specs[0], v) == 1.0);
        CHECK_THAT(eval_norm(inc.specs[1], v), WithinAbs(std::sqrt(2.0), 1e-15));
        CHECK(eval_norm(inc.specs[2], v) == 2.0);
    }
    SECTION("out-of-order family gets clamped up") {
        auto inc = make_increasing(family_of({lp(1), lp(2)}));
        CHECK(eval_norm(inc.specs[1], {1, 1}) == 2.0);  // max(2, sqrt 2)
    }
    SECTION("singleton is the identity") {
        auto inc = make_increasing(family_of({lp(2)}));
        CHECK(inc.specs[0] == lp(2));
    }
    SECTION("output is pointwise increasing, exactly") {
        auto inc = make_increasing(family_of({lp(1), lp_inf(), lp(2.5), lp(2)}));
        auto rng = detail::make_rng(3, 0);
        for (int t = 0; t < 500; ++t) {
            Vector v = detail::gaussian_vector(rng, 4);
            for (std::size_t k = 0; k + 1 < inc.specs.size(); ++k)
                CHECK(eval_norm(inc.specs[k], v) <= eval_norm(inc.specs[k + 1], v));
        }
    }
}

TEST_CASE("increasing certification by sampling") {
    auto good = certify_increasing(family_of({lp_inf(), lp(2), lp(1)}), 2);
    CHECK(good.increasing_certified);

    auto bad = check_increasing(family_of({lp(1), lp(2)}), 2);
    REQUIRE_FALSE(bad.ok);
    CHECK(bad.level == 0);
    CHECK(eval_norm(lp(1), bad.witness) > eval_norm(lp(2), bad.witness));
}

TEST_CASE("family metric") {
    auto fam = certify_increasing(family_of({lp(2), lp(1)}), 2);
    REQUIRE(fam.increasing_certified);

    SECTION("zero iff equal") {
        CHECK(frechet_metric(fam, {1, 2}, {1, 2}) == 0.0);
        CHECK(frechet_metric(fam, {1, 2}, {1, 2.5}) > 0.0);
    }
    SECTION("fixed values") {
        auto single = certify_increasing(family_of({lp(1)}), 2);
        CHECK_THAT(frechet_metric(single, {1, 0}, {0, 0}), WithinAbs(0.25, 1e-15));
        // (1/2) * sqrt2/(1+sqrt2) + (1/4) * 2/3
        CHECK_THAT(frechet_metric(fam, {1, 1}, {0, 0}), WithinAbs(0.45955988548011917, 1e-12));
    }
    SECTION("symmetry and triangle inequality") {
        auto rng = detail::make_rng(5, 0);
        for (int t = 0; t < 300; ++t) {
            Vector x = detail::gaussian_vector(rng, 2);
            Vector y = detail::gaussian_vector(rng, 2);
            Vector z = detail::gaussian_vector(rng, 2);
            double dxy = frechet_metric(fam, x, y);
            CHECK(dxy == frechet_metric(fam, y, x));
            CHECK(dxy <= frechet_metric(fam, x, z) + frechet_metric(fam, z, y) + 1e-12);
            CHECK(dxy < 1.0 - std::pow(2.0, -2.0) + 1e-12);
        }
    }
    SECTION("uncertified family is refused") {
        NormFamily raw;
        raw.specs = {lp(2), lp(1)};
        CHECK_THROWS_AS(frechet_metric(raw, {1, 0}, {0, 0}), PreconditionError);
    }
}

TEST_CASE("exponent family construction") {
    SECTION("plain values") {
        auto fam = build_l2plus_family(2, 2, L2PlusVariant::plain);
        REQUIRE(fam.size() == 2);
        REQUIRE(fam.increasing_certified);
        CHECK_THAT(eval_norm(fam.specs[0], {1, 1}), WithinAbs(1.2599210498948732, 1e-12));
        CHECK_THAT(eval_norm(fam.specs[1], {1, 1}), WithinAbs(1.3195079107728942, 1e-12));
    }
    SECTION("sup-augmented") {
        auto fam = build_l2plus_family(1, 2, L2PlusVariant::plus_sup);
        CHECK(eval_norm(fam.specs[0], {2, 0}) == 4.0);
        CHECK(fam.increasing_certified);
    }
    SECTION("prefix-sum-augmented is increasing") {
        auto fam = build_l2plus_family(3, 3, L2PlusVariant::plus_trunc);
        CHECK(fam.increasing_certified);
        auto rng = detail::make_rng(9, 0);
        for (int t = 0; t < 200; ++t) {
            Vector v = detail::gaussian_vector(rng, 3);
            for (std::size_t k = 0; k + 1 < fam.specs.size(); ++k)
                CHECK(eval_norm(fam.specs[k], v) <= eval_norm(fam.specs[k + 1], v));
        }
    }
    SECTION("single plain level keeps its exact shape") {
        auto fam = build_l2plus_family(3, 3, L2PlusVariant::single_uc, 2);
        CHECK(fam.specs[1] == lp_ratio(5, 2));
        CHECK(fam.specs[0].kind == NormSpec::Kind::Sum);
        CHECK(fam.specs[2].kind == NormSpec::Kind::Sum);
        // augmenting below the plain level genuinely breaks monotonicity there,
        // and certification has to notice
        CHECK_FALSE(fam.increasing_certified);

        auto first = build_l2plus_family(3, 3, L2PlusVariant::single_uc, 1);
        CHECK(first.specs[0] == lp_ratio(3, 1));
        CHECK(first.increasing_certified);
    }
    SECTION("bad arguments") {
        CHECK_THROWS_AS(build_l2plus_family(0, 2, L2PlusVariant::plain), InvalidArgument);
        CHECK_THROWS_AS(build_l2plus_family(2, 2, L2PlusVariant::single_uc, 3), InvalidArgument);
    }
}

TEST_CASE("spec equality and description") {
    CHECK(lp(2.5) == lp_ratio(5, 2));
    CHECK_FALSE(lp(2) == lp_inf());
    CHECK(describe(lp_inf()) == "linf");
    CHECK(describe(lp_ratio(7, 3)) == "l7/3");
    CHECK(describe(sum_norm({lp(2), trunc_seminorm(1)})) == "sum(l2, trunc(1))");
}
