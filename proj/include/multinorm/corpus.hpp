#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "multinorm/projection.hpp"
#include "multinorm/serialize.hpp"

namespace multinorm {

// Built-in reference instances with hand-derived expected values: small
// geometries whose optima are forced by coordinate bounds, so distances are
// exact and every member norm shares a minimizer. They double as the verify
// corpus on disk and as regression anchors here.
struct CorpusExpectation {
    std::vector<double> single_distances;  // per member norm
    std::vector<double> level_distances;   // per chain level (prefix sums)
    Vector witness;                        // target for the best intersection witness
    double witness_tol = 1e-4;
    int uc_index = 0;      // 1-based uniqueness certificate to demand; 0 skips
    bool level1_face = false;  // level-1 witnesses must cover {(1,t): |t| <= 1}
};

struct CorpusEntry {
    std::string name;
    Instance instance;
    SolveOptions options;
    CorpusExpectation expect;
};

inline std::vector<CorpusEntry> builtin_corpus() {
    std::vector<CorpusEntry> out;

    auto add = [&](std::string name, CompactSet set, NormFamily family, Vector x,
                   double resolution, CorpusExpectation expect) {
        CorpusEntry e;
        e.name = std::move(name);
        e.instance.set = std::move(set);
        e.instance.family = std::move(family);
        e.instance.x = std::move(x);
        e.options.resolution = resolution;
        e.expect = std::move(expect);
        out.push_back(std::move(e));
    };

    // sup-norm projection onto the unit box: the whole face x1 = 1 is optimal
    {
        CorpusExpectation ex;
        ex.single_distances = {1.0};
        ex.level_distances = {1.0};
        ex.witness = {1.0, -1.0};  // best-by-(value, lex) representative
        ex.witness_tol = 1e-4;
        ex.level1_face = true;
        add("box-face", make_ball(lp_inf(), {0, 0}, 1.0),
            certify_increasing(family_of({lp_inf()}), 2), {2, 0}, 0.01, std::move(ex));
    }

    // diamond with the query on the symmetry axis: the euclidean projection
    // (0.5, 0.5) is also a taxicab minimizer, so the pair shares it
    {
        CorpusExpectation ex;
        ex.single_distances = {0.7071067811865475, 1.0};
        ex.level_distances = {0.7071067811865475, 1.7071067811865475};
        ex.witness = {0.5, 0.5};
        ex.uc_index = 1;
        add("diamond-halfway", make_ball(lp(1), {0, 0}, 1.0),
            certify_increasing(family_of({lp(2), lp(1)}), 2), {1, 1}, 0.01, std::move(ex));
    }

    // box again, but the euclidean second norm collapses the face to a corner
    {
        CorpusExpectation ex;
        ex.single_distances = {1.0, 1.0};
        ex.level_distances = {1.0, 2.0};
        ex.witness = {1.0, 0.0};
        ex.uc_index = 2;
        add("box-corner", make_ball(lp_inf(), {0, 0}, 1.0),
            certify_increasing(family_of({lp_inf(), lp(2)}), 2), {2, 0}, 0.01, std::move(ex));
    }

    // exponent families over the euclidean ball in R^3 with an axis query:
    // every member norm is coordinate-monotone, so y1 <= 1 forces value >= 1
    // per bare norm (and >= 2 with a sup/truncation term), all attained at e1
    auto exp_entry = [&](std::string name, L2PlusVariant variant, double per_norm,
                         int uc_index) {
        CorpusExpectation ex;
        ex.single_distances = std::vector<double>(3, per_norm);
        ex.level_distances = {per_norm, 2 * per_norm, 3 * per_norm};
        if (uc_index) {
            // the un-augmented smooth member contributes 1, the rest 2
            ex.single_distances = {1.0, 2.0, 2.0};
            ex.level_distances = {1.0, 3.0, 5.0};
        }
        ex.witness = {1.0, 0.0, 0.0};
        ex.witness_tol = 1e-3;
        ex.uc_index = uc_index;
        add(std::move(name), make_ball(lp(2), {0, 0, 0}, 1.0),
            build_l2plus_family(3, 3, variant), {2, 0, 0}, 0.0625, std::move(ex));
    };
    exp_entry("exponents-plain", L2PlusVariant::plain, 1.0, 0);
    exp_entry("exponents-plus-sup", L2PlusVariant::plus_sup, 2.0, 0);
    exp_entry("exponents-plus-trunc", L2PlusVariant::plus_trunc, 2.0, 0);
    exp_entry("exponents-single-smooth", L2PlusVariant::single_uc, 0.0, 1);

    // a finite set: one member dominates under both norms
    {
        CorpusExpectation ex;
        ex.single_distances = {1.0, 1.0};
        ex.level_distances = {1.0, 2.0};
        ex.witness = {1.0, 0.0};
        ex.witness_tol = 1e-9;
        add("three-point-cloud", make_cloud({{1, 0}, {0, 1}, {0.8, 0.8}}),
            certify_increasing(family_of({lp_inf(), lp(1)}), 2), {2, 0}, 0.0, std::move(ex));
    }

    return out;
}

struct CorpusCheck {
    std::string name;
    bool ok = true;
    std::string detail;  // first failed expectation, empty when ok
};

inline CorpusCheck check_corpus_entry(const CorpusEntry& e) {
    CorpusCheck out;
    out.name = e.name;
    std::ostringstream why;

    auto fail = [&](auto&&... parts) {
        out.ok = false;
        if (!out.detail.empty()) return;
        ((why << parts), ...);
        out.detail = why.str();
    };

    ChainResult chain;
    try {
        chain = common_nearest_family(e.instance.set, e.instance.family, e.instance.x,
                                      e.instance.eps, e.options);
    } catch (const Error& err) {
        fail("chain solve failed: ", err.what());
        return out;
    }

    for (std::size_t i = 0; i < e.expect.single_distances.size(); ++i) {
        if (i >= chain.single_distances.size() ||
            std::abs(chain.single_distances[i] - e.expect.single_distances[i]) > 1e-6)
            fail("single distance ", i + 1, " off: got ",
                 i < chain.single_distances.size() ? chain.single_distances[i] : -1.0,
                 " want ", e.expect.single_distances[i]);
    }
    for (std::size_t i = 0; i < e.expect.level_distances.size(); ++i) {
        if (i >= chain.per_level.size() ||
            std::abs(chain.per_level[i].distance - e.expect.level_distances[i]) > 1e-6)
            fail("level distance ", i + 1, " off: got ",
                 i < chain.per_level.size() ? chain.per_level[i].distance : -1.0, " want ",
                 e.expect.level_distances[i]);
    }

    if (chain.intersection_witnesses.empty())
        fail("no intersection witnesses");
    else if (linf_dist(chain.intersection_witnesses.front(), e.expect.witness) >
             e.expect.witness_tol)
        fail("best witness misses the target by ",
             linf_dist(chain.intersection_witnesses.front(), e.expect.witness));

    if (e.expect.level1_face) {
        std::vector<Vector> face;
        for (double t = -1.0; t <= 1.0 + 1e-12; t += e.options.resolution)
            face.push_back({1.0, t});
        double h = hausdorff_linf(chain.per_level.front().witnesses, face);
        if (h > 2.0 * e.options.resolution)
            fail("level-1 witnesses do not cover the face: Hausdorff ", h);
        if (chain.per_level.front().unique != Uniqueness::no)
            fail("face minimizers reported as ", to_string(chain.per_level.front().unique));
    }

    if (e.expect.uc_index > 0) {
        auto verdict = uniqueness_check(chain, e.instance.family,
                                        static_cast<std::size_t>(e.expect.uc_index),
                                        kUniquenessTol);
        if (verdict != Uniqueness::yes)
            fail("uniqueness at index ", e.expect.uc_index, " is ", to_string(verdict));
    }
    return out;
}

}  // namespace multinorm
