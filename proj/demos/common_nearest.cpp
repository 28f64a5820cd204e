// Walk-through: which points of a diamond are nearest to (1,1) under the
// euclidean and taxicab norms at once, and can we certify there is only one?
#include <cstdio>

#include "multinorm/convexity.hpp"
#include "multinorm/projection.hpp"

using namespace multinorm;

int main() {
    CompactSet K = make_ball(lp(1), {0, 0}, 1.0);
    NormFamily family = certify_increasing(family_of({lp(2), lp(1)}), 2);
    Vector x{1, 1};

    auto chain = common_nearest_family(K, family, x, 1e-6);

    std::printf("query (1,1) against the unit diamond\n");
    for (std::size_t i = 0; i < chain.per_level.size(); ++i) {
        const auto& lvl = chain.per_level[i];
        std::printf("level %zu (%s): distance %.9f, %zu witnesses, unique: %s\n", i + 1,
                    lvl.objective.c_str(), lvl.distance, lvl.witnesses.size(),
                    to_string(lvl.unique));
    }

    const Vector& best = chain.intersection_witnesses.front();
    std::printf("common nearest point: (%.9f, %.9f)\n", best[0], best[1]);

    // the euclidean member is uniformly convex, so its level pins the answer
    auto est = modulus_of_convexity(lp(2), 2);
    std::printf("euclidean modulus at eps=1: %.6f (closed form 0.133975)\n", est.delta_hat[2]);
    std::printf("uniqueness through member 1: %s\n",
                to_string(uniqueness_check(chain, family, 1, kUniquenessTol)));
    return 0;
}
