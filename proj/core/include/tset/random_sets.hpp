#pragma once

#include "tset/finite_group.hpp"
#include "tset/rng.hpp"

#include <utility>

namespace tset {

/* Random direct sum of at most three cyclic factors with 2 <= order <= max_order. */
FiniteAbelianGroup random_group(SplitMix64& rng, long long max_order);

/* Nonempty subset keeping each element with probability num/den. */
GroupSubset uniform_subset(SplitMix64& rng, const FiniteAbelianGroup& g, std::uint64_t num,
                           std::uint64_t den);

/* Union of randomly chosen cosets of a random subgroup, then up to max_toggles
 * membership flips.  Unlike uniform sampling, this lands in the small
 * difference-set hypothesis region with useful frequency. */
GroupSubset coset_perturbed_subset(SplitMix64& rng, const FiniteAbelianGroup& g,
                                   long long max_toggles);

/* Single coset with a few elements removed (kept nonempty): with fewer than a
 * third of the coset removed, the difference set stays inside the subgroup and
 * the small-doubling hypothesis holds. */
GroupSubset dented_coset_subset(SplitMix64& rng, const FiniteAbelianGroup& g);

/* Pair of coset unions over one shared subgroup with light perturbation; used
 * by the pair-hypothesis campaigns. */
std::pair<GroupSubset, GroupSubset> coset_pair(SplitMix64& rng, const FiniteAbelianGroup& g);

} // namespace tset
