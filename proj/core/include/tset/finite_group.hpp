#pragma once

#include "tset/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tset {

/* Direct sum of cyclic groups Z/n1 x ... x Z/nk with mixed-radix element
 * indexing (first factor varies fastest). Order is capped at 2^20. */
class FiniteAbelianGroup {
public:
    explicit FiniteAbelianGroup(std::vector<long long> cyclic_factors);

    long long order() const { return order_; }
    const std::vector<long long>& cyclic_factors() const { return factors_; }

    long long add(long long i, long long j) const;
    long long negate(long long i) const;
    long long zero() const { return 0; }

    std::vector<long long> decode(long long index) const;
    long long encode(const std::vector<long long>& coords) const;

    bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }
    bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }

    std::string to_string() const;

    static constexpr long long kMaxOrder = 1 << 20;

private:
    std::vector<long long> factors_;
    std::vector<long long> strides_;
    long long order_;
};

/* Subset with a membership array and cached cardinality. */
class GroupSubset {
public:
    explicit GroupSubset(FiniteAbelianGroup group);
    static GroupSubset from_indices(FiniteAbelianGroup group, const std::vector<long long>& indices);
    static GroupSubset full(FiniteAbelianGroup group);

    const FiniteAbelianGroup& group() const { return group_; }
    bool contains(long long index) const { return member_[static_cast<size_t>(index)] != 0; }
    void insert(long long index);
    void erase(long long index);
    void toggle(long long index);

    long long size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::vector<long long> indices() const;
    Rat density() const { return Rat(size_, group_.order()); }

    bool operator==(const GroupSubset& o) const {
        return group_ == o.group_ && member_ == o.member_;
    }

private:
    FiniteAbelianGroup group_;
    std::vector<unsigned char> member_;
    long long size_ = 0;
};

/* Validated subgroup; index * size == group order always. */
class Subgroup {
public:
    /* full check: nonempty, closed under subtraction; throws "not a subgroup" */
    static Subgroup validate(GroupSubset elements);

    const GroupSubset& elements() const { return elements_; }
    const FiniteAbelianGroup& group() const { return elements_.group(); }
    long long size() const { return elements_.size(); }
    long long index() const { return index_; }

    bool operator==(const Subgroup& o) const { return elements_ == o.elements_; }

private:
    friend Subgroup subgroup_unchecked(GroupSubset);
    explicit Subgroup(GroupSubset elements);

    GroupSubset elements_;
    long long index_;
};

/* internal fast path for values already known to be subgroups */
Subgroup subgroup_unchecked(GroupSubset elements);

struct QuotientProjection {
    FiniteAbelianGroup source;
    FiniteAbelianGroup quotient;
    std::vector<long long> map; /* element index in source -> element index in quotient */
};

struct KneserReduction {
    Subgroup stabilizer;
    QuotientProjection projection;
    GroupSubset image_a;
    GroupSubset image_b;
    GroupSubset image_d;
    bool identity_holds;
};

struct SmallDoublingResult {
    GroupSubset difference;
    bool is_subgroup;
    std::optional<long long> index;
};

/* D = B - A = { b - a : a in A, b in B }; throws on empty input or group mismatch */
GroupSubset difference_set(const GroupSubset& a, const GroupSubset& b);

/* { g : g + S = S }; throws on empty input */
Subgroup stabilizer(const GroupSubset& s);

/* S + H, the union of H-cosets meeting S */
GroupSubset saturate(const GroupSubset& s, const Subgroup& h);

/* nullopt when |D| >= |A| + |B| (hypothesis not met); otherwise the reduction,
 * whose identity |D| = |A+H| + |B+H| - |H| is asserted */
std::optional<KneserReduction> kneser_decompose(const GroupSubset& a, const GroupSubset& b);

SmallDoublingResult small_doubling_subgroup_check(const GroupSubset& a);

/* every subgroup, sorted by (size, membership); order capped at 4096 */
std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& g);

/* quotient G/H with a surjective homomorphism whose kernel is exactly H */
QuotientProjection quotient_projection(const FiniteAbelianGroup& g, const Subgroup& h);

/* subgroup generated by a set of element indices */
Subgroup generated_subgroup(const FiniteAbelianGroup& g, const std::vector<long long>& generators);

GroupSubset project_subset(const QuotientProjection& proj, const GroupSubset& s);
GroupSubset pullback_subset(const QuotientProjection& proj, const GroupSubset& image);

} // namespace tset
