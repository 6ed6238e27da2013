#include "tset/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace tset {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<long long> cyclic_factors)
    : factors_(std::move(cyclic_factors)) {
    if (factors_.empty()) throw std::invalid_argument("group needs at least one cyclic factor");
    order_ = 1;
    strides_.resize(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 1) throw std::invalid_argument("cyclic factor must be positive");
        strides_[i] = order_;
        order_ *= factors_[i];
        if (order_ > kMaxOrder) throw std::invalid_argument("group order exceeds 2^20");
    }
}

long long FiniteAbelianGroup::add(long long i, long long j) const {
    long long out = 0;
    for (size_t f = 0; f < factors_.size(); ++f) {
        long long n = factors_[f];
        long long ci = (i / strides_[f]) % n;
        long long cj = (j / strides_[f]) % n;
        long long c = ci + cj;
        if (c >= n) c -= n;
        out += c * strides_[f];
    }
    return out;
}

long long FiniteAbelianGroup::negate(long long i) const {
    long long out = 0;
    for (size_t f = 0; f < factors_.size(); ++f) {
        long long n = factors_[f];
        long long c = (i / strides_[f]) % n;
        if (c != 0) c = n - c;
        out += c * strides_[f];
    }
    return out;
}

std::vector<long long> FiniteAbelianGroup::decode(long long index) const {
    std::vector<long long> coords(factors_.size());
    for (size_t f = 0; f < factors_.size(); ++f)
        coords[f] = (index / strides_[f]) % factors_[f];
    return coords;
}

long long FiniteAbelianGroup::encode(const std::vector<long long>& coords) const {
    if (coords.size() != factors_.size())
        throw std::invalid_argument("coordinate arity mismatch");
    long long out = 0;
    for (size_t f = 0; f < factors_.size(); ++f) {
        long long c = coords[f] % factors_[f];
        if (c < 0) c += factors_[f];
        out += c * strides_[f];
    }
    return out;
}

std::string FiniteAbelianGroup::to_string() const {
    std::string s;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += " x ";
        s += "Z/" + std::to_string(factors_[i]);
    }
    return s;
}

GroupSubset::GroupSubset(FiniteAbelianGroup group)
    : group_(std::move(group)), member_(static_cast<size_t>(group_.order()), 0) {}

GroupSubset GroupSubset::from_indices(FiniteAbelianGroup group, const std::vector<long long>& indices) {
    GroupSubset s(std::move(group));
    for (long long i : indices) {
        if (i < 0 || i >= s.group_.order())
            throw std::out_of_range("element index outside group");
        s.insert(i);
    }
    return s;
}

GroupSubset GroupSubset::full(FiniteAbelianGroup group) {
    GroupSubset s(std::move(group));
    std::fill(s.member_.begin(), s.member_.end(), 1);
    s.size_ = s.group_.order();
    return s;
}

void GroupSubset::insert(long long index) {
    auto& cell = member_[static_cast<size_t>(index)];
    if (!cell) {
        cell = 1;
        ++size_;
    }
}

void GroupSubset::erase(long long index) {
    auto& cell = member_[static_cast<size_t>(index)];
    if (cell) {
        cell = 0;
        --size_;
    }
}

void GroupSubset::toggle(long long index) {
    if (contains(index)) erase(index); else insert(index);
}

std::vector<long long> GroupSubset::indices() const {
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(size_));
    for (long long i = 0; i < group_.order(); ++i)
        if (member_[static_cast<size_t>(i)]) out.push_back(i);
    return out;
}

Subgroup::Subgroup(GroupSubset elements) : elements_(std::move(elements)) {
    long long n = elements_.group().order();
    if (elements_.empty() || n % elements_.size() != 0)
        throw std::invalid_argument("not a subgroup");
    index_ = n / elements_.size();
}

Subgroup Subgroup::validate(GroupSubset elements) {
    if (elements.empty()) throw std::invalid_argument("empty set is not a subgroup");
    const auto& g = elements.group();
    auto members = elements.indices();
    if (!elements.contains(g.zero())) throw std::invalid_argument("not a subgroup");
    for (long long x : members)
        for (long long y : members)
            if (!elements.contains(g.add(x, g.negate(y))))
                throw std::invalid_argument("not a subgroup");
    return Subgroup(std::move(elements));
}

Subgroup subgroup_unchecked(GroupSubset elements) {
    return Subgroup(std::move(elements));
}

GroupSubset difference_set(const GroupSubset& a, const GroupSubset& b) {
    if (a.group() != b.group()) throw std::invalid_argument("group mismatch");
    if (a.empty() || b.empty()) throw std::invalid_argument("empty set");
    const auto& g = a.group();
    GroupSubset d(g);
    auto bs = b.indices();
    for (long long ai : a.indices()) {
        long long na = g.negate(ai);
        for (long long bi : bs) d.insert(g.add(bi, na));
        if (d.size() == g.order()) break;
    }
    return d;
}

Subgroup stabilizer(const GroupSubset& s) {
    if (s.empty()) throw std::invalid_argument("empty set");
    const auto& g = s.group();
    auto members = s.indices();
    GroupSubset h(g);
    for (long long cand = 0; cand < g.order(); ++cand) {
        bool ok = true;
        for (long long m : members) {
            if (!s.contains(g.add(cand, m))) {
                ok = false;
                break;
            }
        }
        /* cand + S subset of S and |cand + S| = |S| forces equality */
        if (ok) h.insert(cand);
    }
    return subgroup_unchecked(std::move(h));
}

GroupSubset saturate(const GroupSubset& s, const Subgroup& h) {
    if (s.group() != h.group()) throw std::invalid_argument("group mismatch");
    const auto& g = s.group();
    GroupSubset out(g);
    auto hs = h.elements().indices();
    for (long long m : s.indices())
        for (long long hh : hs) out.insert(g.add(m, hh));
    return out;
}

std::optional<KneserReduction> kneser_decompose(const GroupSubset& a, const GroupSubset& b) {
    GroupSubset d = difference_set(a, b);
    if (d.size() >= a.size() + b.size()) return std::nullopt;

    Subgroup h = stabilizer(d);
    QuotientProjection proj = quotient_projection(a.group(), h);
    GroupSubset image_a = project_subset(proj, a);
    GroupSubset image_b = project_subset(proj, b);
    GroupSubset image_d = project_subset(proj, d);

    long long a_sat = image_a.size() * h.size();
    long long b_sat = image_b.size() * h.size();
    bool identity = d.size() == a_sat + b_sat - h.size();
    if (!identity)
        throw std::logic_error("sumset identity failed for a set with small difference set");

    return KneserReduction{std::move(h), std::move(proj),
                           std::move(image_a), std::move(image_b), std::move(image_d),
                           identity};
}

SmallDoublingResult small_doubling_subgroup_check(const GroupSubset& a) {
    GroupSubset d = difference_set(a, a);
    bool is_subgroup = true;
    const auto& g = a.group();
    auto members = d.indices();
    for (size_t i = 0; i < members.size() && is_subgroup; ++i)
        for (size_t j = 0; j < members.size(); ++j)
            if (!d.contains(g.add(members[i], g.negate(members[j])))) {
                is_subgroup = false;
                break;
            }
    if (2 * d.size() < 3 * a.size() && !is_subgroup)
        throw std::logic_error("difference set with doubling below 3/2 must be a subgroup");
    std::optional<long long> index;
    if (is_subgroup) index = g.order() / d.size();
    return SmallDoublingResult{std::move(d), is_subgroup, index};
}

namespace {

/* subgroup closure by coset chains: S already a subgroup, extend by one generator */
GroupSubset extend_subgroup(const GroupSubset& s, long long gen) {
    const auto& g = s.group();
    GroupSubset out = s;
    auto base = s.indices();
    long long c = gen;
    while (!out.contains(c)) {
        for (long long x : base) out.insert(g.add(c, x));
        c = g.add(c, gen);
    }
    return out;
}

std::string membership_key(const GroupSubset& s) {
    std::string key;
    key.reserve(static_cast<size_t>(s.group().order()));
    for (long long i = 0; i < s.group().order(); ++i)
        key += s.contains(i) ? '1' : '0';
    return key;
}

} // namespace

Subgroup generated_subgroup(const FiniteAbelianGroup& g, const std::vector<long long>& generators) {
    GroupSubset s(g);
    s.insert(g.zero());
    for (long long gen : generators) {
        if (gen < 0 || gen >= g.order()) throw std::out_of_range("element index outside group");
        if (!s.contains(gen)) s = extend_subgroup(s, gen);
    }
    return subgroup_unchecked(std::move(s));
}

std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& g) {
    if (g.order() > 4096)
        throw std::invalid_argument("group too large for subgroup enumeration");

    GroupSubset trivial(g);
    trivial.insert(g.zero());

    std::unordered_set<std::string> seen;
    std::deque<GroupSubset> queue;
    std::vector<GroupSubset> found;

    seen.insert(membership_key(trivial));
    queue.push_back(trivial);
    found.push_back(trivial);

    while (!queue.empty()) {
        GroupSubset h = std::move(queue.front());
        queue.pop_front();
        for (long long gen = 1; gen < g.order(); ++gen) {
            if (h.contains(gen)) continue;
            GroupSubset bigger = extend_subgroup(h, gen);
            std::string key = membership_key(bigger);
            if (seen.insert(std::move(key)).second) {
                queue.push_back(bigger);
                found.push_back(std::move(bigger));
            }
        }
    }

    std::sort(found.begin(), found.end(), [](const GroupSubset& x, const GroupSubset& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x.indices() < y.indices();
    });

    std::vector<Subgroup> out;
    out.reserve(found.size());
    for (auto& s : found) out.push_back(subgroup_unchecked(std::move(s)));
    return out;
}

namespace {

using Matrix = std::vector<std::vector<Int>>;

void column_sub(Matrix& m, Matrix& v, size_t target, size_t source, const Int& q) {
    for (auto& row : m) row[target] -= q * row[source];
    for (auto& row : v) row[target] -= q * row[source];
}

void column_swap(Matrix& m, Matrix& v, size_t x, size_t y) {
    for (auto& row : m) std::swap(row[x], row[y]);
    for (auto& row : v) std::swap(row[x], row[y]);
}

/* diagonalize M (rows generate the relation lattice) with column tracking in V;
 * rows of M may be permuted/combined freely */
void smith_diagonalize(Matrix& m, Matrix& v) {
    size_t rows = m.size();
    size_t cols = m.empty() ? 0 : m[0].size();
    size_t rank = std::min(rows, cols);

    for (size_t p = 0; p < rank; ++p) {
        for (;;) {
            /* locate the entry of smallest nonzero magnitude in the block */
            size_t bi = rows, bj = cols;
            Int best;
            for (size_t i = p; i < rows; ++i)
                for (size_t j = p; j < cols; ++j) {
                    if (m[i][j] == 0) continue;
                    Int mag = abs(m[i][j]);
                    if (bi == rows || mag < best) {
                        best = mag;
                        bi = i;
                        bj = j;
                    }
                }
            if (bi == rows) return; /* block is zero */
            if (bi != p) std::swap(m[bi], m[p]);
            if (bj != p) column_swap(m, v, bj, p);

            bool clean = true;
            for (size_t i = p + 1; i < rows; ++i) {
                if (m[i][p] == 0) continue;
                Int q = m[i][p] / m[p][p];
                for (size_t j = p; j < cols; ++j) m[i][j] -= q * m[p][j];
                if (m[i][p] != 0) clean = false;
            }
            for (size_t j = p + 1; j < cols; ++j) {
                if (m[p][j] == 0) continue;
                Int q = m[p][j] / m[p][p];
                column_sub(m, v, j, p, q);
                if (m[p][j] != 0) clean = false;
            }
            if (!clean) continue;

            /* enforce the divisibility chain so the factor list is canonical */
            bool divisible = true;
            for (size_t i = p + 1; i < rows && divisible; ++i)
                for (size_t j = p + 1; j < cols; ++j)
                    if (m[i][j] % m[p][p] != 0) {
                        for (size_t jj = p; jj < cols; ++jj) m[p][jj] += m[i][jj];
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
    }
}

} // namespace

QuotientProjection quotient_projection(const FiniteAbelianGroup& g, const Subgroup& h) {
    if (h.group() != g) throw std::invalid_argument("group mismatch");

    long long order = g.order();
    long long index = h.index();

    if (h.size() == 1) {
        std::vector<long long> id(static_cast<size_t>(order));
        for (long long i = 0; i < order; ++i) id[static_cast<size_t>(i)] = i;
        return QuotientProjection{g, g, std::move(id)};
    }
    if (index == 1) {
        return QuotientProjection{g, FiniteAbelianGroup({1}),
                                  std::vector<long long>(static_cast<size_t>(order), 0)};
    }

    const auto& factors = g.cyclic_factors();
    size_t k = factors.size();

    /* generators of H found greedily */
    std::vector<long long> hgens;
    {
        GroupSubset span(g);
        span.insert(g.zero());
        for (long long m : h.elements().indices()) {
            if (span.contains(m)) continue;
            hgens.push_back(m);
            span = extend_subgroup(span, m);
        }
    }

    /* relation lattice: n_i e_i plus lifted generators of H */
    Matrix m;
    for (size_t i = 0; i < k; ++i) {
        std::vector<Int> row(k, 0);
        row[i] = factors[i];
        m.push_back(std::move(row));
    }
    for (long long hg : hgens) {
        auto coords = g.decode(hg);
        std::vector<Int> row(k);
        for (size_t i = 0; i < k; ++i) row[i] = coords[i];
        m.push_back(std::move(row));
    }

    Matrix v(k, std::vector<Int>(k, 0));
    for (size_t i = 0; i < k; ++i) v[i][i] = 1;

    smith_diagonalize(m, v);

    std::vector<long long> diag(k);
    for (size_t i = 0; i < k; ++i) {
        Int d = abs(m[i][i]);
        if (d == 0) throw std::logic_error("relation lattice lost full rank");
        diag[i] = d.convert_to<long long>();
    }

    std::vector<long long> qfactors;
    std::vector<size_t> kept;
    long long qorder = 1;
    for (size_t i = 0; i < k; ++i) {
        if (diag[i] > 1) {
            qfactors.push_back(diag[i]);
            kept.push_back(i);
            qorder *= diag[i];
        }
    }
    if (qfactors.empty()) qfactors.push_back(1);
    if (qorder != index) throw std::logic_error("quotient order mismatch");

    FiniteAbelianGroup quotient(qfactors);
    std::vector<long long> map(static_cast<size_t>(order));
    for (long long e = 0; e < order; ++e) {
        auto coords = g.decode(e);
        std::vector<long long> image(kept.size());
        for (size_t t = 0; t < kept.size(); ++t) {
            size_t j = kept[t];
            Int acc = 0;
            for (size_t i = 0; i < k; ++i) acc += Int(coords[i]) * v[i][j];
            Int r = acc % diag[j];
            if (r < 0) r += diag[j];
            image[t] = r.convert_to<long long>();
        }
        map[static_cast<size_t>(e)] = quotient.encode(image);
    }
    return QuotientProjection{g, std::move(quotient), std::move(map)};
}

GroupSubset project_subset(const QuotientProjection& proj, const GroupSubset& s) {
    GroupSubset out(proj.quotient);
    for (long long m : s.indices()) out.insert(proj.map[static_cast<size_t>(m)]);
    return out;
}

GroupSubset pullback_subset(const QuotientProjection& proj, const GroupSubset& image) {
    if (image.group() != proj.quotient) throw std::invalid_argument("group mismatch");
    GroupSubset out(proj.source);
    for (long long e = 0; e < proj.source.order(); ++e)
        if (image.contains(proj.map[static_cast<size_t>(e)])) out.insert(e);
    return out;
}

} // namespace tset
