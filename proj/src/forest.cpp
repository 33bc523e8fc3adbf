#include "sharkswim/forest.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sharkswim {

namespace {

void check_growth_params(int64_t n, double p) {
    if (n < 1) throw std::invalid_argument("forest: n must be >= 1");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("forest: retention p must lie in (0,1)");
}

double pow_size(int64_t s, double alpha) {
    if (alpha == 1.0) return double(s);
    if (alpha == 2.0) return double(s) * double(s);
    return std::pow(double(s), alpha);
}

} // namespace

ClusterForest::ClusterForest(int64_t n, double p, RngStream& rng) : n_(n), p_(p) {
    check_growth_params(n, p);
    parent_.resize(std::size_t(n - 1));
    kept_.resize(std::size_t(n - 1));
    cluster_of_.resize(std::size_t(n));
    roots_.reserve(std::size_t(n / 4) + 1);
    sizes_.reserve(std::size_t(n / 4) + 1);
    roots_.push_back(1);
    sizes_.push_back(1);
    cluster_of_[0] = 0;
    for (int64_t k = 2; k <= n; ++k) {
        int64_t parent = 1 + int64_t(rng.uniform_below(uint64_t(k - 1)));
        bool kept = rng.bernoulli(p);
        parent_[std::size_t(k - 2)] = parent;
        kept_[std::size_t(k - 2)] = kept ? 1 : 0;
        int32_t idx;
        if (kept) {
            idx = cluster_of_[std::size_t(parent - 1)];
            ++sizes_[std::size_t(idx)];
        } else {
            idx = int32_t(roots_.size());
            roots_.push_back(k);
            sizes_.push_back(1);
        }
        cluster_of_[std::size_t(k - 1)] = idx;
    }
}

int64_t ClusterForest::cluster_size_at(int64_t label) const {
    // Roots are created in increasing label order.
    auto it = std::lower_bound(roots_.begin(), roots_.end(), label);
    if (it == roots_.end() || *it != label) return 0;
    return sizes_[std::size_t(it - roots_.begin())];
}

int64_t ClusterForest::subtree_size(int64_t k) const {
    if (k < 1 || k > n_) throw std::invalid_argument("subtree_size: node out of range");
    // member[j-k] <=> j's chain of kept edges reaches k without leaving {k..n}.
    std::vector<uint8_t> member(std::size_t(n_ - k + 1), 0);
    member[0] = 1;
    int64_t count = 1;
    for (int64_t j = k + 1; j <= n_; ++j) {
        if (!edge_kept(j)) continue;
        int64_t par = parent(j);
        if (par >= k && member[std::size_t(par - k)]) {
            member[std::size_t(j - k)] = 1;
            ++count;
        }
    }
    return count;
}

double ClusterForest::cluster_alpha_sum(double alpha) const {
    double sum = 0.0;
    for (int64_t s : sizes_) sum += pow_size(s, alpha);
    return sum;
}

SpinAssignment::SpinAssignment(const ClusterForest& forest, const StableSpec& spec,
                               RngStream& rng)
    : dimension_(spec.dimension) {
    spec.validate();
    values_.resize(std::size_t(forest.cluster_count()) * std::size_t(dimension_));
    for (int64_t c = 0; c < forest.cluster_count(); ++c) {
        sample_isotropic_stable(
            spec, rng,
            {values_.data() + std::size_t(c) * dimension_, std::size_t(dimension_)});
    }
}

std::vector<double> position_from_clusters(const ClusterForest& forest,
                                           const SpinAssignment& spins) {
    std::vector<double> pos(std::size_t(spins.dimension()), 0.0);
    auto sizes = forest.sizes();
    if (spins.cluster_count() != forest.cluster_count())
        throw std::logic_error("position_from_clusters: spins cover a different cluster set");
    for (int64_t c = 0; c < forest.cluster_count(); ++c) {
        auto xi = spins.spin(c);
        double w = double(sizes[std::size_t(c)]);
        for (std::size_t j = 0; j < pos.size(); ++j) pos[j] += w * xi[j];
    }
    return pos;
}

GrowingForest::GrowingForest(double p, Options opts) : p_(p), opts_(std::move(opts)) {
    check_growth_params(1, p);
    if (opts_.with_spins) opts_.spin_spec.validate();
    position_.assign(opts_.with_spins ? std::size_t(opts_.spin_spec.dimension) : 0, 0.0);
}

void GrowingForest::reset() {
    cluster_of_.clear();
    sizes_.clear();
    spins_.clear();
    std::fill(position_.begin(), position_.end(), 0.0);
    alpha_sum_ = 0.0;
}

void GrowingForest::step(RngStream& rng) {
    int64_t k = size() + 1;
    int32_t idx;
    if (k == 1) {
        idx = 0;
    } else {
        int64_t parent = 1 + int64_t(rng.uniform_below(uint64_t(k - 1)));
        bool kept = rng.bernoulli(p_);
        idx = kept ? cluster_of_[std::size_t(parent - 1)] : int32_t(sizes_.size());
    }
    if (idx == int64_t(sizes_.size())) {
        sizes_.push_back(0);
        if (opts_.with_spins) {
            std::size_t off = spins_.size();
            spins_.resize(off + std::size_t(opts_.spin_spec.dimension));
            sample_isotropic_stable(opts_.spin_spec, rng,
                                    {spins_.data() + off,
                                     std::size_t(opts_.spin_spec.dimension)});
        }
    }
    int64_t s = sizes_[std::size_t(idx)]++;
    cluster_of_.push_back(idx);
    if (opts_.alpha > 0.0)
        alpha_sum_ += pow_size(s + 1, opts_.alpha) - pow_size(s, opts_.alpha);
    if (opts_.with_spins) {
        const double* xi = spins_.data() + std::size_t(idx) * opts_.spin_spec.dimension;
        for (std::size_t j = 0; j < position_.size(); ++j) position_[j] += xi[j];
    }
}

void GrowingForest::grow_to(int64_t n, RngStream& rng) {
    if (n < size()) throw std::invalid_argument("grow_to: cannot shrink");
    cluster_of_.reserve(std::size_t(n));
    while (size() < n) step(rng);
}

namespace {

struct EnumState {
    int n;
    std::vector<int64_t> parent; // parent[k-2]
    std::vector<uint8_t> kept;
    std::vector<int64_t> size_at;
    std::vector<int32_t> root_of; // node -> root label (1-based values)
};

template <typename Weight, typename Visit>
void enumerate_rec(EnumState& st, int k, Weight w, Weight w_keep, Weight w_del,
                   const Visit& visit) {
    if (k > st.n) {
        std::fill(st.size_at.begin(), st.size_at.end(), 0);
        for (int j = 1; j <= st.n; ++j) ++st.size_at[std::size_t(st.root_of[j - 1] - 1)];
        visit(w);
        return;
    }
    for (int par = 1; par <= k - 1; ++par) {
        st.parent[std::size_t(k - 2)] = par;
        st.kept[std::size_t(k - 2)] = 1;
        st.root_of[std::size_t(k - 1)] = st.root_of[std::size_t(par - 1)];
        enumerate_rec(st, k + 1, Weight(w * w_keep), w_keep, w_del, visit);
        st.kept[std::size_t(k - 2)] = 0;
        st.root_of[std::size_t(k - 1)] = int32_t(k);
        enumerate_rec(st, k + 1, Weight(w * w_del), w_keep, w_del, visit);
    }
}

void check_enum_params(int n) {
    if (n < 1 || n > 8)
        throw std::invalid_argument("enumerate_exact: n must lie in [1,8]");
}

uint64_t ipow(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

uint64_t factorial(int n) {
    uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= uint64_t(i);
    return r;
}

// Recognize p as num/den with a small denominator; 0 on failure.
int64_t rational_denominator(double p, int64_t max_den = 10000) {
    for (int64_t den = 2; den <= max_den; ++den) {
        double num = p * double(den);
        double r = std::round(num);
        if (r >= 1.0 && r <= double(den - 1) && std::abs(num - r) < 1e-12 * double(den))
            return den;
    }
    return 0;
}

} // namespace

void enumerate_outcomes(int n, int64_t p_num, int64_t p_den,
                        const std::function<void(const ExactOutcome&)>& visit) {
    check_enum_params(n);
    if (p_den < 2 || p_num < 1 || p_num >= p_den)
        throw std::invalid_argument("enumerate_outcomes: need 0 < p_num/p_den < 1");
    if (p_den > 100)
        throw std::invalid_argument("enumerate_outcomes: denominator too large for exact weights");
    EnumState st;
    st.n = n;
    st.parent.assign(std::size_t(n > 1 ? n - 1 : 0), 0);
    st.kept.assign(std::size_t(n > 1 ? n - 1 : 0), 0);
    st.size_at.assign(std::size_t(n), 0);
    st.root_of.assign(std::size_t(n), 0);
    st.root_of[0] = 1;
    auto emit = [&](uint64_t w) {
        visit(ExactOutcome{st.parent, st.kept, st.size_at, w});
    };
    if (n == 1) {
        st.size_at[0] = 1;
        emit(1);
        return;
    }
    enumerate_rec<uint64_t>(st, 2, 1, uint64_t(p_num), uint64_t(p_den - p_num), emit);
}

ExactClusterLaw enumerate_exact(int n, int64_t p_num, int64_t p_den) {
    ExactClusterLaw law;
    law.n = n;
    law.p_num = p_num;
    law.p_den = p_den;
    law.denominator = ipow(uint64_t(p_den), n - 1) * factorial(n - 1);
    std::map<std::vector<int64_t>, uint64_t> numer;
    // Each attachment sequence carries probability 1/(n-1)!; the edge pattern
    // contributes num^#kept (den-num)^#deleted over den^(n-1).
    enumerate_outcomes(n, p_num, p_den, [&](const ExactOutcome& o) {
        numer[std::vector<int64_t>(o.size_at.begin(), o.size_at.end())] += o.weight;
    });
    double total = 0.0;
    for (auto& [key, w] : numer) {
        double prob = double(w) / double(law.denominator);
        law.joint.emplace(key, prob);
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::logic_error("enumerate_exact: probabilities do not sum to 1");
    return law;
}

ExactClusterLaw enumerate_exact(int n, double p) {
    check_enum_params(n);
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("enumerate_exact: p must lie in (0,1)");
    if (int64_t den = rational_denominator(p); den != 0 && den <= 100)
        return enumerate_exact(n, int64_t(std::llround(p * double(den))), den);
    // Double fallback for awkward p; same walk with floating-point weights.
    ExactClusterLaw law;
    law.n = n;
    law.denominator = factorial(n - 1);
    EnumState st;
    st.n = n;
    st.parent.assign(std::size_t(n > 1 ? n - 1 : 0), 0);
    st.kept.assign(std::size_t(n > 1 ? n - 1 : 0), 0);
    st.size_at.assign(std::size_t(n), 0);
    st.root_of.assign(std::size_t(n), 0);
    st.root_of[0] = 1;
    std::map<std::vector<int64_t>, double> mass;
    if (n == 1) {
        law.joint.emplace(std::vector<int64_t>{1}, 1.0);
        return law;
    }
    enumerate_rec<double>(st, 2, 1.0 / double(factorial(n - 1)), p, 1.0 - p,
                          [&](double w) {
                              mass[std::vector<int64_t>(st.size_at.begin(),
                                                        st.size_at.end())] += w;
                          });
    double total = 0.0;
    for (auto& [key, w] : mass) {
        law.joint.emplace(key, w);
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::logic_error("enumerate_exact: probabilities do not sum to 1");
    return law;
}

std::map<int64_t, double> ExactClusterLaw::root_cluster_pmf() const {
    std::map<int64_t, double> pmf;
    for (auto& [key, prob] : joint) pmf[key[0]] += prob;
    return pmf;
}

std::map<std::vector<int64_t>, double> ExactClusterLaw::size_multiset_pmf() const {
    std::map<std::vector<int64_t>, double> pmf;
    for (auto& [key, prob] : joint) {
        std::vector<int64_t> sizes;
        for (int64_t s : key)
            if (s > 0) sizes.push_back(s);
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        pmf[sizes] += prob;
    }
    return pmf;
}

std::map<double, double> ExactClusterLaw::alpha_sum_law(double alpha) const {
    std::map<double, double> lawmap;
    for (auto& [key, prob] : joint) {
        std::vector<int64_t> sizes;
        for (int64_t s : key)
            if (s > 0) sizes.push_back(s);
        std::sort(sizes.begin(), sizes.end(), std::greater<>()); // canonical sum order
        double a = 0.0;
        for (int64_t s : sizes) a += pow_size(s, alpha);
        lawmap[a] += prob;
    }
    return lawmap;
}

double ExactClusterLaw::mean_root_cluster(int order) const {
    double mean = 0.0;
    for (auto& [key, prob] : joint) mean += pow_size(key[0], double(order)) * prob;
    return mean;
}

std::map<int64_t, double> enumerate_subtree_law(int n, int k, double p) {
    check_enum_params(n);
    if (k < 1 || k > n) throw std::invalid_argument("enumerate_subtree_law: bad k");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("enumerate_subtree_law: p must lie in (0,1)");
    std::map<int64_t, double> pmf;
    if (n == 1) {
        pmf[1] = 1.0;
        return pmf;
    }
    EnumState st;
    st.n = n;
    st.parent.assign(std::size_t(n - 1), 0);
    st.kept.assign(std::size_t(n - 1), 0);
    st.size_at.assign(std::size_t(n), 0);
    st.root_of.assign(std::size_t(n), 0);
    st.root_of[0] = 1;
    uint64_t nfact = factorial(n - 1);
    enumerate_rec<double>(st, 2, 1.0 / double(nfact), p, 1.0 - p, [&](double w) {
        // |c'_{k,n}|: nodes whose kept-edge chain reaches k without dropping below it.
        std::vector<uint8_t> member(std::size_t(n - k + 1), 0);
        member[0] = 1;
        int64_t count = 1;
        for (int j = k + 1; j <= n; ++j) {
            if (!st.kept[std::size_t(j - 2)]) continue;
            int64_t par = st.parent[std::size_t(j - 2)];
            if (par >= k && member[std::size_t(par - k)]) {
                member[std::size_t(j - k)] = 1;
                ++count;
            }
        }
        pmf[count] += w;
    });
    return pmf;
}

} // namespace sharkswim
