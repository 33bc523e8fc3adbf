#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "sharkswim/rng.hpp"
#include "sharkswim/stable.hpp"

namespace sharkswim {

// Random recursive tree on nodes 1..n with Bernoulli bond percolation decided
// at insertion time: node k >= 2 attaches to a uniform node in {1..k-1} and
// its parent edge survives independently with probability p. Deleted edges
// split the tree into clusters; every cluster is rooted at its smallest label.
// Nodes are 1-based throughout, matching the growth order.
class ClusterForest {
public:
    ClusterForest(int64_t n, double p, RngStream& rng);

    int64_t size() const { return n_; }
    double retention() const { return p_; }

    // parent(k), edge_kept(k) defined for k >= 2.
    int64_t parent(int64_t k) const { return parent_[k - 2]; }
    bool edge_kept(int64_t k) const { return kept_[k - 2] != 0; }

    int64_t cluster_root(int64_t node) const { return roots_[cluster_of_[node - 1]]; }
    int64_t cluster_count() const { return int64_t(roots_.size()); }

    // Cluster roots in creation order (roots_[0] == 1) and their sizes.
    std::span<const int64_t> roots() const { return roots_; }
    std::span<const int64_t> sizes() const { return sizes_; }

    // |c_{i,n}| by node label; 0 when no cluster is rooted at i.
    int64_t cluster_size_at(int64_t label) const;

    // Size of the percolated subtree rooted at k: k itself plus descendants
    // reachable from k through kept edges only.
    int64_t subtree_size(int64_t k) const;

    // sum over clusters of size^alpha (unnormalized).
    double cluster_alpha_sum(double alpha) const;

private:
    int64_t n_;
    double p_;
    std::vector<int64_t> parent_;     // parent_[k-2] for node k
    std::vector<uint8_t> kept_;       // kept_[k-2] for node k
    std::vector<int32_t> cluster_of_; // node index -> cluster index
    std::vector<int64_t> roots_;      // cluster index -> root label
    std::vector<int64_t> sizes_;      // cluster index -> size
};

// One independent d-dimensional spin per cluster root.
class SpinAssignment {
public:
    SpinAssignment(const ClusterForest& forest, const StableSpec& spec, RngStream& rng);

    int dimension() const { return dimension_; }
    int64_t cluster_count() const { return int64_t(values_.size()) / dimension_; }
    std::span<const double> spin(int64_t cluster_index) const {
        return {values_.data() + std::size_t(cluster_index) * dimension_,
                std::size_t(dimension_)};
    }

private:
    int dimension_;
    std::vector<double> values_; // cluster-major, d doubles each
};

// S_n = sum over clusters of |c| * spin. Throws if the spins were drawn for a
// different forest shape.
std::vector<double> position_from_clusters(const ClusterForest& forest,
                                           const SpinAssignment& spins);

// Single-pass grower for large-n experiments: keeps only per-cluster size,
// a node -> cluster map, the running position S = sum |c_i| xi_i and the
// running sum of size^alpha. O(1) amortized per inserted node.
class GrowingForest {
public:
    struct Options {
        double alpha = 0.0;   // track sum of size^alpha when > 0
        bool with_spins = false;
        StableSpec spin_spec{}; // used when with_spins
    };

    GrowingForest(double p, Options opts);

    void reset();
    void grow_to(int64_t n, RngStream& rng);

    int64_t size() const { return int64_t(cluster_of_.size()); }
    int64_t cluster_count() const { return int64_t(sizes_.size()); }
    double alpha_sum() const { return alpha_sum_; }
    std::span<const double> position() const { return position_; }
    std::span<const int64_t> sizes() const { return sizes_; }
    int64_t root_cluster_size() const { return sizes_.empty() ? 0 : sizes_[0]; }

private:
    void step(RngStream& rng);

    double p_;
    Options opts_;
    std::vector<int32_t> cluster_of_;
    std::vector<int64_t> sizes_;
    std::vector<double> spins_;    // cluster-major
    std::vector<double> position_; // d entries
    double alpha_sum_ = 0.0;
};

// Exhaustive enumeration over all (attachment, edge-pattern) outcomes of the
// n-node percolated tree, n <= 8. Probabilities are exact rationals over the
// common denominator den^(n-1) * (n-1)! when p = num/den; weights passed to
// the visitor are the integer numerators num^#kept * (den-num)^#deleted.
struct ExactOutcome {
    std::span<const int64_t> parent;   // parent[k-2] for node k
    std::span<const uint8_t> kept;     // kept[k-2]
    std::span<const int64_t> size_at;  // size_at[i-1] = |c_{i,n}|, 0 if not a root
    uint64_t weight;                   // numerator over the common denominator
};

void enumerate_outcomes(int n, int64_t p_num, int64_t p_den,
                        const std::function<void(const ExactOutcome&)>& visit);

// Joint and derived exact laws. Keys of `joint` are the vectors
// (|c_{1,n}|,...,|c_{n,n}|); all probabilities sum to 1 within 1e-12.
struct ExactClusterLaw {
    int n = 0;
    int64_t p_num = 0, p_den = 1;
    uint64_t denominator = 1;
    std::map<std::vector<int64_t>, double> joint;

    std::map<int64_t, double> root_cluster_pmf() const;        // law of |c_{1,n}|
    std::map<std::vector<int64_t>, double> size_multiset_pmf() const; // sorted sizes
    std::map<double, double> alpha_sum_law(double alpha) const; // law of sum |c_i|^alpha
    double mean_root_cluster(int order = 1) const;
};

ExactClusterLaw enumerate_exact(int n, int64_t p_num, int64_t p_den);
ExactClusterLaw enumerate_exact(int n, double p); // double fallback, checked to 1e-12

// Exact law of the percolated subtree size |c'_{k,n}| by direct enumeration.
std::map<int64_t, double> enumerate_subtree_law(int n, int k, double p);

} // namespace sharkswim
