#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "emdlsh/digest.hpp"
#include "emdlsh/point_set.hpp"
#include "emdlsh/projection.hpp"
#include "emdlsh/random.hpp"

namespace emdlsh {

using ElementId = std::uint32_t;

struct NodeRef {
    Digest128 key;
    std::uint32_t depth = 0;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct TreeNode {
    std::uint32_t depth = 0;
    Digest128 key;
    Digest128 parent;  // unused at the root
    std::vector<ElementId> members;
    ElementId rep = 0;  // meaningful whenever members is nonempty
    std::vector<std::uint64_t> pattern;  // kept only when pattern checking is on
};

// Root-to-leaf path of one vector with the weights of its L+1 edges.
struct WeightedPath {
    ElementId id = 0;
    std::vector<NodeRef> nodes;   // v_0 .. v_{L+1}
    std::vector<double> weights;  // w(v_l, v_{l+1}), l = 0..L
};

// Result of an insert or erase: the updated element and every live element
// whose path weights may have changed, with its current weighted path.
struct PathReport {
    ElementId updated = 0;
    std::vector<WeightedPath> paths;
};

// Level samples and representatives draw from separate seeds, so trees with
// matched level seeds share their node structure exactly.
struct TreeSeeds {
    std::uint64_t levels = 0;
    std::uint64_t reps = 0;

    static TreeSeeds from(std::uint64_t seed) {
        return {derive_key(seed, "tree-levels"), derive_key(seed, "tree-reps")};
    }
};

struct QuadTreeOptions {
    // Store full projected patterns per node and throw StructuralError on a
    // digest collision. Defaults to on when the effective dimension is <= 16.
    std::optional<bool> check_patterns;
};

// Level-wise random-projection tree over a multiset Omega. Edges into
// materialized nodes weigh ||Rep(parent) - Rep(child)||_1; edges into empty
// subtrees weigh xi * d_eff / 2^l. Single writer; concurrent readers are fine
// between updates.
class QuadTree {
public:
    static QuadTree build(const TreeShape& shape, std::span<const Vector> omega, double xi, TreeSeeds seeds,
                          QuadTreeOptions opts = {});
    static QuadTree build(const TreeShape& shape, std::span<const Vector> omega, double xi, std::uint64_t seed,
                          QuadTreeOptions opts = {}) {
        return build(shape, omega, xi, TreeSeeds::from(seed), opts);
    }

    const TreeShape& shape() const noexcept { return shape_; }
    std::size_t depth() const noexcept { return L_; }  // L
    double xi() const noexcept { return xi_; }
    std::size_t omega_size() const noexcept { return live_; }
    const TreeSeeds& seeds() const noexcept { return seeds_; }
    const LevelProjection& level(std::size_t l) const { return levels_.at(l); }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    const std::unordered_map<Digest128, TreeNode, DigestHash>& nodes() const noexcept { return nodes_; }

    static Digest128 root_key();
    static Digest128 child_key(const Digest128& parent, std::uint32_t child_depth, const Digest128& pattern);

    // v_0(a) .. v_{L+1}(a).
    std::vector<NodeRef> locate(const Vector& a) const;
    const TreeNode* find(const Digest128& key) const;
    bool contains(ElementId id) const noexcept { return id < alive_.size() && alive_[id]; }
    const Vector& element(ElementId id) const;
    std::optional<ElementId> find_element(const Vector& a) const;

    double unmaterialized_weight(std::uint32_t parent_depth) const;
    // Unmaterialized children are checked by depth only.
    double edge_weight(const NodeRef& parent, const NodeRef& child) const;
    std::vector<double> path_weights(std::span<const NodeRef> path) const;
    WeightedPath weighted_path(const Vector& a) const;
    double tree_distance(const Vector& a, const Vector& b) const;
    // Distance from two precomputed weighted paths.
    static double tree_distance(const WeightedPath& a, const WeightedPath& b);

    PathReport insert(const Vector& a);
    PathReport erase(ElementId id);
    // Erases one element equal to a; throws NotFound if there is none.
    PathReport erase_value(const Vector& a);

private:
    QuadTree(const TreeShape& shape, double xi, TreeSeeds seeds, QuadTreeOptions opts);

    std::vector<NodeRef> locate_impl(const Vector& a, std::vector<std::vector<std::uint64_t>>* patterns) const;
    ElementId add_member_nodes(const Vector& a, std::vector<Digest128>& changed, bool draw_reps);
    PathReport report_for(ElementId updated, const std::vector<Digest128>& changed) const;

    TreeShape shape_;
    std::size_t L_;
    double xi_;
    TreeSeeds seeds_;
    bool check_patterns_;
    std::vector<LevelProjection> levels_;
    std::unordered_map<Digest128, TreeNode, DigestHash> nodes_;
    std::vector<Vector> elements_;
    std::vector<char> alive_;
    std::vector<std::vector<Digest128>> paths_;  // node keys per element
    std::size_t live_ = 0;
    CounterRng update_rng_;
};

}  // namespace emdlsh
