#include "emdlsh/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emdlsh/emd.hpp"
#include "emdlsh/errors.hpp"

namespace emdlsh {

namespace {
constexpr std::uint64_t kRootTag = 0x726f6f74ULL;
constexpr std::uint64_t kNodeTag = 0x6e6f6465ULL;
constexpr std::size_t kPatternCheckMaxDim = 16;
}  // namespace

Digest128 QuadTree::root_key() { return DigestBuilder(kRootTag).add(0).finish(); }

Digest128 QuadTree::child_key(const Digest128& parent, std::uint32_t child_depth, const Digest128& pattern) {
    return DigestBuilder(kNodeTag).add(parent).add(child_depth).add(pattern).finish();
}

QuadTree::QuadTree(const TreeShape& shape, double xi, TreeSeeds seeds, QuadTreeOptions opts)
    : shape_(shape),
      L_(tree_depth(shape.effective_dim())),
      xi_(xi),
      seeds_(seeds),
      check_patterns_(opts.check_patterns.value_or(shape.effective_dim() <= kPatternCheckMaxDim)),
      update_rng_(seeds.reps, "tree-updates") {
    if (shape.mode == Mode::real) throw InvalidInput("trees need hypercube or grid vectors");
    if (!(xi >= 1.0)) throw ParameterError("tree weight scale xi must be >= 1");
    levels_.reserve(L_ + 1);
    for (std::size_t l = 0; l <= L_; ++l) levels_.push_back(LevelProjection::for_level(shape_, l, seeds.levels));
}

QuadTree QuadTree::build(const TreeShape& shape, std::span<const Vector> omega, double xi, TreeSeeds seeds,
                         QuadTreeOptions opts) {
    QuadTree t(shape, xi, seeds, opts);
    std::vector<Digest128> unused;
    for (const Vector& a : omega) {
        shape.check(a);
        t.add_member_nodes(a, unused, false);
    }
    std::vector<Digest128> keys;
    keys.reserve(t.nodes_.size());
    for (const auto& [k, node] : t.nodes_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    CounterRng rng(seeds.reps, "tree-build");
    for (const Digest128& k : keys) {
        TreeNode& node = t.nodes_.at(k);
        node.rep = node.members[rng.uniform_index(node.members.size())];
    }
    return t;
}

std::vector<NodeRef> QuadTree::locate_impl(const Vector& a, std::vector<std::vector<std::uint64_t>>* patterns) const {
    shape_.check(a);
    std::vector<NodeRef> path;
    path.reserve(L_ + 2);
    Digest128 key = root_key();
    path.push_back({key, 0});
    if (patterns) patterns->assign(L_ + 1, {});
    for (std::size_t l = 0; l <= L_; ++l) {
        Digest128 pat;
        if (patterns) {
            levels_[l].pattern_words(a, (*patterns)[l]);
            pat = LevelProjection::digest_words((*patterns)[l]);
        } else {
            pat = levels_[l].pattern(a);
        }
        key = child_key(key, static_cast<std::uint32_t>(l + 1), pat);
        path.push_back({key, static_cast<std::uint32_t>(l + 1)});
    }
    return path;
}

std::vector<NodeRef> QuadTree::locate(const Vector& a) const { return locate_impl(a, nullptr); }

const TreeNode* QuadTree::find(const Digest128& key) const {
    auto it = nodes_.find(key);
    return it == nodes_.end() ? nullptr : &it->second;
}

const Vector& QuadTree::element(ElementId id) const {
    if (id >= elements_.size()) throw NotFound("no element with id " + std::to_string(id));
    return elements_[id];
}

std::optional<ElementId> QuadTree::find_element(const Vector& a) const {
    const auto path = locate(a);
    const TreeNode* leaf = find(path.back().key);
    if (!leaf) return std::nullopt;
    for (ElementId id : leaf->members)
        if (elements_[id] == a) return id;
    return std::nullopt;
}

ElementId QuadTree::add_member_nodes(const Vector& a, std::vector<Digest128>& changed, bool draw_reps) {
    std::vector<std::vector<std::uint64_t>> patterns;
    const auto path = locate_impl(a, check_patterns_ ? &patterns : nullptr);
    if (check_patterns_) {
        for (std::size_t i = 1; i < path.size(); ++i) {
            const TreeNode* node = find(path[i].key);
            if (node && node->pattern != patterns[i - 1])
                throw StructuralError("node key collision at depth " + std::to_string(i));
        }
    }
    const auto id = static_cast<ElementId>(elements_.size());
    elements_.push_back(a);
    alive_.push_back(1);
    ++live_;
    std::vector<Digest128> keys;
    keys.reserve(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        auto [it, fresh] = nodes_.try_emplace(path[i].key);
        TreeNode& node = it->second;
        if (fresh) {
            node.depth = path[i].depth;
            node.key = path[i].key;
            if (i > 0) node.parent = path[i - 1].key;
            if (check_patterns_ && i > 0) node.pattern = patterns[i - 1];
        }
        node.members.push_back(id);
        if (draw_reps && update_rng_.uniform_index(node.members.size()) == 0) {
            node.rep = id;
            changed.push_back(node.key);
        } else if (fresh) {
            node.rep = id;
        }
        keys.push_back(path[i].key);
    }
    paths_.push_back(std::move(keys));
    return id;
}

PathReport QuadTree::report_for(ElementId updated, const std::vector<Digest128>& changed) const {
    std::vector<ElementId> ids;
    if (contains(updated)) ids.push_back(updated);
    for (const Digest128& k : changed)
        if (const TreeNode* node = find(k)) ids.insert(ids.end(), node->members.begin(), node->members.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    PathReport report;
    report.updated = updated;
    report.paths.reserve(ids.size());
    for (ElementId id : ids) {
        WeightedPath wp;
        wp.id = id;
        wp.nodes.reserve(paths_[id].size());
        for (std::size_t i = 0; i < paths_[id].size(); ++i)
            wp.nodes.push_back({paths_[id][i], static_cast<std::uint32_t>(i)});
        wp.weights = path_weights(wp.nodes);
        report.paths.push_back(std::move(wp));
    }
    return report;
}

PathReport QuadTree::insert(const Vector& a) {
    shape_.check(a);
    std::vector<Digest128> changed;
    const ElementId id = add_member_nodes(a, changed, true);
    return report_for(id, changed);
}

PathReport QuadTree::erase(ElementId id) {
    if (!contains(id)) throw NotFound("element " + std::to_string(id) + " is not in the tree");
    std::vector<Digest128> changed;
    for (const Digest128& key : paths_[id]) {
        TreeNode& node = nodes_.at(key);
        auto it = std::find(node.members.begin(), node.members.end(), id);
        node.members.erase(it);
        if (node.members.empty()) {
            nodes_.erase(key);
        } else if (node.rep == id) {
            node.rep = node.members[update_rng_.uniform_index(node.members.size())];
            changed.push_back(key);
        }
    }
    alive_[id] = 0;
    --live_;
    return report_for(id, changed);
}

PathReport QuadTree::erase_value(const Vector& a) {
    const auto id = find_element(a);
    if (!id) throw NotFound("vector is not in the tree");
    return erase(*id);
}

double QuadTree::unmaterialized_weight(std::uint32_t parent_depth) const {
    return xi_ * static_cast<double>(shape_.effective_dim()) / std::ldexp(1.0, static_cast<int>(parent_depth));
}

double QuadTree::edge_weight(const NodeRef& parent, const NodeRef& child) const {
    if (child.depth != parent.depth + 1 || parent.depth > L_)
        throw StructuralError("keys at depths " + std::to_string(parent.depth) + " and " +
                              std::to_string(child.depth) + " are not a parent/child pair");
    const TreeNode* c = find(child.key);
    if (!c) return unmaterialized_weight(parent.depth);
    const TreeNode* p = find(parent.key);
    if (c->depth != child.depth || !p || c->parent != parent.key)
        throw StructuralError("child key does not hang below the given parent");
    return ground_distance(elements_[p->rep], elements_[c->rep], 1.0);
}

std::vector<double> QuadTree::path_weights(std::span<const NodeRef> path) const {
    if (path.size() != L_ + 2) throw StructuralError("a root-to-leaf path has L + 2 nodes");
    std::vector<double> w(L_ + 1);
    for (std::size_t l = 0; l <= L_; ++l) w[l] = edge_weight(path[l], path[l + 1]);
    return w;
}

WeightedPath QuadTree::weighted_path(const Vector& a) const {
    WeightedPath wp;
    wp.id = 0;
    wp.nodes = locate(a);
    wp.weights = path_weights(wp.nodes);
    return wp;
}

double QuadTree::tree_distance(const WeightedPath& a, const WeightedPath& b) {
    if (a.nodes.size() != b.nodes.size()) throw StructuralError("paths from different trees");
    std::size_t i = 0;
    while (i < a.nodes.size() && a.nodes[i].key == b.nodes[i].key) ++i;
    if (i == a.nodes.size()) return 0.0;
    double d = 0.0;
    for (std::size_t j = i - 1; j < a.weights.size(); ++j) d += a.weights[j] + b.weights[j];
    return d;
}

double QuadTree::tree_distance(const Vector& a, const Vector& b) const {
    return tree_distance(weighted_path(a), weighted_path(b));
}

}  // namespace emdlsh
