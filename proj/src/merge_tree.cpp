#include "hseg/merge_tree.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace hseg {

namespace {

using Pair = std::pair<uint32_t, uint32_t>;

inline Pair ordered(uint32_t a, uint32_t b) { return a < b ? Pair{a, b} : Pair{b, a}; }

void fill_depths(MergeTree& tree) {
    if (tree.root < 0)
        return;
    std::vector<int32_t> stack{tree.root};
    tree.nodes[tree.root].depth = 0;
    while (!stack.empty()) {
        const int32_t u = stack.back();
        stack.pop_back();
        const MergeTreeNode& n = tree.nodes[u];
        if (n.is_leaf())
            continue;
        tree.nodes[n.left].depth = n.depth + 1;
        tree.nodes[n.right].depth = n.depth + 1;
        stack.push_back(n.left);
        stack.push_back(n.right);
    }
}

// Paint one label per surviving subtree. `split` marks internal nodes whose
// children are shown separately; it must be closed upward, which the weight
// monotonicity of the tree guarantees for both cut flavors.
LabelMap apply_cut(const MergeTree& tree, const LabelMap& base, const std::vector<char>& split) {
    std::vector<uint32_t> segment_group(tree.leaf_count, 0);
    uint32_t groups = 0;
    std::vector<int32_t> stack{tree.root};
    while (!stack.empty()) {
        const int32_t u = stack.back();
        stack.pop_back();
        const MergeTreeNode& n = tree.nodes[u];
        if (!n.is_leaf() && split[u]) {
            stack.push_back(n.left);
            stack.push_back(n.right);
            continue;
        }
        // whole subtree is one displayed segment
        const uint32_t g = groups++;
        std::vector<int32_t> sub{u};
        while (!sub.empty()) {
            const int32_t v = sub.back();
            sub.pop_back();
            const MergeTreeNode& m = tree.nodes[v];
            if (m.is_leaf()) {
                segment_group[m.segment] = g;
            } else {
                sub.push_back(m.left);
                sub.push_back(m.right);
            }
        }
    }

    LabelMap out(base.width, base.height);
    std::vector<uint32_t> renumber(groups, UINT32_MAX);
    uint32_t next = 0;
    for (size_t i = 0; i < base.labels.size(); ++i) {
        const uint32_t g = segment_group[base.labels[i]];
        if (renumber[g] == UINT32_MAX)
            renumber[g] = next++;
        out.labels[i] = renumber[g];
    }
    return out;
}

} // namespace

MergeTree build_merge_tree(const RegionGraph& graph) {
    const uint32_t n = static_cast<uint32_t>(graph.segment_count());
    if (n == 0)
        throw std::invalid_argument("region graph has no segments");

    MergeTree tree;
    tree.leaf_count = n;
    tree.nodes.resize(n);
    for (uint32_t i = 0; i < n; ++i)
        tree.nodes[i].segment = static_cast<int32_t>(i);

    // Ascending confidence queue over live cluster pairs; cluster ids are
    // tree node ids.
    std::set<std::tuple<double, uint32_t, uint32_t>> queue;
    std::map<Pair, double> weight;
    std::map<uint32_t, std::set<uint32_t>> nbrs;
    for (const auto& [pair, b] : graph.boundaries) {
        queue.emplace(b.cnf, pair.first, pair.second);
        weight[pair] = b.cnf;
        nbrs[pair.first].insert(pair.second);
        nbrs[pair.second].insert(pair.first);
    }

    while (!queue.empty()) {
        const auto [w, i, j] = *queue.begin();
        queue.erase(queue.begin());
        weight.erase(ordered(i, j));
        nbrs[i].erase(j);
        nbrs[j].erase(i);

        const uint32_t p = static_cast<uint32_t>(tree.nodes.size());
        MergeTreeNode node;
        node.left = static_cast<int32_t>(i);
        node.right = static_cast<int32_t>(j);
        node.weight = w;
        tree.nodes.push_back(node);
        tree.nodes[i].parent = static_cast<int32_t>(p);
        tree.nodes[j].parent = static_cast<int32_t>(p);

        // Re-key boundaries of i and j to the new cluster; a pair hit from
        // both sides keeps the smaller confidence.
        for (uint32_t old : {i, j}) {
            auto on = nbrs.find(old);
            if (on == nbrs.end())
                continue;
            const std::set<uint32_t> moved = std::move(on->second);
            nbrs.erase(on);
            for (uint32_t other : moved) {
                const auto wit = weight.find(ordered(old, other));
                const double ow = wit->second;
                weight.erase(wit);
                queue.erase({ow, ordered(old, other).first, ordered(old, other).second});
                nbrs[other].erase(old);

                const Pair nk = ordered(p, other);
                const auto cur = weight.find(nk);
                if (cur == weight.end()) {
                    weight[nk] = ow;
                    queue.emplace(ow, nk.first, nk.second);
                    nbrs[other].insert(p);
                    nbrs[p].insert(other);
                } else if (ow < cur->second) {
                    queue.erase({cur->second, nk.first, nk.second});
                    cur->second = ow;
                    queue.emplace(ow, nk.first, nk.second);
                }
            }
        }
    }

    // Chain any disconnected components under synthetic nodes at weight 1.
    std::vector<uint32_t> roots;
    for (uint32_t i = 0; i < tree.nodes.size(); ++i)
        if (tree.nodes[i].parent < 0)
            roots.push_back(i);
    uint32_t acc = roots[0];
    for (size_t r = 1; r < roots.size(); ++r) {
        const uint32_t p = static_cast<uint32_t>(tree.nodes.size());
        MergeTreeNode node;
        node.left = static_cast<int32_t>(acc);
        node.right = static_cast<int32_t>(roots[r]);
        node.weight = 1.0;
        node.synthetic = true;
        tree.nodes.push_back(node);
        tree.nodes[acc].parent = static_cast<int32_t>(p);
        tree.nodes[roots[r]].parent = static_cast<int32_t>(p);
        acc = p;
    }
    tree.root = static_cast<int32_t>(acc);
    fill_depths(tree);
    return tree;
}

LabelMap cut_by_threshold(const MergeTree& tree, const LabelMap& base, double t_visual) {
    std::vector<char> split(tree.nodes.size(), 0);
    for (size_t i = 0; i < tree.nodes.size(); ++i)
        if (!tree.nodes[i].is_leaf() && tree.nodes[i].weight > t_visual)
            split[i] = 1;
    return apply_cut(tree, base, split);
}

LabelMap cut_by_count(const MergeTree& tree, const LabelMap& base, uint32_t n_visual) {
    if (n_visual < 1 || n_visual > tree.leaf_count)
        throw std::invalid_argument("segment count out of range");
    std::vector<uint32_t> internals;
    for (uint32_t i = tree.leaf_count; i < tree.nodes.size(); ++i)
        internals.push_back(i);
    // strongest first; ties prefer the shallower node, then the lower id
    std::sort(internals.begin(), internals.end(), [&](uint32_t a, uint32_t b) {
        const MergeTreeNode& na = tree.nodes[a];
        const MergeTreeNode& nb = tree.nodes[b];
        if (na.weight != nb.weight)
            return na.weight > nb.weight;
        if (na.depth != nb.depth)
            return na.depth < nb.depth;
        return a < b;
    });
    std::vector<char> split(tree.nodes.size(), 0);
    for (uint32_t r = 0; r + 1 < n_visual; ++r)
        split[internals[r]] = 1;
    return apply_cut(tree, base, split);
}

std::string merge_tree_to_json(const MergeTree& tree) {
    nlohmann::json doc;
    doc["leaf_count"] = tree.leaf_count;
    doc["root"] = tree.root;
    nlohmann::json nodes = nlohmann::json::array();
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const MergeTreeNode& n = tree.nodes[i];
        nlohmann::json j;
        j["id"] = i;
        if (n.is_leaf()) {
            j["segment"] = n.segment;
        } else {
            j["children"] = {n.left, n.right};
            j["weight"] = n.weight;
            j["synthetic"] = n.synthetic;
        }
        nodes.push_back(std::move(j));
    }
    doc["nodes"] = std::move(nodes);
    return doc.dump(2);
}

MergeTree merge_tree_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    MergeTree tree;
    tree.leaf_count = doc.at("leaf_count").get<uint32_t>();
    tree.root = doc.at("root").get<int32_t>();
    const auto& nodes = doc.at("nodes");
    tree.nodes.resize(nodes.size());
    for (const auto& j : nodes) {
        const size_t id = j.at("id").get<size_t>();
        if (id >= tree.nodes.size())
            throw std::invalid_argument("merge tree JSON: node id out of range");
        MergeTreeNode& n = tree.nodes[id];
        if (j.contains("segment")) {
            n.segment = j.at("segment").get<int32_t>();
        } else {
            const auto& c = j.at("children");
            n.left = c.at(0).get<int32_t>();
            n.right = c.at(1).get<int32_t>();
            n.weight = j.at("weight").get<double>();
            n.synthetic = j.value("synthetic", false);
            tree.nodes[n.left].parent = static_cast<int32_t>(id);
            tree.nodes[n.right].parent = static_cast<int32_t>(id);
        }
    }
    fill_depths(tree);
    return tree;
}

} // namespace hseg
