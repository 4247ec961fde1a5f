#pragma once

// Connected components of the cylinder minus the closed configuration, their
// internal edges and vertices, the sign overlay on internal edges and its
// two-colored decomposition.
//
// Faces are handled by weight throughout, since weight identifies a cylinder
// face uniquely.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sixv/configuration.hpp"
#include "sixv/lattice.hpp"

namespace sixv {

enum class Involution { Star, Dagger };

inline const char* to_string(Involution inv) { return inv == Involution::Star ? "star" : "dagger"; }

/// Which part of the cylinder a component occupies. Bottom and Top contain
/// every face below (resp. above) the core range; Whole is the complement of
/// the empty configuration.
enum class Region { Finite, Bottom, Top, Whole };

struct WeightWindow {
    Int lo = 0;
    Int hi = -1;
    bool contains(Int w) const { return lo <= w && w <= hi; }
};

class Component {
public:
    int id = 0;
    Region region = Region::Finite;
    bool contractible = false;
    /// Finite: every face weight. Infinite: the weights inside [core.lo, core.hi].
    std::vector<Int> weights;
    WeightWindow core;

    bool finite() const { return region == Region::Finite; }

    bool contains(Int w) const {
        switch (region) {
            case Region::Whole: return true;
            case Region::Bottom:
                if (w < core.lo) return true;
                break;
            case Region::Top:
                if (w > core.hi) return true;
                break;
            case Region::Finite: break;
        }
        return std::binary_search(weights.begin(), weights.end(), w);
    }

    /// Face weights of the component lying in the window, ascending.
    std::vector<Int> weights_in(WeightWindow win) const {
        std::vector<Int> out;
        for (Int w = win.lo; w <= win.hi; ++w)
            if (contains(w)) out.push_back(w);
        return out;
    }

    /// All faces; throws for infinite components.
    const std::vector<Int>& finite_weights() const {
        if (!finite())
            throw std::invalid_argument("component " + std::to_string(id) +
                                        " is infinite; a weight window is required");
        return weights;
    }

    std::vector<FaceRef> faces(const Lattice& lat) const {
        std::vector<FaceRef> out;
        for (Int w : finite_weights()) out.push_back(lat.face_at_weight(w));
        return out;
    }

    std::size_t size() const { return weights.size(); }
    Int min_weight() const { return weights.empty() ? 0 : weights.front(); }
};

inline const char* to_string(Region r) {
    switch (r) {
        case Region::Finite: return "finite";
        case Region::Bottom: return "bottom";
        case Region::Top: return "top";
        default: return "whole";
    }
}

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

/// Doubled midpoint of the edge crossed when stepping from face weight w by +alpha_i (dir=+1) or
/// -alpha_i (dir=-1).
inline Int crossed_mid2(const Lattice& lat, Int w, int i, int dir) {
    return 2 * w + dir * lat.step_weight(i);
}

/// True when the faces of `weights` connect to a period translate of themselves.
inline bool wraps(const Configuration& cfg, const std::vector<Int>& weights) {
    const Lattice& lat = cfg.lattice();
    std::map<Int, Int> offset;  // weight -> winding of the visited lift
    std::queue<std::pair<FaceRef, Int>> todo;
    FaceRef start = lat.face_at_weight(weights.front());
    offset[weights.front()] = 0;
    todo.push({start, weights.front()});
    auto member = [&](Int w) { return std::binary_search(weights.begin(), weights.end(), w); };
    while (!todo.empty()) {
        auto [f, w] = todo.front();
        todo.pop();
        const std::pair<FaceRef, EdgeRef> steps[4] = {
            {{f.x + 1, f.y}, EdgeRef::V(f.x, f.y)},
            {{f.x - 1, f.y}, EdgeRef::V(f.x - 1, f.y)},
            {{f.x, f.y + 1}, EdgeRef::H(f.x, f.y)},
            {{f.x, f.y - 1}, EdgeRef::H(f.x, f.y - 1)},
        };
        for (const auto& [g, e] : steps) {
            Int wg = lat.face_weight(g);
            if (!member(wg) || cfg.mult(e) != 0) continue;
            Int k = lat.canonicalize(g).second;
            auto it = offset.find(wg);
            if (it == offset.end()) {
                offset[wg] = k;
                todo.push({g, wg});
            } else if (it->second != k) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// Components sorted finite first (by minimal weight), then Bottom, then Top.
inline std::vector<Component> components(const Configuration& cfg) {
    auto bad = cfg.check_conservation();
    if (!bad.empty()) {
        std::ostringstream os;
        os << "configuration violates current conservation at " << bad.size() << " vertex(es), first "
           << bad.front();
        throw std::invalid_argument(os.str());
    }
    const Lattice& lat = cfg.lattice();
    auto range = cfg.support_weight_range();
    if (!range) {
        Component whole;
        whole.region = Region::Whole;
        whole.contractible = false;
        return {whole};
    }
    const Int lo = range->first, hi = range->second;
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    const std::size_t bottom = n, top = n + 1;
    detail::UnionFind uf(n + 2);
    auto node = [&](Int w) {
        if (w < lo) return bottom;
        if (w > hi) return top;
        return static_cast<std::size_t>(w - lo);
    };
    for (Int w = lo; w <= hi; ++w) {
        for (int i : {1, 2}) {
            for (int dir : {1, -1}) {
                if (cfg.mult_at(i, detail::crossed_mid2(lat, w, i, dir)) != 0) continue;
                uf.unite(node(w), node(w + dir * lat.step_weight(i)));
            }
        }
    }
    if (uf.find(bottom) == uf.find(top))
        throw std::logic_error("configuration does not separate the two ends of the cylinder");

    std::map<std::size_t, Component> by_root;
    for (std::size_t r : {bottom, top}) {
        Component c;
        c.region = r == bottom ? Region::Bottom : Region::Top;
        c.core = {lo, hi};
        by_root[uf.find(r)] = c;
    }
    for (Int w = lo; w <= hi; ++w) {
        std::size_t r = uf.find(node(w));
        auto& c = by_root[r];
        c.weights.push_back(w);
    }
    std::vector<Component> finite, infinite;
    for (auto& [r, c] : by_root) {
        if (c.region == Region::Finite) {
            c.contractible = !detail::wraps(cfg, c.weights);
            finite.push_back(std::move(c));
        } else {
            infinite.push_back(std::move(c));
        }
    }
    std::sort(finite.begin(), finite.end(),
              [](const Component& a, const Component& b) { return a.min_weight() < b.min_weight(); });
    std::sort(infinite.begin(), infinite.end(),
              [](const Component& a, const Component& b) { return a.region < b.region; });
    std::vector<Component> out = std::move(finite);
    for (auto& c : infinite) out.push_back(std::move(c));
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
    return out;
}

/// Internal edges are given by (orientation index, doubled midpoint); internal
/// vertices by doubled value.
struct InternalElements {
    std::vector<Int> vertical;
    std::vector<Int> horizontal;
    std::vector<Int> vertices;

    const std::vector<Int>& edges(int i) const { return i == 1 ? vertical : horizontal; }
};

/// Internal elements of the face set `weights` (sorted). Edges need both
/// neighbouring faces in the set and multiplicity 0; vertices need all four
/// surrounding faces in the set and no incident configuration edge.
inline InternalElements internal_elements(const Configuration& cfg, const std::vector<Int>& weights) {
    const Lattice& lat = cfg.lattice();
    const Int a = lat.alpha(), b = lat.beta();
    auto member = [&](Int w) { return std::binary_search(weights.begin(), weights.end(), w); };
    InternalElements out;
    for (Int w : weights) {
        if (member(w + a) && cfg.mult_at(1, 2 * w + a) == 0) out.vertical.push_back(2 * w + a);
        if (member(w + b) && cfg.mult_at(2, 2 * w + b) == 0) out.horizontal.push_back(2 * w + b);
        if (member(w + a) && member(w + b) && member(w + a + b) && cfg.mult_at(1, 2 * w + a) == 0 &&
            cfg.mult_at(2, 2 * w + b) == 0 && cfg.mult_at(1, 2 * (w + b) + a) == 0 &&
            cfg.mult_at(2, 2 * (w + a) + b) == 0)
            out.vertices.push_back(2 * w + a + b);
    }
    std::sort(out.vertical.begin(), out.vertical.end());
    std::sort(out.horizontal.begin(), out.horizontal.end());
    return out;
}

inline InternalElements internal_elements(const Configuration& cfg, const Component& comp) {
    return internal_elements(cfg, comp.finite_weights());
}

/// Edges of an internal vertex (doubled value v2) as (index, doubled midpoint):
/// up, right, down, left.
inline std::array<std::pair<int, Int>, 4> vertex_edges(const Lattice& lat, Int v2) {
    const Int a = lat.alpha(), b = lat.beta();
    return {{{1, v2 + b}, {2, v2 + a}, {1, v2 - b}, {2, v2 - a}}};
}

/// Signs on internal edges: -1 is a red (present) overlay edge, +1 transparent.
struct Overlay {
    Involution involution = Involution::Star;
    std::map<std::pair<int, Int>, int> signs;

    int sign(int i, Int mid2) const {
        auto it = signs.find({i, mid2});
        if (it == signs.end()) throw std::out_of_range("edge is not internal to the overlay");
        return it->second;
    }
    bool red(int i, Int mid2) const { return sign(i, mid2) < 0; }
    std::size_t red_count() const {
        return static_cast<std::size_t>(
            std::count_if(signs.begin(), signs.end(), [](const auto& kv) { return kv.second < 0; }));
    }
};

inline Overlay overlay(const Configuration& cfg, const InternalElements& internal,
                       Involution inv = Involution::Star) {
    Overlay ov;
    ov.involution = inv;
    for (int i : {1, 2}) {
        for (Int mid2 : internal.edges(i)) {
            int by_value = sgn(cfg.eval_p(i, mid2));
            int by_count = cfg.l_at(i, mid2) % 2 == 0 ? 1 : -1;
            if (by_value == 0 || by_value != by_count)
                throw std::logic_error("sign of P disagrees with the parity of l on an internal edge");
            ov.signs[{i, mid2}] = inv == Involution::Star ? by_value : -by_value;
        }
    }
    return ov;
}

inline Overlay overlay(const Configuration& cfg, const Component& comp,
                       Involution inv = Involution::Star) {
    return overlay(cfg, internal_elements(cfg, comp), inv);
}

/// Internal vertices with an odd number of red incident edges.
inline std::vector<Int> check_eight_vertex(const Configuration& cfg, const InternalElements& internal,
                                           const Overlay& ov) {
    std::vector<Int> bad;
    for (Int v2 : internal.vertices) {
        int red = 0;
        for (auto [i, mid2] : vertex_edges(cfg.lattice(), v2)) red += ov.red(i, mid2) ? 1 : 0;
        if (red % 2 != 0) bad.push_back(v2);
    }
    return bad;
}

struct Subcomponent {
    std::vector<Int> weights;
    int color = 1;
};

class ColoringError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Regions of the face set separated by red overlay edges, two-colored so that
/// faces across a red edge differ. The region holding the minimal weight is +1.
/// Ordered by minimal weight.
inline std::vector<Subcomponent> subcomponents(const Configuration& cfg,
                                               const std::vector<Int>& weights,
                                               const InternalElements& internal, const Overlay& ov) {
    const Lattice& lat = cfg.lattice();
    if (weights.empty()) return {};
    std::map<Int, std::size_t> index;
    for (std::size_t k = 0; k < weights.size(); ++k) index[weights[k]] = k;
    detail::UnionFind uf(weights.size());
    std::vector<std::pair<std::size_t, std::size_t>> red_pairs;
    for (int i : {1, 2}) {
        Int s = lat.step_weight(i);
        for (Int mid2 : internal.edges(i)) {
            Int w = (mid2 - s) / 2;
            std::size_t p = index.at(w), q = index.at(w + s);
            if (ov.red(i, mid2)) {
                red_pairs.emplace_back(p, q);
            } else {
                uf.unite(p, q);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (auto [p, q] : red_pairs) {
        std::size_t rp = uf.find(p), rq = uf.find(q);
        if (rp == rq) throw ColoringError("a red edge joins a subcomponent to itself");
        adj[rp].push_back(rq);
        adj[rq].push_back(rp);
    }
    std::map<std::size_t, int> color;
    std::size_t root0 = uf.find(0);
    color[root0] = 1;
    std::queue<std::size_t> todo;
    todo.push(root0);
    while (!todo.empty()) {
        std::size_t r = todo.front();
        todo.pop();
        for (std::size_t s : adj[r]) {
            auto it = color.find(s);
            if (it == color.end()) {
                color[s] = -color[r];
                todo.push(s);
            } else if (it->second == color[r]) {
                throw ColoringError("two-coloring of the overlay regions is inconsistent");
            }
        }
    }
    std::map<std::size_t, Subcomponent> groups;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        std::size_t r = uf.find(k);
        auto it = color.find(r);
        if (it == color.end())
            throw ColoringError("overlay regions are not connected through red edges");
        groups[r].weights.push_back(weights[k]);
        groups[r].color = it->second;
    }
    std::vector<Subcomponent> out;
    for (auto& [r, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end(), [](const Subcomponent& a, const Subcomponent& b) {
        return a.weights.front() < b.weights.front();
    });
    return out;
}

inline std::vector<Subcomponent> subcomponents(const Configuration& cfg, const Component& comp,
                                               const Overlay& ov) {
    const auto& ws = comp.finite_weights();
    return subcomponents(cfg, ws, internal_elements(cfg, ws), ov);
}

}  // namespace sixv
