#pragma once

// Periodic higher spin vertex configurations: multiplicity functions on
// vertical and horizontal cylinder edges, the polynomials P_1, P_2 whose roots
// are the supported edge midpoints, the counting functions l_i and the square
// roots q_i = i^{l_i} |P_i|^{1/2}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sixv/lattice.hpp"
#include "sixv/scalar.hpp"

namespace sixv {

/// Lattice path on vertices: '1' steps right, '2' steps up.
struct VertexPath {
    VertexRef start;
    std::string steps;
    bool operator==(const VertexPath&) const = default;
};

class PathError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws PathError unless `p` has exactly m ones and n twos and nothing else.
inline void validate_path(const Lattice& lat, const VertexPath& p) {
    Int ones = 0, twos = 0;
    for (char c : p.steps) {
        if (c == '1') {
            ++ones;
        } else if (c == '2') {
            ++twos;
        } else {
            throw PathError(std::string("path step '") + c + "' is not 1 or 2");
        }
    }
    if (ones != lat.m() || twos != lat.n())
        throw PathError("path needs " + std::to_string(lat.m()) + " ones and " +
                        std::to_string(lat.n()) + " twos, got " + std::to_string(ones) +
                        " ones and " + std::to_string(twos) + " twos");
}

/// The edges traversed by one period of `p`, in order.
inline std::vector<EdgeRef> path_edges(const Lattice& lat, const VertexPath& p) {
    validate_path(lat, p);
    std::vector<EdgeRef> out;
    Int x = p.start.x, y = p.start.y;
    for (char c : p.steps) {
        if (c == '1') {
            out.push_back(EdgeRef::H(x + 1, y));
            ++x;
        } else {
            out.push_back(EdgeRef::V(x, y + 1));
            ++y;
        }
    }
    return out;
}

enum class MteMode { P, Q };

class Configuration {
public:
    explicit Configuration(Lattice lat) : lat_(lat) {}

    static Configuration from_paths(const Lattice& lat, const std::vector<VertexPath>& paths) {
        Configuration cfg(lat);
        for (const auto& p : paths)
            for (EdgeRef e : path_edges(lat, p)) cfg.add(e, 1);
        return cfg;
    }

    /// Direct entry; duplicates are summed. Conservation is not enforced here.
    static Configuration from_edges(const Lattice& lat,
                                    const std::vector<std::pair<EdgeRef, Int>>& entries) {
        Configuration cfg(lat);
        for (const auto& [e, k] : entries) {
            if (k <= 0)
                throw std::invalid_argument("edge multiplicity must be positive, got " +
                                            std::to_string(k));
            cfg.add(e, k);
        }
        return cfg;
    }

    const Lattice& lattice() const { return lat_; }
    bool empty() const { return vmult_.empty() && hmult_.empty(); }

    /// Multiplicities of orientation i (1 = vertical), keyed by doubled midpoint.
    const std::map<Int, Int>& multiplicities(int i) const { return i == 1 ? vmult_ : hmult_; }

    Int mult(EdgeRef e) const { return mult_at(index_of(e.orientation), lat_.edge_midpoint2(e)); }
    Int mult_at(int i, Int mid2) const {
        const auto& mp = multiplicities(i);
        auto it = mp.find(mid2);
        return it == mp.end() ? 0 : it->second;
    }

    /// Supported edges (canonical representatives) with multiplicities.
    std::vector<std::pair<EdgeRef, Int>> edges() const {
        std::vector<std::pair<EdgeRef, Int>> out;
        for (int i : {1, 2})
            for (const auto& [mid2, k] : multiplicities(i))
                out.emplace_back(lat_.edge_at_midpoint2(orientation_of(i), mid2), k);
        return out;
    }

    /// Vertices violating current conservation, ordered by doubled value.
    std::vector<VertexRef> check_conservation() const {
        std::vector<Int> candidates;
        for (const auto& [e, k] : edges()) {
            (void)k;
            VertexRef a, b;
            if (e.orientation == Orientation::Vertical) {
                a = {e.x, e.y - 1};
                b = {e.x, e.y};
            } else {
                a = {e.x - 1, e.y};
                b = {e.x, e.y};
            }
            candidates.push_back(lat_.vertex_value2(a));
            candidates.push_back(lat_.vertex_value2(b));
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        std::vector<VertexRef> bad;
        for (Int v2 : candidates) {
            VertexRef v = lat_.vertex_at_value2(v2);
            if (mult(v.up()) + mult(v.right()) != mult(v.down()) + mult(v.left()))
                bad.push_back(v);
        }
        return bad;
    }

    /// Doubled roots of P_i with multiplicity, ascending.
    std::vector<Int> p_roots(int i) const {
        std::vector<Int> out;
        for (const auto& [mid2, k] : multiplicities(i)) out.insert(out.end(), k, mid2);
        return out;
    }

    /// P_i(u2 / 2), exactly.
    Rational eval_p(int i, Int u2) const {
        Rational acc = 1;
        for (const auto& [mid2, k] : multiplicities(i)) {
            Rational f(u2 - mid2, 2);
            for (Int j = 0; j < k; ++j) acc *= f;
        }
        return acc;
    }
    Rational eval_p(EdgeRef e) const {
        return eval_p(index_of(e.orientation), lat_.edge_midpoint2(e));
    }

    /// l_i at doubled position u2: total multiplicity of orientation-i edges strictly above.
    Int l_at(int i, Int u2) const {
        const auto& mp = multiplicities(i);
        Int acc = 0;
        for (auto it = mp.upper_bound(u2); it != mp.end(); ++it) acc += it->second;
        return acc;
    }
    Int l_count(EdgeRef e) const { return l_at(index_of(e.orientation), lat_.edge_midpoint2(e)); }

    /// q_i at doubled position u2: i^{l_i} |P_i|^{1/2}.
    Radical q_at(int i, Int u2) const {
        Rational p = eval_p(i, u2);
        Radical r = Radical::sqrt_of(abs(p));
        if (r.is_zero()) return r;
        return Radical::make(0, l_at(i, u2), r.coeff(), r.radicand());
    }
    Radical q_value(EdgeRef e) const { return q_at(index_of(e.orientation), lat_.edge_midpoint2(e)); }

    struct NthRoot {
        Int phase;          // numerator of the phase exp(2 pi i * phase / (2N))
        Rational magnitude; // |P_i(e)|, of which the N-th root is taken
        Int degree;         // N
    };
    NthRoot nth_root_value(EdgeRef e, Int degree) const {
        if (degree < 1) throw std::invalid_argument("root degree must be positive");
        return {floor_mod(l_count(e), 2 * degree), abs(eval_p(e)), degree};
    }

    /// Doubled face weights adjacent to the support: [lo, hi], or nullopt if empty.
    std::optional<std::pair<Int, Int>> support_weight_range() const {
        if (empty()) return std::nullopt;
        Int lo = INT64_MAX, hi = INT64_MIN;
        for (int i : {1, 2}) {
            Int half = lat_.step_weight(i);
            for (const auto& [mid2, k] : multiplicities(i)) {
                (void)k;
                Int a = (mid2 - half) / 2;  // face on one side
                Int b = a + half;           // face on the other side
                lo = std::min({lo, a, b});
                hi = std::max({hi, a, b});
            }
        }
        return std::make_pair(lo, hi);
    }

    /// Vertices where the MTE fails, for P or for its square roots q. Checks
    /// every vertex within (m+n) lattice steps of the support.
    std::vector<VertexRef> check_mte(MteMode mode) const {
        std::vector<VertexRef> bad;
        auto range = support_weight_range();
        if (!range) return bad;
        Int reach = (lat_.m() + lat_.n()) * std::max(lat_.m(), lat_.n());
        const Int a = lat_.alpha(), b = lat_.beta();
        for (Int w = range->first - reach; w <= range->second + reach; ++w) {
            Int v2 = 2 * w + a + b;
            bool ok;
            if (mode == MteMode::P) {
                ok = eval_p(1, v2 + b) * eval_p(2, v2 + a) == eval_p(1, v2 - b) * eval_p(2, v2 - a);
            } else {
                ok = q_at(1, v2 - b) * q_at(2, v2 - a) == q_at(1, v2 + b) * q_at(2, v2 + a);
            }
            if (!ok) bad.push_back(lat_.vertex_at_value2(v2));
        }
        return bad;
    }

    bool operator==(const Configuration& o) const {
        return lat_ == o.lat_ && vmult_ == o.vmult_ && hmult_ == o.hmult_;
    }

private:
    void add(EdgeRef e, Int k) {
        auto& mp = e.orientation == Orientation::Vertical ? vmult_ : hmult_;
        mp[lat_.edge_midpoint2(e)] += k;
    }

    Lattice lat_;
    std::map<Int, Int> vmult_;
    std::map<Int, Int> hmult_;
};

/// n up-steps followed by m right-steps.
inline VertexPath max_area_path(const Lattice& lat, VertexRef start = {0, 0}) {
    return {start, std::string(static_cast<std::size_t>(lat.n()), '2') +
                       std::string(static_cast<std::size_t>(lat.m()), '1')};
}

/// Replaces the "21" at positions (pos, pos+1) with "12".
inline VertexPath corner_flip(VertexPath p, std::size_t pos) {
    if (pos + 1 >= p.steps.size() || p.steps[pos] != '2' || p.steps[pos + 1] != '1')
        throw std::invalid_argument("corner_flip: no \"21\" at position " + std::to_string(pos));
    std::swap(p.steps[pos], p.steps[pos + 1]);
    return p;
}

/// k paths with uniformly shuffled step words and starts in a small window.
inline std::vector<VertexPath> random_paths(const Lattice& lat, Int k, std::uint64_t seed) {
    if (k < 0) throw std::invalid_argument("path count must be nonnegative");
    std::mt19937_64 rng(seed);
    std::vector<VertexPath> paths;
    const Int span = lat.m() + lat.n();
    for (Int p = 0; p < k; ++p) {
        std::string steps = std::string(static_cast<std::size_t>(lat.m()), '1') +
                            std::string(static_cast<std::size_t>(lat.n()), '2');
        for (std::size_t i = steps.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(steps[i - 1], steps[j]);
        }
        Int x0 = static_cast<Int>(rng() % static_cast<std::uint64_t>(lat.m()));
        Int y0 = static_cast<Int>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
        paths.push_back({{x0, y0}, steps});
    }
    return paths;
}

inline Configuration random_config(const Lattice& lat, Int k, std::uint64_t seed) {
    return Configuration::from_paths(lat, random_paths(lat, k, seed));
}

}  // namespace sixv
