#pragma once

// Coordinates on the discrete cylinder Z^2 / <(m,n)>.
//
// A face (x,y) is the unit square whose upper-right corner is the vertex
// W(x,y). Weights are integral: face (x,y) has weight x*alpha + y*beta with
// (alpha, beta) = (-n, m), so the weight map is a bijection from cylinder
// faces onto Z. Half-integral quantities (edge midpoints, vertex values) are
// stored doubled.

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace sixv {

using Int = std::int64_t;

/// Floor division for signed integers (C++ `/` truncates toward zero).
constexpr Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr Int floor_mod(Int a, Int b) { return a - b * floor_div(a, b); }

struct FaceRef {
    Int x = 0;
    Int y = 0;
    auto operator<=>(const FaceRef&) const = default;
};

enum class Orientation { Vertical, Horizontal };

/// Generator index i in {1,2}: 1 <-> vertical edges / alpha, 2 <-> horizontal / beta.
constexpr int index_of(Orientation o) { return o == Orientation::Vertical ? 1 : 2; }
constexpr Orientation orientation_of(int i) {
    return i == 1 ? Orientation::Vertical : Orientation::Horizontal;
}

/// V(x,y) is the segment from W(x,y-1) to W(x,y) and separates faces (x,y)
/// and (x+1,y). H(x,y) is the segment from W(x-1,y) to W(x,y) and separates
/// faces (x,y) and (x,y+1).
struct EdgeRef {
    Orientation orientation = Orientation::Vertical;
    Int x = 0;
    Int y = 0;
    auto operator<=>(const EdgeRef&) const = default;

    static constexpr EdgeRef V(Int x, Int y) { return {Orientation::Vertical, x, y}; }
    static constexpr EdgeRef H(Int x, Int y) { return {Orientation::Horizontal, x, y}; }

    /// The face (x,y): left of a V edge, below an H edge.
    constexpr FaceRef base_face() const { return {x, y}; }
    /// The other face separated by this edge: (x+1,y) for V, (x,y+1) for H.
    constexpr FaceRef step_face() const {
        return orientation == Orientation::Vertical ? FaceRef{x + 1, y} : FaceRef{x, y + 1};
    }
};

/// W(x,y): common corner of faces (x,y), (x+1,y), (x,y+1), (x+1,y+1).
struct VertexRef {
    Int x = 0;
    Int y = 0;
    auto operator<=>(const VertexRef&) const = default;

    constexpr EdgeRef up() const { return EdgeRef::V(x, y + 1); }
    constexpr EdgeRef right() const { return EdgeRef::H(x + 1, y); }
    constexpr EdgeRef down() const { return EdgeRef::V(x, y); }
    constexpr EdgeRef left() const { return EdgeRef::H(x, y); }
};

class Lattice {
public:
    Lattice(Int m, Int n) : m_(m), n_(n) {
        if (m < 1 || n < 1)
            throw std::invalid_argument("period (" + std::to_string(m) + "," + std::to_string(n) +
                                        ") must have m >= 1 and n >= 1");
        if (std::gcd(m, n) != 1)
            throw std::invalid_argument("period (" + std::to_string(m) + "," + std::to_string(n) +
                                        ") is not coprime");
        // Solve -n*x0 + m*y0 = 1 once; used to invert the weight map.
        auto [g, s, t] = ext_gcd(m, n);  // s*m + t*n = 1
        (void)g;
        unit_face_ = {-t, s};
    }

    Int m() const { return m_; }
    Int n() const { return n_; }
    Int alpha() const { return -n_; }
    Int beta() const { return m_; }
    /// alpha_i for i in {1,2}.
    Int step_weight(int i) const { return i == 1 ? alpha() : beta(); }
    Int period_norm() const { return m_ * m_ + n_ * n_; }

    Int face_weight(FaceRef f) const { return f.x * alpha() + f.y * beta(); }

    Int edge_midpoint2(EdgeRef e) const {
        Int w2 = 2 * face_weight(e.base_face());
        return e.orientation == Orientation::Vertical ? w2 + alpha() : w2 + beta();
    }

    Int vertex_value2(VertexRef v) const {
        return 2 * face_weight({v.x, v.y}) + alpha() + beta();
    }

    /// Representative with 0 <= m*x + n*y < m^2 + n^2 and the winding k with
    /// f = rep + k*(m,n).
    std::pair<FaceRef, Int> canonicalize(FaceRef f) const {
        Int k = floor_div(m_ * f.x + n_ * f.y, period_norm());
        return {{f.x - k * m_, f.y - k * n_}, k};
    }

    FaceRef canonical(FaceRef f) const { return canonicalize(f).first; }

    VertexRef canonical(VertexRef v) const {
        auto [r, k] = canonicalize(FaceRef{v.x, v.y});
        (void)k;
        return {r.x, r.y};
    }

    EdgeRef canonical(EdgeRef e) const {
        auto [r, k] = canonicalize(e.base_face());
        (void)k;
        return {e.orientation, r.x, r.y};
    }

    /// The canonical face of the given weight.
    FaceRef face_at_weight(Int w) const {
        return canonical(FaceRef{unit_face_.x * w, unit_face_.y * w});
    }

    /// Canonical edge of orientation o whose doubled midpoint is mid2.
    EdgeRef edge_at_midpoint2(Orientation o, Int mid2) const {
        Int shift = o == Orientation::Vertical ? alpha() : beta();
        if (floor_mod(mid2 - shift, 2) != 0)
            throw std::invalid_argument("doubled midpoint " + std::to_string(mid2) +
                                        " has wrong parity for this orientation");
        FaceRef f = face_at_weight((mid2 - shift) / 2);
        return {o, f.x, f.y};
    }

    VertexRef vertex_at_value2(Int v2) const {
        Int s = alpha() + beta();
        if (floor_mod(v2 - s, 2) != 0)
            throw std::invalid_argument("doubled vertex value " + std::to_string(v2) +
                                        " has wrong parity");
        FaceRef f = face_at_weight((v2 - s) / 2);
        return {f.x, f.y};
    }

    bool operator==(const Lattice& o) const { return m_ == o.m_ && n_ == o.n_; }

private:
    struct Egcd {
        Int g, s, t;
    };
    static Egcd ext_gcd(Int a, Int b) {
        Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (b != 0) {
            Int q = a / b;
            std::tie(a, b) = std::make_pair(b, a - q * b);
            std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
            std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
        }
        return {a, s0, t0};
    }

    Int m_;
    Int n_;
    FaceRef unit_face_;  // a face of weight 1
};

inline std::ostream& operator<<(std::ostream& os, FaceRef f) {
    return os << "(" << f.x << "," << f.y << ")";
}
inline std::ostream& operator<<(std::ostream& os, EdgeRef e) {
    return os << (e.orientation == Orientation::Vertical ? "V" : "H") << "(" << e.x << ","
              << e.y << ")";
}
inline std::ostream& operator<<(std::ostream& os, VertexRef v) {
    return os << "W(" << v.x << "," << v.y << ")";
}

}  // namespace sixv
