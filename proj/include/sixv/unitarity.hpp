#pragma once

// The sign function w, the invariant form it defines, adjoints, the two
// signature computations and the unitarizability criteria.

#include <complex>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sixv/representation.hpp"
#include "sixv/topology.hpp"

namespace sixv {

/// Unordered pair {plus, minus}; compared as an unordered pair.
struct Signature {
    std::size_t plus = 0;
    std::size_t minus = 0;

    std::size_t low() const { return std::min(plus, minus); }
    std::size_t high() const { return std::max(plus, minus); }
    std::size_t dim() const { return plus + minus; }
    bool definite() const { return low() == 0; }
    bool operator==(const Signature& o) const { return low() == o.low() && high() == o.high(); }
    std::string str() const { return "{" + std::to_string(low()) + "," + std::to_string(high()) + "}"; }
};

/// One step of a face path: from face f to f + dir * e_i.
struct Step {
    int i = 1;
    int dir = 1;
};
using FacePath = std::vector<Step>;

/// Horizontal steps first, then vertical, from (0,0) to `target`.
inline FacePath staircase(FaceRef target, FaceRef from = {0, 0}) {
    FacePath p;
    Int dx = target.x - from.x, dy = target.y - from.y;
    for (Int k = 0; k < std::abs(dx); ++k) p.push_back({1, dx > 0 ? 1 : -1});
    for (Int k = 0; k < std::abs(dy); ++k) p.push_back({2, dy > 0 ? 1 : -1});
    return p;
}

/// Sum of l_i over the edges crossed by `path` from `from`; 2*omega up to an even integer.
inline Int omega2_from(const Configuration& cfg, FaceRef from, const FacePath& path, FaceRef* end = nullptr) {
    const Lattice& lat = cfg.lattice();
    Int acc = 0;
    Int mu = lat.face_weight(from);
    FaceRef at = from;
    for (Step s : path) {
        Int shift = s.dir * lat.step_weight(s.i);
        acc += cfg.l_at(s.i, 2 * mu + shift);
        mu += shift;
        (s.i == 1 ? at.x : at.y) += s.dir;
    }
    if (end) *end = at;
    return acc;
}

inline Int omega2(const Configuration& cfg, FaceRef target, const FacePath& path) {
    FaceRef end;
    Int v = omega2_from(cfg, {0, 0}, path, &end);
    if (!(end == target)) throw std::invalid_argument("face path does not end at the target face");
    return v;
}

inline int w_sign(const Configuration& cfg, FaceRef f) {
    return omega2(cfg, f, staircase(f)) % 2 == 0 ? 1 : -1;
}

inline int w_sign_at_weight(const Configuration& cfg, Int w) {
    return w_sign(cfg, cfg.lattice().face_at_weight(w));
}

struct PathIndependenceReport {
    std::size_t vertices = 0;
    std::size_t vertex_failures = 0;
    std::size_t monotone_paths = 0;
    std::size_t monotone_failures = 0;
    std::size_t random_paths = 0;
    std::size_t random_failures = 0;
    bool ok() const { return vertex_failures == 0 && monotone_failures == 0 && random_failures == 0; }
};

/// (a) The l identity at every vertex whose lower-left face weight lies in
/// `vertex_window`. (b) omega2 parity over every monotone path from (0,0) to
/// each face of the box |x| <= bx, |y| <= by, and over `random_per_target`
/// random paths with backtracking, against the staircase value.
inline PathIndependenceReport check_w_path_independence(const Configuration& cfg, Int bx, Int by,
                                                        int random_per_target, std::uint64_t seed,
                                                        WeightWindow vertex_window) {
    const Lattice& lat = cfg.lattice();
    PathIndependenceReport rep;
    const Int a = lat.alpha(), b = lat.beta();
    for (Int w = vertex_window.lo; w <= vertex_window.hi; ++w) {
        Int v2 = 2 * w + a + b;
        ++rep.vertices;
        if (cfg.l_at(1, v2 - b) + cfg.l_at(2, v2 - a) != cfg.l_at(1, v2 + b) + cfg.l_at(2, v2 + a))
            ++rep.vertex_failures;
    }

    std::map<FaceRef, int> reference;
    for (Int x = -bx; x <= bx; ++x)
        for (Int y = -by; y <= by; ++y) reference[{x, y}] = static_cast<int>(omega2(cfg, {x, y}, staircase({x, y})) % 2);

    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            // Depth-first over monotone paths in one quadrant; every node is the end of one path.
            struct Node {
                FaceRef f;
                Int parity;
            };
            std::vector<Node> stack{{{0, 0}, 0}};
            while (!stack.empty()) {
                Node nd = stack.back();
                stack.pop_back();
                ++rep.monotone_paths;
                if (reference.at(nd.f) != nd.parity) ++rep.monotone_failures;
                Int mu = lat.face_weight(nd.f);
                if (std::abs(nd.f.x + sx) <= bx) {
                    Int l = cfg.l_at(1, 2 * mu + sx * a);
                    stack.push_back({{nd.f.x + sx, nd.f.y}, (nd.parity + l) % 2});
                }
                if (std::abs(nd.f.y + sy) <= by) {
                    Int l = cfg.l_at(2, 2 * mu + sy * b);
                    stack.push_back({{nd.f.x, nd.f.y + sy}, (nd.parity + l) % 2});
                }
            }
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dir4(0, 3);
    std::uniform_int_distribution<Int> len(0, 2 * (bx + by) + 4);
    for (const auto& [target, parity] : reference) {
        for (int s = 0; s < random_per_target; ++s) {
            FacePath path;
            FaceRef at{0, 0};
            for (Int k = len(rng); k > 0; --k) {
                int d = dir4(rng);
                Step st{d < 2 ? 1 : 2, d % 2 == 0 ? 1 : -1};
                path.push_back(st);
                (st.i == 1 ? at.x : at.y) += st.dir;
            }
            for (Step st : staircase(target, at)) path.push_back(st);
            ++rep.random_paths;
            if (omega2(cfg, target, path) % 2 != parity) ++rep.random_failures;
        }
    }
    return rep;
}

class FormError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Signs of the invariant form on the face set `weights` (sorted). Star uses
/// the global w; dagger propagates w(f + e) = -(-1)^l w(f) across internal
/// edges from the minimal face, and throws FormError if that is inconsistent.
inline std::vector<int> form_signs(const Configuration& cfg, const std::vector<Int>& weights,
                                   Involution inv) {
    std::vector<int> out(weights.size(), 0);
    if (inv == Involution::Star) {
        for (std::size_t k = 0; k < weights.size(); ++k) out[k] = w_sign_at_weight(cfg, weights[k]);
        return out;
    }
    const Lattice& lat = cfg.lattice();
    std::map<Int, std::size_t> index;
    for (std::size_t k = 0; k < weights.size(); ++k) index[weights[k]] = k;
    for (std::size_t start = 0; start < weights.size(); ++start) {
        if (out[start] != 0) continue;
        out[start] = 1;
        std::queue<std::size_t> todo;
        todo.push(start);
        while (!todo.empty()) {
            std::size_t k = todo.front();
            todo.pop();
            Int mu = weights[k];
            for (int i : {1, 2}) {
                for (int dir : {1, -1}) {
                    Int shift = dir * lat.step_weight(i);
                    auto it = index.find(mu + shift);
                    if (it == index.end() || cfg.mult_at(i, 2 * mu + shift) != 0) continue;
                    int want = cfg.l_at(i, 2 * mu + shift) % 2 == 0 ? -out[k] : out[k];
                    if (out[it->second] == 0) {
                        out[it->second] = want;
                        todo.push(it->second);
                    } else if (out[it->second] != want) {
                        throw FormError("no sign function solves the dagger invariance on this component");
                    }
                }
            }
        }
    }
    return out;
}

inline int involution_sign(Involution inv) { return inv == Involution::Star ? 1 : -1; }

/// diag(w) over the basis.
inline Matrix gram(const ModuleRep& rep, Involution inv = Involution::Star) {
    std::vector<Radical> d;
    for (int s : form_signs(rep.configuration(), rep.basis(), inv)) d.push_back(Radical::from_rational(s));
    return Matrix::diagonal(d);
}

/// G^{-1} M^* G.
inline Matrix adjoint(const Matrix& g, const Matrix& m) { return g * m.conj_transpose() * g; }

struct InvarianceReport {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// (X_i^{+-})^* G = s G X_i^{-+} with s = +1 for star and -1 for dagger, G H
/// self-adjoint, and the adjoint identities G^{-1} X^* G = s X^{-+}, G^{-1} H^* G = H.
inline InvarianceReport verify_invariance(const ModuleRep& rep, const Matrix& g,
                                          Involution inv = Involution::Star) {
    InvarianceReport report;
    const int s = involution_sign(inv);
    auto compare = [&](const std::string& name, const Matrix& lhs, const Matrix& rhs, Gen probe) {
        for (std::size_t j = 0; j < rep.dim(); ++j) {
            if (!rep.path_inside(j, {probe})) {
                ++report.skipped;
                continue;
            }
            ++report.checked;
            if (lhs.column(j) != rhs.column(j))
                report.failures.push_back(name + " fails at weight " + std::to_string(rep.basis()[j]));
        }
    };
    for (int i : {1, 2}) {
        for (int dir : {1, -1}) {
            Gen x = dir > 0 ? raising(i) : lowering(i);
            Gen y = dir > 0 ? lowering(i) : raising(i);
            const Matrix& mx = rep.matrix(x);
            const Matrix& my = rep.matrix(y);
            compare(std::string(to_string(x)) + "^* G = G " + to_string(y), mx.conj_transpose() * g,
                    s * (g * my), y);
            compare(std::string("adjoint(") + to_string(x) + ")", adjoint(g, mx), s * my, y);
        }
    }
    Matrix gh = g * rep.matrix(Gen::H);
    compare("G H self-adjoint", gh.conj_transpose(), gh, Gen::H);
    compare("adjoint(H)", adjoint(g, rep.matrix(Gen::H)), rep.matrix(Gen::H), Gen::H);
    return report;
}

inline Signature count_signs(const std::vector<int>& signs) {
    Signature sig;
    for (int s : signs) (s > 0 ? sig.plus : sig.minus) += 1;
    return sig;
}

/// Face counts by the sign of the form. Finite components only.
inline Signature signature_direct(const Configuration& cfg, const Component& comp,
                                  Involution inv = Involution::Star) {
    return count_signs(form_signs(cfg, comp.finite_weights(), inv));
}

/// Window counts for an infinite component; these are partial by nature.
inline Signature signature_direct_window(const Configuration& cfg, const Component& comp,
                                         WeightWindow window, Involution inv = Involution::Star) {
    return count_signs(form_signs(cfg, comp.weights_in(window), inv));
}

/// Face counts per color of the overlay decomposition.
inline Signature signature_coloring(const Configuration& cfg, const Component& comp,
                                    Involution inv = Involution::Star) {
    const auto& ws = comp.finite_weights();
    auto inner = internal_elements(cfg, ws);
    auto ov = overlay(cfg, inner, inv);
    auto bad = check_eight_vertex(cfg, inner, ov);
    if (!bad.empty())
        throw std::logic_error("overlay violates the eight-vertex rule at " + std::to_string(bad.size()) +
                               " internal vertex(es)");
    Signature sig;
    for (const auto& sub : subcomponents(cfg, ws, inner, ov))
        (sub.color > 0 ? sig.plus : sig.minus) += sub.weights.size();
    return sig;
}

namespace detail {

/// Midpoint of a canonical edge in doubled plane coordinates.
inline std::pair<Int, Int> midpoint2(EdgeRef e) {
    return e.orientation == Orientation::Vertical ? std::pair<Int, Int>{2 * e.x, 2 * e.y - 1}
                                                  : std::pair<Int, Int>{2 * e.x - 1, 2 * e.y};
}

/// Configuration edges of the same orientation strictly above the slope n/m
/// line through the midpoint of e, counted with multiplicity.
inline Int edges_above_line(const Configuration& cfg, EdgeRef e) {
    const Lattice& lat = cfg.lattice();
    auto [ex, ey] = midpoint2(e);
    Int count = 0;
    for (const auto& [f, k] : cfg.edges()) {
        if (f.orientation != e.orientation) continue;
        auto [fx, fy] = midpoint2(f);
        if (lat.m() * (fy - ey) - lat.n() * (fx - ex) > 0) count += k;
    }
    return count;
}

}  // namespace detail

struct UnitarizabilityReport {
    bool signature_definite = false;  // (i)
    bool w_constant = false;          // (ii)
    bool p_positive = false;          // (iii)
    bool l_even = false;              // (iv)
    bool lines_even = false;          // (v)
    Signature signature;
    bool agree() const {
        return signature_definite == w_constant && w_constant == p_positive && p_positive == l_even &&
               l_even == lines_even;
    }
    bool verdict() const { return agree() && signature_definite; }
};

/// The five equivalent unitarizability conditions, each evaluated on its own.
/// Under dagger the signs of P are flipped, so "positive" and "even" become
/// "negative" and "odd".
inline UnitarizabilityReport unitarizability_report(const Configuration& cfg, const Component& comp,
                                                    Involution inv = Involution::Star) {
    const Lattice& lat = cfg.lattice();
    const auto& ws = comp.finite_weights();
    const int s = involution_sign(inv);
    UnitarizabilityReport r;
    auto signs = form_signs(cfg, ws, inv);
    r.signature = count_signs(signs);
    r.signature_definite = r.signature.definite();
    r.w_constant = std::all_of(signs.begin(), signs.end(), [&](int x) { return x == signs.front(); });
    auto inner = internal_elements(cfg, ws);
    r.p_positive = r.l_even = r.lines_even = true;
    for (int i : {1, 2}) {
        for (Int mid2 : inner.edges(i)) {
            if (s * sgn(cfg.eval_p(i, mid2)) <= 0) r.p_positive = false;
            if ((cfg.l_at(i, mid2) % 2 == 0) != (s > 0)) r.l_even = false;
            EdgeRef e = lat.edge_at_midpoint2(orientation_of(i), mid2);
            if ((detail::edges_above_line(cfg, e) % 2 == 0) != (s > 0)) r.lines_even = false;
        }
    }
    return r;
}

struct DualInvariants {
    std::vector<Int> support;          // finite components: all weights; otherwise the core weights
    bool contractible = false;
    bool pseudo_unitarizable = false;
    Radical formal_dual;               // xi^# for formal unit-modulus xi (0 when contractible)
    std::optional<std::complex<double>> concrete_dual;
};

/// Support and dual parameter of the finitistic dual, with the
/// pseudo-unitarizability verdict. `xi` is a concrete value, or nullopt for
/// the formal unit-modulus parameter.
inline DualInvariants dual_invariants(const Component& comp, std::optional<std::complex<double>> xi) {
    DualInvariants d;
    d.support = comp.weights;
    d.contractible = comp.finite() && comp.contractible;
    if (d.contractible) {
        d.pseudo_unitarizable = true;
        d.formal_dual = Radical::zero();
        if (xi) d.concrete_dual = std::complex<double>(0.0, 0.0);
        return d;
    }
    // conj(xi) = xi^{-1} for formal xi, so xi^# = conj(xi)^{-1} = xi.
    d.formal_dual = Radical::xi_power(1).conjugate().inverse();
    if (!xi) {
        d.pseudo_unitarizable = true;
    } else {
        if (*xi == std::complex<double>(0.0, 0.0))
            throw std::invalid_argument("xi must be nonzero on an incontractible component");
        d.concrete_dual = 1.0 / std::conj(*xi);
        d.pseudo_unitarizable = std::abs(std::abs(*xi) - 1.0) <= 1e-12;
    }
    return d;
}

}  // namespace sixv
