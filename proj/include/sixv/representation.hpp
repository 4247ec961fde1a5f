#pragma once

// The difference-operator representation restricted to one component: a
// basis vector per face, monomial matrices for X_1^{+-}, X_2^{+-} and the
// diagonal H. The formal parameter xi enters only through integer powers on
// steps that change the chosen lift of a face by a period.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sixv/configuration.hpp"
#include "sixv/matrix.hpp"
#include "sixv/topology.hpp"

namespace sixv {

enum class Gen { X1p, X1m, X2p, X2m, H };

inline const char* to_string(Gen g) {
    switch (g) {
        case Gen::X1p: return "X1+";
        case Gen::X1m: return "X1-";
        case Gen::X2p: return "X2+";
        case Gen::X2m: return "X2-";
        default: return "H";
    }
}

inline int gen_index(Gen g) { return g == Gen::X1p || g == Gen::X1m ? 1 : 2; }
inline int gen_dir(Gen g) { return g == Gen::X1p || g == Gen::X2p ? 1 : -1; }
inline Gen raising(int i) { return i == 1 ? Gen::X1p : Gen::X2p; }
inline Gen lowering(int i) { return i == 1 ? Gen::X1m : Gen::X2m; }

/// A word over {1,2}; balanced words have m ones and n twos.
using SeqWord = std::string;

inline void validate_word(const SeqWord& w) {
    for (char c : w)
        if (c != '1' && c != '2') throw std::invalid_argument("word letter '" + std::string(1, c) + "' is not 1 or 2");
}

inline bool balanced(const Lattice& lat, const SeqWord& w) {
    validate_word(w);
    auto ones = std::count(w.begin(), w.end(), '1');
    return ones == lat.m() && static_cast<Int>(w.size()) - ones == lat.n();
}

/// All words with m ones and n twos, lexicographic.
inline std::vector<SeqWord> enumerate_seq(Int m, Int n) {
    if (m < 0 || n < 0 || m + n > 20)
        throw std::invalid_argument("enumerate_seq: need 0 <= m, n and m + n <= 20");
    SeqWord w = std::string(static_cast<std::size_t>(m), '1') + std::string(static_cast<std::size_t>(n), '2');
    std::vector<SeqWord> out;
    do {
        out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

class ModuleRep {
public:
    ModuleRep(const Configuration& cfg, const Component& comp, std::optional<WeightWindow> window)
        : cfg_(cfg), comp_(comp) {
        if (!comp.finite() && !window)
            throw std::invalid_argument("component " + std::to_string(comp.id) +
                                        " is infinite; a weight window is required");
        const Lattice& lat = cfg.lattice();
        windowed_ = !comp.finite();
        if (windowed_) {
            window_ = *window;
            basis_ = comp.weights_in(*window);
        } else {
            basis_ = comp.weights;
            window_ = {basis_.front(), basis_.back()};
        }
        for (std::size_t j = 0; j < basis_.size(); ++j) index_[basis_[j]] = j;
        faces_.reserve(basis_.size());
        for (Int w : basis_) faces_.push_back(lat.face_at_weight(w));
        offsets_.assign(basis_.size(), 0);
        if (comp.finite() && comp.contractible) choose_connected_lift();
        build();
    }

    const Configuration& configuration() const { return cfg_; }
    const Lattice& lattice() const { return cfg_.lattice(); }
    const Component& component() const { return comp_; }
    bool windowed() const { return windowed_; }
    WeightWindow window() const { return window_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Int>& basis() const { return basis_; }
    const std::vector<FaceRef>& faces() const { return faces_; }

    std::optional<std::size_t> index_of(Int w) const {
        auto it = index_.find(w);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// The plane lift chosen for basis face j.
    FaceRef lift(std::size_t j) const {
        const Lattice& lat = lattice();
        return {faces_[j].x + offsets_[j] * lat.m(), faces_[j].y + offsets_[j] * lat.n()};
    }

    const Matrix& matrix(Gen g) const { return g == Gen::H ? h_ : x_[static_cast<int>(g)]; }

    /// Product of generator matrices, written left to right as an operator product.
    Matrix word_matrix(const std::vector<Gen>& word) const {
        Matrix acc = Matrix::identity(dim());
        for (Gen g : word) acc = acc * matrix(g);
        return acc;
    }

    /// X(w) = X^+_{w_k} ... X^+_{w_1}; the first letter acts first.
    Matrix raising_word_matrix(const SeqWord& w) const {
        std::vector<Gen> word;
        for (auto it = w.rbegin(); it != w.rend(); ++it) word.push_back(raising(*it - '0'));
        return word_matrix(word);
    }

    /// The reversed lowering word X^-_{w_1} ... X^-_{w_k}, formally adjoint to X(w).
    Matrix lowering_word_matrix(const SeqWord& w) const {
        std::vector<Gen> word;
        for (char c : w) word.push_back(lowering(c - '0'));
        return word_matrix(word);
    }

    /// True when applying the steps (acting in order) to basis face j never
    /// reaches a face of the component that the window cut off. Always true
    /// for finite components.
    bool path_inside(std::size_t j, const std::vector<Gen>& acting_in_order) const {
        if (!windowed_) return true;
        Int w = basis_[j];
        for (Gen g : acting_in_order) {
            if (g == Gen::H) continue;
            w += gen_dir(g) * lattice().step_weight(gen_index(g));
            if (comp_.contains(w) && !index_.count(w)) return false;
        }
        return true;
    }

    bool word_inside(std::size_t j, const SeqWord& w) const {
        std::vector<Gen> steps;
        for (char c : w) steps.push_back(raising(c - '0'));
        return path_inside(j, steps);
    }

    /// Total xi exponent collected by the lifts along the raising path of w from face j,
    /// whether or not the path stays in the component.
    Int path_xi_exponent(std::size_t j, const SeqWord& w) const {
        FaceRef at = lift(j);
        Int total = 0;
        for (char c : w) {
            FaceRef t = c == '1' ? FaceRef{at.x + 1, at.y} : FaceRef{at.x, at.y + 1};
            auto [k, next] = relift(t);
            total += k;
            at = next;
        }
        return total;
    }

private:
    // For a plane face t, the winding k with t = (chosen lift of its face) + k*(m,n).
    std::pair<Int, FaceRef> relift(FaceRef t) const {
        const Lattice& lat = lattice();
        auto [rep, kt] = lat.canonicalize(t);
        Int off = 0;
        if (auto idx = index_of(lat.face_weight(t))) off = offsets_[*idx];
        return {kt - off, {rep.x + off * lat.m(), rep.y + off * lat.n()}};
    }

    // Contractible components get lifts forming one connected plane piece,
    // so no step inside them picks up a power of xi.
    void choose_connected_lift() {
        const Lattice& lat = lattice();
        std::vector<bool> seen(dim(), false);
        std::vector<std::size_t> todo{0};
        seen[0] = true;
        while (!todo.empty()) {
            std::size_t j = todo.back();
            todo.pop_back();
            FaceRef f = lift(j);
            const std::pair<FaceRef, EdgeRef> steps[4] = {
                {{f.x + 1, f.y}, EdgeRef::V(f.x, f.y)},
                {{f.x - 1, f.y}, EdgeRef::V(f.x - 1, f.y)},
                {{f.x, f.y + 1}, EdgeRef::H(f.x, f.y)},
                {{f.x, f.y - 1}, EdgeRef::H(f.x, f.y - 1)},
            };
            for (const auto& [g, e] : steps) {
                auto idx = index_of(lat.face_weight(g));
                if (!idx || seen[*idx] || cfg_.mult(e) != 0) continue;
                seen[*idx] = true;
                offsets_[*idx] = lat.canonicalize(g).second;
                todo.push_back(*idx);
            }
        }
    }

    void build() {
        const Lattice& lat = lattice();
        const std::size_t n = dim();
        for (auto& x : x_) x = Matrix(n);
        h_ = Matrix(n);
        for (std::size_t j = 0; j < n; ++j) {
            h_.set(j, j, Radical::from_rational(basis_[j]));
            FaceRef f = lift(j);
            for (Gen g : {Gen::X1p, Gen::X1m, Gen::X2p, Gen::X2m}) {
                const int i = gen_index(g), dir = gen_dir(g);
                FaceRef t = i == 1 ? FaceRef{f.x + dir, f.y} : FaceRef{f.x, f.y + dir};
                Int target = basis_[j] + dir * lat.step_weight(i);
                Radical q = cfg_.q_at(i, 2 * basis_[j] + dir * lat.step_weight(i));
                if (q.is_zero()) continue;
                auto row = index_of(target);
                if (!row) {
                    if (!windowed_)
                        throw std::logic_error("nonzero step leaves a finite component");
                    continue;
                }
                Int k = relift(t).first;
                x_[static_cast<int>(g)].set(*row, j, q * Radical::xi_power(k));
            }
        }
    }

    Configuration cfg_;
    Component comp_;
    bool windowed_ = false;
    WeightWindow window_;
    std::vector<Int> basis_;
    std::map<Int, std::size_t> index_;
    std::vector<FaceRef> faces_;
    std::vector<Int> offsets_;
    std::array<Matrix, 4> x_;
    Matrix h_;
};

inline ModuleRep build_module(const Configuration& cfg, const Component& comp,
                              std::optional<WeightWindow> window = std::nullopt) {
    return ModuleRep(cfg, comp, window);
}

struct RelationReport {
    std::size_t checked = 0;  // (identity, column) pairs asserted
    std::size_t skipped = 0;  // boundary columns of windowed modules
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline void compare_columns(const ModuleRep& rep, const std::string& name, const Matrix& lhs,
                            const Matrix& rhs, const std::vector<std::vector<Gen>>& paths,
                            RelationReport& report) {
    for (std::size_t j = 0; j < rep.dim(); ++j) {
        bool inside = true;
        for (const auto& p : paths) inside = inside && rep.path_inside(j, p);
        if (!inside) {
            ++report.skipped;
            continue;
        }
        ++report.checked;
        if (lhs.column(j) != rhs.column(j))
            report.failures.push_back(name + " fails at weight " + std::to_string(rep.basis()[j]));
    }
}

}  // namespace detail

/// [H, X_i^{+-}] = +-alpha_i X_i^{+-},  X_i^{+-} X_i^{-+} = P_i(H -+ alpha_i/2),
/// [X_1^{+-}, X_2^{-+}] = 0, each as exact matrix identities column by column.
inline RelationReport verify_relations(const ModuleRep& rep) {
    RelationReport report;
    const Lattice& lat = rep.lattice();
    const Matrix& h = rep.matrix(Gen::H);
    for (Gen g : {Gen::X1p, Gen::X1m, Gen::X2p, Gen::X2m}) {
        const Matrix& x = rep.matrix(g);
        Int shift = gen_dir(g) * lat.step_weight(gen_index(g));
        detail::compare_columns(rep, std::string("[H,") + to_string(g) + "]", h * x - x * h, shift * x,
                                {{g}}, report);
    }
    for (int i : {1, 2}) {
        for (int dir : {1, -1}) {
            Gen outer = dir > 0 ? raising(i) : lowering(i);
            Gen inner = dir > 0 ? lowering(i) : raising(i);
            std::vector<Radical> diag;
            for (Int w : rep.basis())
                diag.push_back(Radical::from_rational(
                    rep.configuration().eval_p(i, 2 * w - dir * lat.step_weight(i))));
            detail::compare_columns(rep, std::string(to_string(outer)) + to_string(inner),
                                    rep.matrix(outer) * rep.matrix(inner), Matrix::diagonal(diag),
                                    {{inner, outer}}, report);
        }
    }
    for (auto [a, b] : {std::pair{Gen::X1p, Gen::X2m}, std::pair{Gen::X1m, Gen::X2p}}) {
        const Matrix& ma = rep.matrix(a);
        const Matrix& mb = rep.matrix(b);
        detail::compare_columns(rep, std::string("[") + to_string(a) + "," + to_string(b) + "]",
                                ma * mb, mb * ma, {{b, a}, {a, b}}, report);
    }
    return report;
}

struct Crossings {
    Int vertical = 0;
    Int horizontal = 0;
    Int total() const { return vertical + horizontal; }
};

/// Configuration multiplicity crossed by the face path from weight mu along w.
inline Crossings crossings(const Configuration& cfg, const SeqWord& w, Int mu) {
    validate_word(w);
    const Lattice& lat = cfg.lattice();
    Crossings c;
    for (char ch : w) {
        int i = ch - '0';
        Int s = lat.step_weight(i);
        Int k = cfg.mult_at(i, 2 * mu + s);
        (i == 1 ? c.vertical : c.horizontal) += k;
        mu += s;
    }
    return c;
}

/// Vertical edges crossed by the face path; for balanced words this equals the
/// horizontal count, which is asserted.
inline Int ord(const Configuration& cfg, const SeqWord& w, Int mu) {
    Crossings c = crossings(cfg, w, mu);
    if (balanced(cfg.lattice(), w) && c.vertical != c.horizontal)
        throw std::logic_error("vertical and horizontal crossings differ on a closed face path");
    return c.vertical;
}
inline Int ord(const Configuration& cfg, const SeqWord& w, FaceRef f) {
    return ord(cfg, w, cfg.lattice().face_weight(f));
}

/// Ordered product of q over the edges crossed by the face path (no xi).
inline Radical q_word(const Configuration& cfg, const SeqWord& w, Int mu) {
    validate_word(w);
    const Lattice& lat = cfg.lattice();
    Radical acc = Radical::one();
    for (char ch : w) {
        int i = ch - '0';
        acc *= cfg.q_at(i, 2 * mu + lat.step_weight(i));
        mu += lat.step_weight(i);
    }
    return acc;
}

inline Rational p_word(const Configuration& cfg, const SeqWord& w, Int mu) {
    validate_word(w);
    const Lattice& lat = cfg.lattice();
    Rational acc = 1;
    for (char ch : w) {
        int i = ch - '0';
        acc *= cfg.eval_p(i, 2 * mu + lat.step_weight(i));
        mu += lat.step_weight(i);
    }
    return acc;
}

/// Nonzero values of ord(w, lambda), by lambda. Face paths have length m+n,
/// so only weights within (m+n)max(m,n) of the support can cross anything.
inline std::map<Int, Int> ord_support(const Configuration& cfg, const SeqWord& w) {
    std::map<Int, Int> out;
    auto range = cfg.support_weight_range();
    if (!range) return out;
    const Lattice& lat = cfg.lattice();
    Int reach = static_cast<Int>(w.size()) * std::max(lat.m(), lat.n());
    for (Int lambda = range->first - reach; lambda <= range->second + reach; ++lambda) {
        Int o = crossings(cfg, w, lambda).vertical;
        if (o != 0) out[lambda] = o;
    }
    return out;
}

/// prod over lambda of (mu - lambda)^ord(lambda), optionally skipping lambda = mu.
inline Rational ord_product(const std::map<Int, Int>& ords, Int mu, bool skip_mu = false) {
    Rational acc = 1;
    for (auto [lambda, o] : ords) {
        if (skip_mu && lambda == mu) continue;
        for (Int k = 0; k < o; ++k) acc *= Rational(mu - lambda);
    }
    return acc;
}

/// q_word with the vanishing factors removed: every crossed edge whose
/// midpoint is a root of its own P_i contributes that root with exponent 0.
inline Radical reduced_q_word(const Configuration& cfg, const SeqWord& w, Int mu) {
    const Lattice& lat = cfg.lattice();
    Radical acc = Radical::one();
    for (char ch : w) {
        int i = ch - '0';
        Int u2 = 2 * mu + lat.step_weight(i);
        Rational p = 1;
        for (const auto& [root2, k] : cfg.multiplicities(i)) {
            if (root2 == u2) continue;
            Rational f(u2 - root2, 2);
            for (Int r = 0; r < k; ++r) p *= f;
        }
        Radical s = Radical::sqrt_of(abs(p));
        acc *= Radical::make(0, cfg.l_at(i, u2), s.coeff(), s.radicand());
        mu += lat.step_weight(i);
    }
    return acc;
}

struct QOrdReport {
    std::size_t checked = 0;
    std::size_t identity_failures = 0;  // q_word != ord product
    std::size_t phase_failures = 0;     // q_word not a nonnegative rational
    std::size_t crossing_failures = 0;  // total crossing != 2 ord
    std::vector<std::string> details;   // first few failures, all kinds
    bool identity_ok() const { return identity_failures == 0; }
    bool crossing_ok() const { return crossing_failures == 0; }
    bool phase_ok() const { return phase_failures == 0; }
};

inline QOrdReport check_q_ord(const Configuration& cfg, const SeqWord& w, WeightWindow window) {
    if (!balanced(cfg.lattice(), w)) throw std::invalid_argument("check_q_ord needs a balanced word");
    QOrdReport rep;
    auto ords = ord_support(cfg, w);
    auto note = [&](const std::string& s) {
        if (rep.details.size() < 8) rep.details.push_back(s);
    };
    for (Int mu = window.lo; mu <= window.hi; ++mu) {
        ++rep.checked;
        Radical q = q_word(cfg, w, mu);
        Rational rhs = ord_product(ords, mu);
        if (!(q == Radical::from_rational(rhs))) {
            ++rep.identity_failures;
            note("word " + w + " weight " + std::to_string(mu) + ": q = " + q.str() +
                 ", ord product = " + rhs.get_str());
        }
        if (!q.is_zero() && q.phase() != 0) {
            ++rep.phase_failures;
            note("word " + w + " weight " + std::to_string(mu) + ": q = " + q.str() + " has phase " +
                 std::to_string(q.phase()));
        }
        Crossings c = crossings(cfg, w, mu);
        auto it = ords.find(mu);
        Int o = it == ords.end() ? 0 : it->second;
        if (c.total() != 2 * o || c.vertical != c.horizontal) {
            ++rep.crossing_failures;
            note("word " + w + " weight " + std::to_string(mu) + ": crossings " +
                 std::to_string(c.vertical) + "+" + std::to_string(c.horizontal) + " vs ord " +
                 std::to_string(o));
        }
    }
    return rep;
}

struct CasimirResult {
    SeqWord word;
    bool contractible = false;
    Radical scalar;                 // common value on the checked faces
    bool consistent = true;         // every checked face gives `scalar`
    bool diagonal = true;           // X(w) maps each face to itself
    std::size_t checked = 0;
    std::size_t skipped = 0;        // windowed boundary faces
    std::size_t singular = 0;       // faces where ord(w, mu) > 0
    std::vector<Radical> values;    // per basis face; zero where skipped
    std::vector<bool> checked_face;
    std::vector<std::string> failures;

    bool is_xi() const { return consistent && diagonal && scalar == Radical::xi_power(1); }
    bool ok() const { return failures.empty(); }
};

/// The Casimir X(w) prod (H - lambda)^{-ord(w, lambda)} on the module. Where
/// ord(w, mu) > 0 both factors vanish at mu; the value there is the limit
/// obtained by cancelling the common factor (H - mu)^{ord(w, mu)}.
inline CasimirResult casimir(const ModuleRep& rep, const SeqWord& w) {
    if (!balanced(rep.lattice(), w)) throw std::invalid_argument("casimir needs a balanced word");
    CasimirResult res;
    res.word = w;
    res.contractible = rep.component().finite() && rep.component().contractible;
    const Configuration& cfg = rep.configuration();
    Matrix xw = rep.raising_word_matrix(w);
    res.values.assign(rep.dim(), Radical::zero());
    res.checked_face.assign(rep.dim(), false);
    if (res.contractible) {
        res.checked = rep.dim();
        std::fill(res.checked_face.begin(), res.checked_face.end(), true);
        res.scalar = Radical::zero();
        if (!xw.is_zero()) {
            res.consistent = false;
            res.failures.push_back("X(" + w + ") does not vanish on a contractible component");
        }
        return res;
    }
    auto ords = ord_support(cfg, w);
    bool first = true;
    for (std::size_t j = 0; j < rep.dim(); ++j) {
        if (!rep.word_inside(j, w)) {
            ++res.skipped;
            continue;
        }
        ++res.checked;
        res.checked_face[j] = true;
        Int mu = rep.basis()[j];
        const auto& col = xw.column(j);
        for (const auto& [r, v] : col) {
            if (r != j) {
                res.diagonal = false;
                res.failures.push_back("X(" + w + ") moves weight " + std::to_string(mu));
            }
        }
        Rational denom = ord_product(ords, mu);
        Radical value;
        if (denom != 0) {
            value = xw.at(j, j).as_radical() * Radical::from_rational(1 / denom);
        } else {
            ++res.singular;
            Rational reduced = ord_product(ords, mu, true);
            value = Radical::xi_power(rep.path_xi_exponent(j, w)) * reduced_q_word(cfg, w, mu) *
                    Radical::from_rational(1 / reduced);
        }
        res.values[j] = value;
        if (first) {
            res.scalar = value;
            first = false;
        } else if (!(value == res.scalar)) {
            res.consistent = false;
            res.failures.push_back("Casimir value " + value.str() + " at weight " + std::to_string(mu) +
                                   " differs from " + res.scalar.str());
        }
    }
    if (res.checked > 0 && res.consistent && !(res.scalar == Radical::xi_power(1)))
        res.failures.push_back("Casimir scalar is " + res.scalar.str() + ", expected xi");
    return res;
}

/// The Casimir as a diagonal matrix on the checked faces.
inline Matrix casimir_matrix(const CasimirResult& res) { return Matrix::diagonal(res.values); }

}  // namespace sixv
