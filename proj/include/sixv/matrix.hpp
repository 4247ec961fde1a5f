#pragma once

// Square sparse matrices over RadicalSum, stored by column.

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "sixv/scalar.hpp"

namespace sixv {

class Matrix {
public:
    explicit Matrix(std::size_t n = 0) : cols_(n) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t k = 0; k < n; ++k) m.set(k, k, Radical::one());
        return m;
    }

    static Matrix diagonal(const std::vector<Radical>& d) {
        Matrix m(d.size());
        for (std::size_t k = 0; k < d.size(); ++k) m.set(k, k, d[k]);
        return m;
    }

    std::size_t dim() const { return cols_.size(); }

    const RadicalSum& at(std::size_t r, std::size_t c) const {
        static const RadicalSum kZero;
        check(r, c);
        auto it = cols_[c].find(r);
        return it == cols_[c].end() ? kZero : it->second;
    }

    void set(std::size_t r, std::size_t c, const RadicalSum& v) {
        check(r, c);
        if (v.is_zero()) {
            cols_[c].erase(r);
        } else {
            cols_[c][r] = v;
        }
    }

    void add(std::size_t r, std::size_t c, const RadicalSum& v) {
        check(r, c);
        RadicalSum& slot = cols_[c][r];
        slot += v;
        if (slot.is_zero()) cols_[c].erase(r);
    }

    const std::map<std::size_t, RadicalSum>& column(std::size_t c) const { return cols_.at(c); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        same_dim(a, b);
        Matrix out(a.dim());
        for (std::size_t c = 0; c < b.dim(); ++c)
            for (const auto& [k, bv] : b.cols_[c])
                for (const auto& [r, av] : a.cols_[k]) out.add(r, c, av * bv);
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        same_dim(a, b);
        Matrix out = a;
        for (std::size_t c = 0; c < b.dim(); ++c)
            for (const auto& [r, v] : b.cols_[c]) out.add(r, c, v);
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-1) * b; }

    friend Matrix operator*(const Radical& s, const Matrix& m) {
        Matrix out(m.dim());
        for (std::size_t c = 0; c < m.dim(); ++c)
            for (const auto& [r, v] : m.cols_[c]) out.set(r, c, RadicalSum(s) * v);
        return out;
    }
    friend Matrix operator*(Int s, const Matrix& m) { return Radical::from_rational(s) * m; }

    Matrix conj_transpose() const {
        Matrix out(dim());
        for (std::size_t c = 0; c < dim(); ++c)
            for (const auto& [r, v] : cols_[c]) out.set(c, r, v.conjugate());
        return out;
    }

    bool is_zero() const {
        for (const auto& col : cols_)
            if (!col.empty()) return false;
        return true;
    }

    bool operator==(const Matrix& o) const { return dim() == o.dim() && (*this - o).is_zero(); }

    std::size_t nonzeros() const {
        std::size_t k = 0;
        for (const auto& col : cols_) k += col.size();
        return k;
    }

    /// At most one nonzero entry per column, each a single Radical term.
    bool monomial() const {
        for (const auto& col : cols_) {
            if (col.size() > 1) return false;
            for (const auto& [r, v] : col)
                if (v.size() != 1) return false;
        }
        return true;
    }

    /// Nonzero entries in (row, column) order.
    std::vector<std::tuple<std::size_t, std::size_t, RadicalSum>> entries() const {
        std::vector<std::tuple<std::size_t, std::size_t, RadicalSum>> out;
        for (std::size_t c = 0; c < dim(); ++c)
            for (const auto& [r, v] : cols_[c]) out.emplace_back(r, c, v);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
        });
        return out;
    }

    /// One "row col value" line per nonzero entry, 0-based.
    std::string triplets() const {
        std::ostringstream os;
        for (const auto& [r, c, v] : entries()) os << r << ' ' << c << ' ' << v << '\n';
        return os.str();
    }

private:
    void check(std::size_t r, std::size_t c) const {
        if (r >= dim() || c >= dim()) throw std::out_of_range("matrix index out of range");
    }
    static void same_dim(const Matrix& a, const Matrix& b) {
        if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimensions differ");
    }

    std::vector<std::map<std::size_t, RadicalSum>> cols_;
};

}  // namespace sixv
