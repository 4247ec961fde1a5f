#pragma once

// Exact scalars of the form xi^k * i^a * c * sqrt(s): k integer, a in Z/4,
// c a nonnegative rational, s a squarefree positive integer. The parameter
// xi is formal and assumed to lie on the unit circle, so conj(xi) = xi^-1.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "sixv/lattice.hpp"

namespace sixv {

using BigInt = mpz_class;
using Rational = mpq_class;

namespace detail {

// Trial division bound for square extraction. Every radicand produced by the
// library is a product of small integers, so the cofactor left after trial
// division is 1 in practice; a larger cofactor is accepted as squarefree
// unless it is a perfect square.
inline constexpr unsigned long kTrialDivisionBound = 1UL << 16;

/// Writes v = root^2 * core with core squarefree (modulo the bound above).
inline void split_square(BigInt v, BigInt& root, BigInt& core) {
    root = 1;
    core = 1;
    if (v == 0) {
        root = 0;
        return;
    }
    for (unsigned long p = 2; p <= kTrialDivisionBound; p += (p == 2 ? 1 : 2)) {
        if (v == 1) break;
        if (mpz_divisible_ui_p(v.get_mpz_t(), p) == 0) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
            ++e;
        }
        BigInt pp;
        mpz_ui_pow_ui(pp.get_mpz_t(), p, e / 2);
        root *= pp;
        if (e % 2 == 1) core *= p;
    }
    if (v != 1) {
        if (mpz_perfect_square_p(v.get_mpz_t()) != 0) {
            BigInt r;
            mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
            root *= r;
        } else {
            core *= v;
        }
    }
}

inline int mod4(Int a) { return static_cast<int>(floor_mod(a, 4)); }

}  // namespace detail

class Radical {
public:
    /// Zero.
    Radical() = default;

    static Radical zero() { return Radical(); }
    static Radical one() { return from_rational(1); }
    static Radical xi_power(Int k) {
        Radical r = one();
        r.xi_exp_ = k;
        return r;
    }

    static Radical from_rational(const Rational& q) {
        Radical r;
        if (q == 0) return r;
        r.coeff_ = abs(q);
        r.coeff_.canonicalize();
        r.phase_ = q < 0 ? 2 : 0;
        r.radicand_ = 1;
        return r;
    }

    /// The nonnegative square root of q >= 0.
    static Radical sqrt_of(const Rational& q) {
        if (q < 0) throw std::domain_error("sqrt_of: negative argument");
        if (q == 0) return Radical();
        BigInt root, core;
        detail::split_square(BigInt(q.get_num() * q.get_den()), root, core);
        Radical r;
        r.coeff_ = Rational(root, q.get_den());
        r.coeff_.canonicalize();
        r.radicand_ = core;
        return r;
    }

    /// General constructor; `radicand` need not be squarefree.
    static Radical make(Int xi_exp, Int phase, const Rational& coeff, const BigInt& radicand) {
        if (coeff < 0) throw std::domain_error("Radical coefficient must be nonnegative");
        if (radicand < 0) throw std::domain_error("Radical radicand must be nonnegative");
        Radical r = sqrt_of(Rational(radicand));
        if (r.is_zero() || coeff == 0) return Radical();
        Rational c(coeff);
        c.canonicalize();
        r.coeff_ *= c;
        r.xi_exp_ = xi_exp;
        r.phase_ = detail::mod4(phase);
        return r;
    }

    Int xi_exp() const { return xi_exp_; }
    int phase() const { return phase_; }
    const Rational& coeff() const { return coeff_; }
    const BigInt& radicand() const { return radicand_; }
    /// Square of the modulus, c^2 * s.
    Rational modulus_squared() const { return coeff_ * coeff_ * Rational(radicand_); }

    bool is_zero() const { return coeff_ == 0; }
    bool is_one() const { return *this == one(); }

    /// Real rational value, if the scalar is real, rational and free of xi.
    bool is_rational() const {
        return is_zero() || (xi_exp_ == 0 && phase_ % 2 == 0 && radicand_ == 1);
    }
    Rational to_rational() const {
        if (!is_rational()) throw std::domain_error("Radical is not a rational number: " + str());
        return phase_ == 2 ? Rational(-coeff_) : coeff_;
    }

    friend Radical operator*(const Radical& a, const Radical& b) {
        if (a.is_zero() || b.is_zero()) return Radical();
        Radical r;
        r.xi_exp_ = a.xi_exp_ + b.xi_exp_;
        r.phase_ = (a.phase_ + b.phase_) % 4;
        BigInt g;
        mpz_gcd(g.get_mpz_t(), a.radicand_.get_mpz_t(), b.radicand_.get_mpz_t());
        r.coeff_ = a.coeff_ * b.coeff_ * Rational(g);
        r.radicand_ = (a.radicand_ / g) * (b.radicand_ / g);
        return r;
    }
    Radical& operator*=(const Radical& b) { return *this = *this * b; }

    Radical operator-() const {
        Radical r = *this;
        if (!r.is_zero()) r.phase_ = (r.phase_ + 2) % 4;
        return r;
    }

    /// Multiplicative inverse; throws on zero.
    Radical inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero Radical");
        Radical r;
        r.xi_exp_ = -xi_exp_;
        r.phase_ = detail::mod4(-phase_);
        r.coeff_ = 1 / (coeff_ * Rational(radicand_));
        r.radicand_ = radicand_;
        return r;
    }

    /// Complex conjugate under |xi| = 1.
    Radical conjugate() const {
        Radical r = *this;
        if (r.is_zero()) return r;
        r.xi_exp_ = -xi_exp_;
        r.phase_ = detail::mod4(-phase_);
        return r;
    }

    std::complex<double> evaluate(std::complex<double> xi) const {
        if (is_zero()) return {0.0, 0.0};
        static const std::complex<double> kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        double mag = coeff_.get_d() * std::sqrt(radicand_.get_d());
        return std::pow(xi, static_cast<double>(xi_exp_)) * kI[phase_] * mag;
    }

    bool operator==(const Radical& o) const {
        return xi_exp_ == o.xi_exp_ && phase_ == o.phase_ && coeff_ == o.coeff_ &&
               radicand_ == o.radicand_;
    }

    /// Display form, e.g. "xi^1 * i^3 * 2*sqrt(6)".
    std::string str() const {
        if (is_zero()) return "0";
        std::vector<std::string> parts;
        if (xi_exp_ != 0) parts.push_back("xi^" + std::to_string(xi_exp_));
        if (phase_ != 0) parts.push_back("i^" + std::to_string(phase_));
        std::string mag;
        if (radicand_ == 1) {
            mag = coeff_.get_str();
        } else if (coeff_ == 1) {
            mag = "sqrt(" + radicand_.get_str() + ")";
        } else {
            mag = coeff_.get_str() + "*sqrt(" + radicand_.get_str() + ")";
        }
        if (parts.empty() || mag != "1") parts.push_back(mag);
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " * ";
            out += parts[i];
        }
        return out;
    }

private:
    Int xi_exp_ = 0;
    int phase_ = 0;
    Rational coeff_ = 0;
    BigInt radicand_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Radical& r) { return os << r.str(); }

/// Finite sum of Radicals. Terms with equal xi exponent and equal squarefree
/// radicand are merged into one Gaussian-rational coefficient; since square
/// roots of distinct squarefree integers are linearly independent over Q(i),
/// the sum is zero iff every merged coefficient vanishes.
class RadicalSum {
public:
    RadicalSum() = default;
    RadicalSum(const Radical& r) { add(r); }  // NOLINT(google-explicit-constructor)

    RadicalSum& add(const Radical& r) {
        if (r.is_zero()) return *this;
        auto& [re, im] = terms_[{r.xi_exp(), r.radicand()}];
        switch (r.phase()) {
            case 0: re += r.coeff(); break;
            case 1: im += r.coeff(); break;
            case 2: re -= r.coeff(); break;
            default: im -= r.coeff(); break;
        }
        if (re == 0 && im == 0) terms_.erase({r.xi_exp(), r.radicand()});
        return *this;
    }

    RadicalSum& operator+=(const RadicalSum& o) {
        for (const auto& t : o.radicals()) add(t);
        return *this;
    }
    RadicalSum& operator-=(const RadicalSum& o) {
        for (const auto& t : o.radicals()) add(-t);
        return *this;
    }
    friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
    friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }

    friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
        RadicalSum out;
        auto ra = a.radicals();
        auto rb = b.radicals();
        for (const auto& x : ra)
            for (const auto& y : rb) out.add(x * y);
        return out;
    }

    RadicalSum conjugate() const {
        RadicalSum out;
        for (const auto& t : radicals()) out.add(t.conjugate());
        return out;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return radicals().size(); }

    bool operator==(const RadicalSum& o) const { return (*this - o).is_zero(); }

    /// Terms as Radicals (a Gaussian coefficient splits into real and imaginary parts).
    std::vector<Radical> radicals() const {
        std::vector<Radical> out;
        for (const auto& [key, c] : terms_) {
            const auto& [k, s] = key;
            const auto& [re, im] = c;
            if (re != 0) out.push_back(Radical::make(k, re < 0 ? 2 : 0, abs(re), s));
            if (im != 0) out.push_back(Radical::make(k, im < 0 ? 3 : 1, abs(im), s));
        }
        return out;
    }

    /// The single Radical equal to this sum; throws if it has several terms.
    Radical as_radical() const {
        auto rs = radicals();
        if (rs.empty()) return Radical();
        if (rs.size() > 1) throw std::domain_error("RadicalSum has several terms: " + str());
        return rs.front();
    }

    std::complex<double> evaluate(std::complex<double> xi) const {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& t : radicals()) acc += t.evaluate(xi);
        return acc;
    }

    std::string str() const {
        auto rs = radicals();
        if (rs.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (i) out += " + ";
            out += rs[i].str();
        }
        return out;
    }

private:
    std::map<std::pair<Int, BigInt>, std::pair<Rational, Rational>> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const RadicalSum& s) { return os << s.str(); }

}  // namespace sixv
