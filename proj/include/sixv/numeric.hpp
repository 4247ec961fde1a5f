#pragma once

// Floating point evaluation at a concrete xi, and an independent signature:
// solve for every Hermitian G making the generators adjoint to each other and
// read the signature off G's eigenvalues.

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "sixv/unitarity.hpp"

namespace sixv {

inline void require_unit_xi(std::complex<double> xi) {
    if (std::abs(std::abs(xi) - 1.0) > 1e-12)
        throw std::domain_error("the invariant form needs |xi| = 1");
}

inline Eigen::MatrixXcd evaluate(const Matrix& m, std::complex<double> xi) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [r, c, v] : m.entries())
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.evaluate(xi);
    return out;
}

struct NumericSignature {
    Signature signature;
    Eigen::Index nullity = 0;      // dimension of the space of invariant Hermitian forms
    std::size_t near_zero = 0;     // eigenvalues of G too small to sign
    bool ok() const { return nullity == 1 && near_zero == 0; }
};

inline NumericSignature numeric_signature(const ModuleRep& rep, std::complex<double> xi,
                                          Involution inv = Involution::Star) {
    require_unit_xi(xi);
    if (rep.windowed()) throw std::invalid_argument("numeric signature needs a finite component");
    const auto n = static_cast<Eigen::Index>(rep.dim());
    const double s = involution_sign(inv);
    Eigen::MatrixXcd xp[2] = {evaluate(rep.matrix(Gen::X1p), xi), evaluate(rep.matrix(Gen::X2p), xi)};
    Eigen::MatrixXcd xm[2] = {evaluate(rep.matrix(Gen::X1m), xi), evaluate(rep.matrix(Gen::X2m), xi)};
    Eigen::MatrixXcd h = evaluate(rep.matrix(Gen::H), xi);

    // Real parameters of a Hermitian matrix: n diagonal entries, then real and
    // imaginary parts of each strictly upper entry.
    const Eigen::Index params = n * n;
    auto basis_matrix = [&](Eigen::Index p) {
        Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
        if (p < n) {
            g(p, p) = 1.0;
            return g;
        }
        Eigen::Index q = (p - n) / 2;
        bool imag = (p - n) % 2 == 1;
        Eigen::Index r = 0, c = 0, k = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j, ++k)
                if (k == q) r = i, c = j;
        std::complex<double> z = imag ? std::complex<double>(0, 1) : std::complex<double>(1, 0);
        g(r, c) = z;
        g(c, r) = std::conj(z);
        return g;
    };
    const Eigen::Index blocks = 5;
    Eigen::MatrixXd a(2 * blocks * n * n, params);
    for (Eigen::Index p = 0; p < params; ++p) {
        Eigen::MatrixXcd g = basis_matrix(p);
        Eigen::MatrixXcd res[blocks] = {
            xp[0].adjoint() * g - s * g * xm[0], xm[0].adjoint() * g - s * g * xp[0],
            xp[1].adjoint() * g - s * g * xm[1], xm[1].adjoint() * g - s * g * xp[1],
            h * g - g * h,
        };
        Eigen::Index row = 0;
        for (const auto& r : res) {
            for (Eigen::Index i = 0; i < n * n; ++i) {
                a(row++, p) = r.reshaped()(i).real();
                a(row++, p) = r.reshaped()(i).imag();
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> normal(a.transpose() * a);
    const auto& ev = normal.eigenvalues();
    double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    NumericSignature out;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) < 1e-10 * scale) ++out.nullity;
    if (out.nullity == 0) return out;

    Eigen::VectorXd v = normal.eigenvectors().col(0);
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index p = 0; p < params; ++p) g += v(p) * basis_matrix(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> form(g);
    const auto& gev = form.eigenvalues();
    double gscale = gev.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < gev.size(); ++k) {
        if (std::abs(gev(k)) < 1e-8 * gscale) {
            ++out.near_zero;
        } else {
            (gev(k) > 0 ? out.signature.plus : out.signature.minus) += 1;
        }
    }
    return out;
}

}  // namespace sixv
