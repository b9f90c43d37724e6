#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "entcost/errors.hpp"
#include "entcost/oracle.hpp"

namespace entcost::oracle {

namespace {

double entropy_from_schmidt(const CMatrix &m) {
    Eigen::BDCSVD<CMatrix> svd(m);
    double s = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double p = svd.singularValues()(i) * svd.singularValues()(i);
        if (p > 1e-300) {
            s -= p * std::log2(p);
        }
    }
    return s;
}

}  // namespace

FermionFock::FermionFock(int modes) : modes_(modes) {
    if (modes < 1 || modes > kMaxModes) {
        fail(ErrorKind::Size, fmt::format("fermionic Fock oracle supports 1..{} modes, got {}", kMaxModes, modes));
    }
    const Eigen::Index n = dim();
    const double amp = 1.0 / std::numbers::sqrt2;
    target_.assign(2 * modes, std::vector<Eigen::Index>(n));
    phase_.assign(2 * modes, std::vector<Complex>(n));
    for (int j = 0; j < modes; ++j) {
        const int pos = modes - 1 - j;
        for (Eigen::Index s = 0; s < n; ++s) {
            const auto bits = static_cast<unsigned long long>(s);
            const int string = std::popcount(bits >> (pos + 1)) % 2 == 0 ? 1 : -1;
            const bool occupied = (bits >> pos) & 1ULL;
            const Eigen::Index flipped = s ^ (Eigen::Index{1} << pos);
            target_[2 * j][s] = flipped;
            phase_[2 * j][s] = Complex(string * amp, 0.0);
            target_[2 * j + 1][s] = flipped;
            phase_[2 * j + 1][s] = Complex(0.0, occupied ? -string * amp : string * amp);
        }
    }
}

CMatrix FermionFock::generator(int a) const {
    const Eigen::Index n = dim();
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index s = 0; s < n; ++s) {
        m(target_[a][s], s) = phase_[a][s];
    }
    return m;
}

CVector FermionFock::apply(int a, const CVector &psi) const {
    if (a < 0 || a >= 2 * modes_) {
        fail(ErrorKind::Precondition, fmt::format("generator index {} out of range", a));
    }
    CVector out = CVector::Zero(psi.size());
    for (Eigen::Index s = 0; s < psi.size(); ++s) {
        out(target_[a][s]) += phase_[a][s] * psi(s);
    }
    return out;
}

CMatrix FermionFock::hamiltonian(const fermion::Hamiltonian &H) const {
    if (H.h.rows() != 2 * modes_ || H.h.cols() != 2 * modes_) {
        fail(ErrorKind::Size, "Hamiltonian does not match the Fock space");
    }
    const Eigen::Index n = dim();
    const Complex i_unit(0.0, 1.0);
    CMatrix m = CMatrix::Zero(n, n);
    // For antisymmetric h, (i/2) h_ab xi^a xi^b = i sum_{a<b} h_ab xi^a xi^b.
    for (int a = 0; a < 2 * modes_; ++a) {
        for (int b = a + 1; b < 2 * modes_; ++b) {
            const double hab = 0.5 * (H.h(a, b) - H.h(b, a));
            if (hab == 0.0) continue;
            for (Eigen::Index s = 0; s < n; ++s) {
                const Eigen::Index mid = target_[b][s];
                m(target_[a][mid], s) += i_unit * hab * phase_[a][mid] * phase_[b][s];
            }
        }
    }
    return m;
}

double FermionFock::expectation(const CMatrix &op, const CVector &psi) const { return psi.dot(op * psi).real(); }

CMatrix FermionFock::two_point(const CVector &psi) const {
    CMatrix images(psi.size(), 2 * modes_);
    for (int a = 0; a < 2 * modes_; ++a) {
        images.col(a) = apply(a, psi);
    }
    return images.adjoint() * images;
}

Matrix FermionFock::covariance(const CVector &psi) const {
    const CMatrix c = two_point(psi);
    return (c - c.transpose()).imag();
}

Complex FermionFock::correlator(const CVector &psi, const std::vector<int> &indices) const {
    CVector v = psi;
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
        v = apply(*it, v);
    }
    return psi.dot(v);
}

double FermionFock::reduced_entropy(const CVector &psi, const std::vector<int> &subset) const {
    std::vector<int> order;
    std::vector<bool> taken(modes_, false);
    for (int m : subset) {
        if (m < 0 || m >= modes_ || taken[m]) {
            fail(ErrorKind::Precondition, "subsystem modes must be distinct and in range");
        }
        taken[m] = true;
        order.push_back(m);
    }
    for (int m = 0; m < modes_; ++m) {
        if (!taken[m]) order.push_back(m);
    }
    std::vector<int> new_position(modes_);
    for (int i = 0; i < modes_; ++i) {
        new_position[order[i]] = i;
    }

    // Reordering creation operators into the new mode order costs the sign of
    // the permutation restricted to the occupied modes.
    const Eigen::Index n = dim();
    CVector reordered = CVector::Zero(n);
    for (Eigen::Index s = 0; s < n; ++s) {
        std::vector<int> occupied;
        Eigen::Index t = 0;
        for (int m = 0; m < modes_; ++m) {
            if ((s >> (modes_ - 1 - m)) & 1) {
                occupied.push_back(new_position[m]);
                t |= Eigen::Index{1} << (modes_ - 1 - new_position[m]);
            }
        }
        int inversions = 0;
        for (size_t i = 0; i < occupied.size(); ++i) {
            for (size_t j = i + 1; j < occupied.size(); ++j) {
                inversions += occupied[i] > occupied[j];
            }
        }
        reordered(t) = (inversions % 2 == 0 ? 1.0 : -1.0) * psi(s);
    }

    const Eigen::Index rows = Eigen::Index{1} << subset.size();
    const Eigen::Index cols = n / rows;
    CMatrix m(rows, cols);
    for (Eigen::Index a = 0; a < rows; ++a) {
        for (Eigen::Index b = 0; b < cols; ++b) {
            m(a, b) = reordered(a * cols + b);
        }
    }
    return entropy_from_schmidt(m);
}

CVector FermionFock::gaussian_vector(const Matrix &omega) const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hamiltonian({omega}));
    return es.eigenvectors().col(0);
}

FockOracleResult fermion_fock_oracle(const fermion::Hamiltonian &H) {
    if (H.h.rows() != H.h.cols() || H.h.rows() % 2 != 0) {
        fail(ErrorKind::Size, "Hamiltonian must be a square matrix of even dimension");
    }
    const int modes = static_cast<int>(H.h.rows() / 2);
    const FermionFock fock(modes);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(fock.hamiltonian(H));
    FockOracleResult out;
    out.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    out.ground = es.eigenvectors().col(0);
    out.covariance = fock.covariance(out.ground);
    for (int j = 0; j < modes; ++j) {
        out.mode_entropies.push_back(fock.reduced_entropy(out.ground, {j}));
    }
    return out;
}

}  // namespace entcost::oracle
