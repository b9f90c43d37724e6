#include <fmt/format.h>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "entcost/errors.hpp"
#include "entcost/oracle.hpp"

namespace entcost::oracle {

using SparseC = Eigen::SparseMatrix<Complex>;

namespace {

SparseC identity(Eigen::Index n) {
    SparseC m(n, n);
    m.setIdentity();
    return m;
}

// Single-mode q and p on levels 0..cutoff.
std::pair<SparseC, SparseC> single_mode_quadratures(int cutoff) {
    const Eigen::Index d = cutoff + 1;
    std::vector<Eigen::Triplet<Complex>> qt;
    std::vector<Eigen::Triplet<Complex>> pt;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (Eigen::Index n = 1; n < d; ++n) {
        const double amp = std::sqrt(static_cast<double>(n)) * inv_sqrt2;
        // a |n> = sqrt(n) |n-1>
        qt.emplace_back(n - 1, n, amp);
        qt.emplace_back(n, n - 1, amp);
        pt.emplace_back(n - 1, n, Complex(0.0, -amp));
        pt.emplace_back(n, n - 1, Complex(0.0, amp));
    }
    SparseC q(d, d);
    SparseC p(d, d);
    q.setFromTriplets(qt.begin(), qt.end());
    p.setFromTriplets(pt.begin(), pt.end());
    return {q, p};
}

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

BosonFock::BosonFock(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
    if (modes < 1 || modes > kMaxModes) {
        fail(ErrorKind::Size, fmt::format("bosonic Fock oracle supports 1..{} modes, got {}", kMaxModes, modes));
    }
    if (cutoff < 1 || cutoff > kMaxCutoff) {
        fail(ErrorKind::Size, fmt::format("cutoff must lie in 1..{}, got {}", kMaxCutoff, cutoff));
    }
    const auto [q, p] = single_mode_quadratures(cutoff);
    const Eigen::Index d = cutoff + 1;
    if (modes == 1) {
        xi_ = {q, p};
        dim_ = d;
    } else {
        const SparseC id = identity(d);
        xi_ = {Eigen::kroneckerProduct(q, id).eval(), Eigen::kroneckerProduct(p, id).eval(),
               Eigen::kroneckerProduct(id, q).eval(), Eigen::kroneckerProduct(id, p).eval()};
        dim_ = d * d;
    }
}

SparseC BosonFock::hamiltonian(const boson::Hamiltonian &H) const {
    const int n = 2 * modes_;
    if (H.h.rows() != n || H.h.cols() != n || (H.f.size() != 0 && H.f.size() != n)) {
        fail(ErrorKind::Size, "Hamiltonian does not match the Fock space");
    }
    SparseC m(dim_, dim_);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (H.h(a, b) != 0.0) {
                m += (0.5 * H.h(a, b)) * (xi_[a] * xi_[b]);
            }
        }
        if (H.f.size() != 0 && H.f(a) != 0.0) {
            m += H.f(a) * xi_[a];
        }
    }
    m.makeCompressed();
    return m;
}

double BosonFock::expectation(const SparseC &op, const CVector &psi) const { return psi.dot(op * psi).real(); }

Matrix BosonFock::covariance(const CVector &psi, Vector *displacement) const {
    const int n = 2 * modes_;
    CMatrix images(psi.size(), n);
    Vector z(n);
    for (int a = 0; a < n; ++a) {
        images.col(a) = xi_[a] * psi;
        z(a) = psi.dot(images.col(a)).real();
    }
    const CMatrix c = images.adjoint() * images;
    if (displacement) {
        *displacement = z;
    }
    return 2.0 * c.real() - 2.0 * z * z.transpose();
}

double BosonFock::mode0_entropy(const CVector &psi) const {
    const Eigen::Index rows = cutoff_ + 1;
    const Eigen::Index cols = dim_ / rows;
    CMatrix m(rows, cols);
    for (Eigen::Index a = 0; a < rows; ++a) {
        for (Eigen::Index b = 0; b < cols; ++b) {
            m(a, b) = psi(a * cols + b);
        }
    }
    return entropy_from_schmidt(m);
}

Complex BosonFock::correlator(const CVector &psi, const std::vector<int> &indices) const {
    CVector v = psi;
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
        if (*it < 0 || *it >= 2 * modes_) {
            fail(ErrorKind::Precondition, "generator index out of range");
        }
        v = xi_[*it] * v;
    }
    return psi.dot(v);
}

LanczosResult lanczos_lowest(const SparseC &m, int wanted, double tol) {
    const Eigen::Index n = m.rows();
    const Eigen::Index max_steps = std::min<Eigen::Index>(n, 800);
    SeededSampler sampler(0x5eed);
    CVector start(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        start(i) = Complex(sampler.normal(), sampler.normal());
    }
    CMatrix basis(n, max_steps);
    basis.col(0) = start.normalized();
    std::vector<double> alpha;
    std::vector<double> beta;

    LanczosResult out;
    for (Eigen::Index j = 0; j < max_steps; ++j) {
        CVector w = m * basis.col(j);
        alpha.push_back(basis.col(j).dot(w).real());
        w -= alpha.back() * basis.col(j);
        if (j > 0) {
            w -= beta.back() * basis.col(j - 1);
        }
        for (int pass = 0; pass < 2; ++pass) {
            w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
        }
        const double b = w.norm();
        const Eigen::Index size = j + 1;
        const bool exhausted = b < 1e-13 || size == max_steps;
        if (!exhausted && size % 10 != 0) {
            beta.push_back(b);
            basis.col(j + 1) = w / b;
            continue;
        }
        Matrix t = Matrix::Zero(size, size);
        for (Eigen::Index i = 0; i < size; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < size) {
                t(i, i + 1) = t(i + 1, i) = beta[i];
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es(t);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        const double ground_residual = std::abs(b * es.eigenvectors()(size - 1, 0));
        if (exhausted || ground_residual < tol * scale) {
            out.values.clear();
            for (Eigen::Index i = 0; i < size && static_cast<int>(out.values.size()) < wanted; ++i) {
                if (std::abs(b * es.eigenvectors()(size - 1, i)) < std::sqrt(tol) * scale) {
                    out.values.push_back(es.eigenvalues()(i));
                }
            }
            out.ground = (basis.leftCols(size) * es.eigenvectors().col(0).cast<Complex>()).normalized();
            out.residual = (m * out.ground - es.eigenvalues()(0) * out.ground).norm();
            return out;
        }
        beta.push_back(b);
        basis.col(j + 1) = w / b;
    }
    return out;
}

namespace {

FockOracleResult run_boson(const boson::Hamiltonian &H, int modes, int cutoff) {
    const BosonFock fock(modes, cutoff);
    const LanczosResult lz = lanczos_lowest(fock.hamiltonian(H), 4, 1e-11);
    FockOracleResult out;
    out.energies = lz.values;
    out.ground = lz.ground;
    out.covariance = fock.covariance(lz.ground, &out.displacement);
    out.mode_entropies = {fock.mode0_entropy(lz.ground)};
    return out;
}

}  // namespace

FockOracleResult boson_fock_oracle(const boson::Hamiltonian &H, int cutoff, double tolerance) {
    if (H.h.rows() != H.h.cols() || H.h.rows() % 2 != 0) {
        fail(ErrorKind::Size, "Hamiltonian must be a square matrix of even dimension");
    }
    const int modes = static_cast<int>(H.h.rows() / 2);
    if (modes > BosonFock::kMaxModes) {
        fail(ErrorKind::Size, fmt::format("bosonic Fock oracle supports at most {} modes", BosonFock::kMaxModes));
    }
    if (cutoff < 6 || cutoff > BosonFock::kMaxCutoff) {
        fail(ErrorKind::Size, fmt::format("cutoff must lie in 6..{}, got {}", BosonFock::kMaxCutoff, cutoff));
    }
    FockOracleResult fine = run_boson(H, modes, cutoff);
    const FockOracleResult coarse = run_boson(H, modes, cutoff - 5);
    if (fine.energies.empty() || coarse.energies.empty()) {
        throw ConvergenceError("Lanczos iteration did not converge", std::numeric_limits<double>::infinity());
    }
    fine.convergence_estimate = std::max(std::abs(fine.energies[0] - coarse.energies[0]),
                                         (fine.covariance - coarse.covariance).cwiseAbs().maxCoeff());
    if (!(fine.convergence_estimate <= tolerance)) {
        throw ConvergenceError(fmt::format("truncated Fock result not converged at cutoff {} (estimate {:.3g})",
                                           cutoff, fine.convergence_estimate),
                               fine.convergence_estimate);
    }
    return fine;
}

}  // namespace entcost::oracle
