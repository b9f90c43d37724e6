#include "entcost/linalg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unsupported/Eigen/MatrixFunctions>

#include "detail.hpp"
#include "entcost/errors.hpp"

namespace entcost::linalg {

namespace {

using detail::require_square;

// Newton iteration with determinant scaling; `a` has real nonzero eigenvalues.
Matrix matrix_sign(const Matrix &a) {
    Matrix x = a;
    const double n = static_cast<double>(a.rows());
    for (int iter = 0; iter < 100; ++iter) {
        Eigen::PartialPivLU<Matrix> lu(x);
        const Matrix inv = lu.inverse();
        double log_det = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            log_det += std::log(std::abs(lu.matrixLU()(i, i)));
        }
        const double mu = iter < 8 ? std::exp(-log_det / n) : 1.0;
        Matrix next = 0.5 * (mu * x + inv / mu);
        const double change = (next - x).norm();
        x = std::move(next);
        if (change <= 1e-14 * x.norm()) {
            return x;
        }
    }
    fail(ErrorKind::NumericalInconsistency, "matrix sign iteration did not converge");
}

Complex wick_recursive(const CMatrix &c2, const std::vector<int> &idx, bool fermion) {
    if (idx.empty()) {
        return 1.0;
    }
    Complex total = 0.0;
    std::vector<int> rest;
    rest.reserve(idx.size() - 2);
    for (size_t j = 1; j < idx.size(); ++j) {
        rest.clear();
        for (size_t m = 1; m < idx.size(); ++m) {
            if (m != j) {
                rest.push_back(idx[m]);
            }
        }
        const double sign = (fermion && (j - 1) % 2 == 1) ? -1.0 : 1.0;
        total += sign * c2(idx[0], idx[j]) * wick_recursive(c2, rest, fermion);
    }
    return total;
}

Vector orthogonalize(Vector v, const Matrix &basis, Eigen::Index filled) {
    if (filled == 0) {
        return v;
    }
    const auto q = basis.leftCols(filled);
    for (int pass = 0; pass < 2; ++pass) {
        v -= q * (q.transpose() * v);
    }
    return v;
}

}  // namespace

Matrix abs_eigen_map(const Matrix &m, const Tolerances &tol) {
    require_square(m, "abs_eigen_map input");
    const CVector ev = detail::eigenvalues(m);
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    bool has_real = false;
    bool has_imag = false;
    for (const Complex &lambda : ev) {
        const double mod = std::abs(lambda);
        if (mod <= tol.structural * scale) {
            fail(ErrorKind::DegenerateSpectrum, fmt::format("eigenvalue of modulus {:.3g} is numerically zero", mod));
        }
        if (std::abs(lambda.real()) <= 1e-6 * mod) {
            has_imag = true;
        } else if (std::abs(lambda.imag()) <= 1e-6 * mod) {
            has_real = true;
        } else {
            fail(ErrorKind::Precondition,
                 fmt::format("eigenvalue {}{:+}i is neither real nor imaginary", lambda.real(), lambda.imag()));
        }
    }
    const Matrix sq = m * m;
    Matrix target;
    if (!has_real) {
        target = -sq;
    } else if (!has_imag) {
        target = sq;
    } else {
        target = matrix_sign(sq) * sq;
    }
    const double norm = target.cwiseAbs().maxCoeff();
    if ((target - target.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * norm) {
        Eigen::SelfAdjointEigenSolver<Matrix> sym(0.5 * (target + target.transpose()));
        if (sym.info() == Eigen::Success && sym.eigenvalues().minCoeff() > 0.0) {
            return sym.operatorSqrt();
        }
    }
    const Matrix root = target.sqrt();
    if (!root.allFinite() || (root * root - target).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, norm)) {
        fail(ErrorKind::NumericalInconsistency, "matrix square root did not converge");
    }
    return root;
}

GroupFlags group_membership(const Matrix &m, const FormPair &forms, double tol) {
    if (m.rows() != forms.dim() || m.cols() != forms.dim()) {
        fail(ErrorKind::Size, "transformation and forms have different dimensions");
    }
    GroupFlags out;
    out.symplectic = (m * forms.omega * m.transpose() - forms.omega).cwiseAbs().maxCoeff() <= tol;
    out.orthogonal = (m * forms.g * m.transpose() - forms.g).cwiseAbs().maxCoeff() <= tol;
    return out;
}

Matrix matrix_exp(const Matrix &a) {
    require_square(a, "matrix_exp input");
    return a.exp();
}

Complex wick_npoint(const CMatrix &c2, const std::vector<int> &indices, Statistics stats) {
    if (c2.rows() != c2.cols()) {
        fail(ErrorKind::Size, "two-point function must be square");
    }
    for (int i : indices) {
        if (i < 0 || i >= c2.rows()) {
            fail(ErrorKind::Precondition, fmt::format("index {} out of range for dimension {}", i, c2.rows()));
        }
    }
    if (indices.size() % 2 == 1) {
        return 0.0;
    }
    return wick_recursive(c2, indices, stats == Statistics::Fermion);
}

Matrix standard_symplectic(int modes) {
    Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
    for (int i = 0; i < modes; ++i) {
        omega(2 * i, 2 * i + 1) = 1.0;
        omega(2 * i + 1, 2 * i) = -1.0;
    }
    return omega;
}

Matrix passive_generator(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Matrix k(4, 4);
    k << 0, 0, c, -s,
         0, 0, s, c,
         -c, -s, 0, 0,
         s, -c, 0, 0;
    return k;
}

AntisymmetricNormalForm antisymmetric_normal_form(const Matrix &m, double tol) {
    require_square(m, "antisymmetric_normal_form input");
    const Eigen::Index n = m.rows();
    if (n % 2 != 0) {
        fail(ErrorKind::Size, "antisymmetric normal form needs an even dimension");
    }
    const Matrix a = antisymmetric_part(m);
    const double scale = std::max(1.0, a.norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.transpose() * a);
    const Matrix candidates = es.eigenvectors();
    std::vector<bool> used(n, false);
    Matrix basis = Matrix::Zero(n, n);
    Eigen::Index filled = 0;

    // Greedy choice of the candidate least contained in the span found so far.
    auto pick = [&](Eigen::Index extra) -> Vector {
        Eigen::Index best = -1;
        double best_norm = -1.0;
        Vector best_vec;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (used[c]) {
                continue;
            }
            Vector v = orthogonalize(candidates.col(c), basis, filled + extra);
            const double norm = v.norm();
            if (norm > best_norm) {
                best_norm = norm;
                best = c;
                best_vec = std::move(v);
            }
        }
        used[best] = true;
        return best_vec / best_norm;
    };

    std::vector<std::pair<double, Eigen::Index>> blocks;
    while (filled < n) {
        const Vector u = pick(0);
        const Vector w = a * u;
        const double mu = w.norm();
        Vector v;
        if (mu > tol * scale) {
            v = orthogonalize(w / mu, basis, filled);
            v -= u.dot(v) * u;
            v.normalize();
        } else {
            basis.col(filled) = u;
            v = pick(1);
        }
        double value = v.dot(a * u);
        if (value < 0.0) {
            v = -v;
            value = -value;
        }
        basis.col(filled) = v;
        basis.col(filled + 1) = u;
        blocks.emplace_back(value, filled);
        filled += 2;
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto &l, const auto &r) { return l.first < r.first; });
    AntisymmetricNormalForm out{Matrix(n, n), {}};
    for (size_t i = 0; i < blocks.size(); ++i) {
        out.basis.col(2 * i) = basis.col(blocks[i].second);
        out.basis.col(2 * i + 1) = basis.col(blocks[i].second + 1);
        out.values.push_back(blocks[i].first);
    }
    return out;
}

WilliamsonForm williamson(const Matrix &g, const Matrix &omega, double tol) {
    require_square(g, "covariance");
    if (omega.rows() != g.rows() || omega.cols() != g.cols()) {
        fail(ErrorKind::Size, "covariance and symplectic form have different dimensions");
    }
    const Eigen::Index n = g.rows();
    const int modes = static_cast<int>(n / 2);

    const AntisymmetricNormalForm darboux = antisymmetric_normal_form(omega, tol);
    Matrix to_darboux(n, n);
    for (int i = 0; i < modes; ++i) {
        const double value = darboux.values[i];
        if (value <= tol * std::max(1.0, omega.norm())) {
            fail(ErrorKind::InvalidRestriction, "symplectic form is degenerate on this subspace");
        }
        to_darboux.row(2 * i) = darboux.basis.col(2 * i).transpose() / std::sqrt(value);
        to_darboux.row(2 * i + 1) = darboux.basis.col(2 * i + 1).transpose() / std::sqrt(value);
    }

    const Matrix gd = symmetric_part(to_darboux * g * to_darboux.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(gd);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        fail(ErrorKind::Precondition, "covariance is not positive definite");
    }
    const Matrix inv_sqrt = es.operatorInverseSqrt();
    const AntisymmetricNormalForm nf =
        antisymmetric_normal_form(inv_sqrt * standard_symplectic(modes) * inv_sqrt, tol);

    WilliamsonForm out{Matrix(n, n), {}};
    Matrix diag_rows(n, n);
    for (int i = 0; i < modes; ++i) {
        const double d = 1.0 / nf.values[i];
        out.values.push_back(d);
        diag_rows.row(2 * i) = std::sqrt(d) * nf.basis.col(2 * i).transpose();
        diag_rows.row(2 * i + 1) = std::sqrt(d) * nf.basis.col(2 * i + 1).transpose();
    }
    out.transform = diag_rows * inv_sqrt * to_darboux;
    return out;
}

double boson_mode_entropy(double x) {
    if (!(x >= 1.0 - 1e-9)) {
        fail(ErrorKind::Precondition, fmt::format("bosonic mode parameter {} is below 1", x));
    }
    if (x <= 1.0) {
        return 0.0;
    }
    const double a = 0.5 * (x + 1.0);
    const double b = 0.5 * (x - 1.0);
    return a * std::log2(a) - b * std::log2(b);
}

double fermion_mode_entropy(double x) {
    x = std::abs(x);
    if (!(x <= 1.0 + 1e-9)) {
        fail(ErrorKind::Precondition, fmt::format("fermionic mode parameter {} exceeds 1", x));
    }
    if (x >= 1.0) {
        return 0.0;
    }
    const double p = 0.5 * (1.0 + x);
    const double q = 0.5 * (1.0 - x);
    return -p * std::log2(p) - q * std::log2(q);
}

Matrix permute_row_blocks(const Matrix &rows, const std::vector<int> &order) {
    Matrix out(2 * static_cast<Eigen::Index>(order.size()), rows.cols());
    for (size_t i = 0; i < order.size(); ++i) {
        out.middleRows(2 * i, 2) = rows.middleRows(2 * order[i], 2);
    }
    return out;
}

Matrix symmetric_part(const Matrix &m) { return 0.5 * (m + m.transpose()); }

Matrix antisymmetric_part(const Matrix &m) { return 0.5 * (m - m.transpose()); }

}  // namespace entcost::linalg
