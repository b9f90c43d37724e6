#include "detail.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "entcost/errors.hpp"

namespace entcost::detail {

void require_square(const Matrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        fail(ErrorKind::Size, fmt::format("{} must be a nonempty square matrix, got {}x{}", what, m.rows(), m.cols()));
    }
}

void require_even_dim(const Matrix &m, const char *what) {
    require_square(m, what);
    if (m.rows() % 2 != 0) {
        fail(ErrorKind::Size, fmt::format("{} must have even dimension, got {}", what, m.rows()));
    }
}

void require_same_dim(const Matrix &a, const Matrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorKind::Size, fmt::format("{}: dimension mismatch {}x{} vs {}x{}", what, a.rows(), a.cols(), b.rows(),
                                          b.cols()));
    }
}

Matrix mode_rows(const std::vector<Mode> &modes, Eigen::Index dim) {
    if (modes.empty()) {
        fail(ErrorKind::InvalidRestriction, "subsystem has no modes");
    }
    Matrix rows(2 * modes.size(), dim);
    for (size_t i = 0; i < modes.size(); ++i) {
        if (modes[i].x.size() != dim || modes[i].k.size() != dim) {
            fail(ErrorKind::Size, fmt::format("mode {} has wrong dimension", i));
        }
        rows.row(2 * i) = modes[i].x.transpose();
        rows.row(2 * i + 1) = modes[i].k.transpose();
    }
    return rows;
}

CVector eigenvalues(const Matrix &m) {
    Eigen::EigenSolver<Matrix> es(m, false);
    if (es.info() == Eigen::Success) {
        return es.eigenvalues();
    }
    Eigen::ComplexEigenSolver<CMatrix> ces(m.cast<Complex>(), false);
    if (ces.info() != Eigen::Success) {
        fail(ErrorKind::NumericalInconsistency, "eigenvalue computation failed");
    }
    return ces.eigenvalues();
}

std::vector<double> paired_eigenvalues(const Matrix &m) {
    std::vector<double> values;
    for (const auto &lambda : eigenvalues(m)) {
        values.push_back(lambda.real());
    }
    std::sort(values.begin(), values.end());
    std::vector<double> paired;
    for (size_t i = 0; i + 1 < values.size(); i += 2) {
        paired.push_back(0.5 * (values[i] + values[i + 1]));
    }
    return paired;
}

Matrix block_diag(const Matrix &a, const Matrix &b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

double relative_error(const Matrix &a, const Matrix &b) { return (a - b).norm() / std::max(1.0, b.norm()); }

double trace_formula_entropy(const Matrix &restricted_j, double sign) {
    const Eigen::Index n = restricted_j.rows();
    const CMatrix z = 0.5 * (CMatrix::Identity(n, n) + Complex(0.0, 1.0) * restricted_j.cast<Complex>());
    Eigen::ComplexEigenSolver<CMatrix> es(z, false);
    double total = 0.0;
    for (const Complex &mu : es.eigenvalues()) {
        const double mod = std::abs(mu);
        if (mod > 0.0) {
            total += mu.real() * std::log2(mod);
        }
    }
    return sign * total;
}

}  // namespace entcost::detail
