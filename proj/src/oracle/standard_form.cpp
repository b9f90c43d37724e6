#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "../detail.hpp"
#include "entcost/errors.hpp"
#include "entcost/linalg.hpp"
#include "entcost/oracle.hpp"

namespace entcost::oracle {

namespace {

constexpr double kPartnerThreshold = 1e-8;
constexpr double kRangeSlack = 1e-8;

struct Split {
    std::vector<int> a;
    std::vector<int> b;
    Matrix rows_a;  // site rows of A in the full space
    Matrix rows_b;
};

Split split_modes(int modes, const std::vector<int> &subsystem_a) {
    Split s;
    std::vector<bool> in_a(modes, false);
    for (int m : subsystem_a) {
        if (m < 0 || m >= modes || in_a[m]) {
            fail(ErrorKind::Precondition, "subsystem modes must be distinct and in range");
        }
        in_a[m] = true;
        s.a.push_back(m);
    }
    for (int m = 0; m < modes; ++m) {
        if (!in_a[m]) s.b.push_back(m);
    }
    if (s.a.empty() || s.a.size() > s.b.size()) {
        fail(ErrorKind::Precondition,
             fmt::format("need 1 <= |A| <= |B|, got |A| = {}, |B| = {}", s.a.size(), s.b.size()));
    }
    auto rows = [modes](const std::vector<int> &sites) {
        Matrix r = Matrix::Zero(2 * sites.size(), 2 * modes);
        for (size_t i = 0; i < sites.size(); ++i) {
            r(2 * i, 2 * sites[i]) = 1.0;
            r(2 * i + 1, 2 * sites[i] + 1) = 1.0;
        }
        return r;
    };
    s.rows_a = rows(s.a);
    s.rows_b = rows(s.b);
    return s;
}

// Orthonormal rows spanning the null space of `constraints` (columns = coordinates).
Matrix null_space_rows(const Matrix &constraints, Eigen::Index dim) {
    if (constraints.rows() == 0) {
        return Matrix::Identity(dim, dim);
    }
    Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeFullV);
    const Eigen::Index rank = svd.rank();
    return svd.matrixV().rightCols(dim - rank).transpose();
}

}  // namespace

StandardForm standard_form_decompose(const boson::State &state, const std::vector<int> &subsystem_a) {
    const int modes = state.modes();
    const Split s = split_modes(modes, subsystem_a);
    const Eigen::Index na = static_cast<Eigen::Index>(s.a.size());
    const Matrix g_a = s.rows_a * state.G * s.rows_a.transpose();
    const Matrix omega_a = s.rows_a * state.omega * s.rows_a.transpose();
    const linalg::WilliamsonForm wf = linalg::williamson(g_a, omega_a);
    const Matrix a_rows = wf.transform * s.rows_a;

    StandardForm out;
    const Matrix jt = state.complex_structure().transpose();
    const Matrix project_b = s.rows_b.transpose() * s.rows_b;
    std::vector<Vector> partner_rows;
    for (Eigen::Index i = 0; i < na; ++i) {
        const double c = wf.values[i];
        if (c < 1.0 - kRangeSlack) {
            fail(ErrorKind::InvalidRestriction,
                 fmt::format("restricted symplectic eigenvalue {} below 1: state is not pure", c));
        }
        const double r = 0.5 * std::acosh(std::max(1.0, c));
        out.r_values.push_back(r);
        const double sh = std::sinh(2.0 * r);
        if (sh >= kPartnerThreshold) {
            const Vector x = a_rows.row(2 * i).transpose();
            const Vector k = a_rows.row(2 * i + 1).transpose();
            partner_rows.push_back(project_b * (jt * k) / sh);
            partner_rows.push_back(project_b * (jt * x) / sh);
        }
    }

    const Matrix omega_b = s.rows_b * state.omega * s.rows_b.transpose();
    const Eigen::Index dim_b = s.rows_b.rows();
    Matrix partners_b(partner_rows.size(), dim_b);
    for (size_t i = 0; i < partner_rows.size(); ++i) {
        partners_b.row(i) = (s.rows_b * partner_rows[i]).transpose();
    }
    const Matrix complement = null_space_rows(partners_b * omega_b, dim_b);
    Matrix complement_rows(0, dim_b);
    if (complement.rows() > 0) {
        const linalg::WilliamsonForm wc =
            linalg::williamson(complement * (s.rows_b * state.G * s.rows_b.transpose()) * complement.transpose(),
                               complement * omega_b * complement.transpose());
        complement_rows = wc.transform * complement;
    }

    out.basis.resize(2 * modes, 2 * modes);
    out.basis.topRows(2 * na) = a_rows;
    for (size_t i = 0; i < partner_rows.size(); ++i) {
        out.basis.row(2 * na + i) = partner_rows[i].transpose();
    }
    out.basis.bottomRows(complement_rows.rows()) = complement_rows * s.rows_b;
    return out;
}

StandardForm standard_form_decompose(const fermion::State &state, const std::vector<int> &subsystem_a) {
    const int modes = state.modes();
    const Eigen::Index dim = 2 * modes;
    if (detail::relative_error(state.g, Matrix::Identity(dim, dim)) > 1e-12) {
        fail(ErrorKind::Precondition, "fermionic decomposition expects the identity metric");
    }
    const Split s = split_modes(modes, subsystem_a);
    const Eigen::Index na = static_cast<Eigen::Index>(s.a.size());
    const Matrix omega_a = s.rows_a * state.omega * s.rows_a.transpose();
    const linalg::AntisymmetricNormalForm nf = linalg::antisymmetric_normal_form(omega_a);
    const Matrix a_rows = nf.basis.transpose() * s.rows_a;

    StandardForm out;
    const Matrix jt = state.complex_structure().transpose();
    const Matrix project_b = s.rows_b.transpose() * s.rows_b;
    std::vector<Vector> partner_rows;
    for (Eigen::Index i = 0; i < na; ++i) {
        const double c = nf.values[i];
        if (c > 1.0 + kRangeSlack) {
            fail(ErrorKind::InvalidRestriction,
                 fmt::format("restricted covariance value {} above 1: state is not pure", c));
        }
        const double r = 0.5 * std::acos(std::min(1.0, c));
        out.r_values.push_back(r);
        const double sn = std::sin(2.0 * r);
        if (sn >= kPartnerThreshold) {
            const Vector x = a_rows.row(2 * i).transpose();
            const Vector k = a_rows.row(2 * i + 1).transpose();
            partner_rows.push_back(project_b * (jt * k) / sn);
            partner_rows.push_back(project_b * (jt * x) / sn);
        }
    }

    const Eigen::Index dim_b = s.rows_b.rows();
    Matrix partners_b(partner_rows.size(), dim_b);
    for (size_t i = 0; i < partner_rows.size(); ++i) {
        partners_b.row(i) = (s.rows_b * partner_rows[i]).transpose();
    }
    const Matrix complement = null_space_rows(partners_b, dim_b);
    const Matrix omega_b = s.rows_b * state.omega * s.rows_b.transpose();
    Matrix complement_rows(0, dim_b);
    if (complement.rows() > 0) {
        const linalg::AntisymmetricNormalForm nc =
            linalg::antisymmetric_normal_form(complement * omega_b * complement.transpose());
        complement_rows = nc.basis.transpose() * complement;
    }

    out.basis.resize(dim, dim);
    out.basis.topRows(2 * na) = a_rows;
    for (size_t i = 0; i < partner_rows.size(); ++i) {
        out.basis.row(2 * na + i) = partner_rows[i].transpose();
    }
    out.basis.bottomRows(complement_rows.rows()) = complement_rows * s.rows_b;
    return out;
}

Matrix expected_standard_form(Statistics stats, const std::vector<double> &r_values, int modes) {
    const Eigen::Index na = static_cast<Eigen::Index>(r_values.size());
    if (2 * na > modes) {
        fail(ErrorKind::Precondition, "more subsystem modes than the complement can purify");
    }
    const bool bosonic = stats == Statistics::Boson;
    Matrix out = bosonic ? Matrix(Matrix::Identity(2 * modes, 2 * modes)) : linalg::standard_symplectic(modes);
    for (Eigen::Index i = 0; i < na; ++i) {
        const Eigen::Index a = 2 * i;
        const Eigen::Index b = 2 * (na + i);
        const double r = r_values[i];
        if (bosonic) {
            const double c = std::cosh(2.0 * r);
            const double sh = std::sinh(2.0 * r);
            out(a, a) = out(a + 1, a + 1) = out(b, b) = out(b + 1, b + 1) = c;
            out(a, b) = out(b, a) = sh;
            out(a + 1, b + 1) = out(b + 1, a + 1) = -sh;
        } else {
            const double c = std::cos(2.0 * r);
            const double sn = std::sin(2.0 * r);
            out(a, a + 1) = out(b, b + 1) = c;
            out(a + 1, a) = out(b + 1, b) = -c;
            out(a, b + 1) = out(a + 1, b) = sn;
            out(b + 1, a) = out(b, a + 1) = -sn;
        }
    }
    return out;
}

}  // namespace entcost::oracle
