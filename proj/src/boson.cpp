#include "entcost/boson.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "entcost/errors.hpp"
#include "entcost/linalg.hpp"

namespace entcost::boson {

namespace {

Vector linear_term(const Hamiltonian &H) {
    if (H.f.size() == 0) {
        return Vector::Zero(H.h.rows());
    }
    if (H.f.size() != H.h.rows()) {
        fail(ErrorKind::Size, "linear term has wrong dimension");
    }
    return H.f;
}

void check_hamiltonian(const Hamiltonian &H, const Matrix &omega, const Tolerances &tol) {
    detail::require_even_dim(H.h, "Hamiltonian matrix");
    detail::require_same_dim(H.h, omega, "Hamiltonian vs commutator form");
    if ((H.h - H.h.transpose()).norm() > tol.structural * std::max(1.0, H.h.norm())) {
        fail(ErrorKind::Precondition, "bosonic Hamiltonian matrix must be symmetric");
    }
}

double cosh2(double r) { return std::cosh(2.0 * r); }
double sinh2(double r) { return std::sinh(2.0 * r); }

}  // namespace

Matrix State::complex_structure() const { return -G * omega.inverse(); }

State ground_state(const Hamiltonian &H, const Matrix &omega, const Tolerances &tol) {
    check_hamiltonian(H, omega, tol);
    const Vector f = linear_term(H);
    Eigen::SelfAdjointEigenSolver<Matrix> es(H.h, Eigen::EigenvaluesOnly);
    const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() <= tol.structural * top) {
        fail(ErrorKind::UnboundedHamiltonian,
             fmt::format("Hamiltonian matrix is not positive definite (smallest eigenvalue {:.3g})",
                         es.eigenvalues().minCoeff()));
    }
    const Matrix k = omega * H.h;
    const Matrix k_inv = k.partialPivLu().inverse();
    State state;
    state.G = linalg::symmetric_part(-k * linalg::abs_eigen_map(k_inv, tol) * omega);
    state.z = -H.h.ldlt().solve(f);
    state.omega = omega;
    return state;
}

EnergyReport energy_observables(const State &state, const Hamiltonian &H) {
    detail::require_same_dim(H.h, state.G, "Hamiltonian vs state");
    const Vector f = linear_term(H);
    const Vector z = state.z.size() == 0 ? Vector::Zero(state.G.rows()) : state.z;
    const Matrix &h = H.h;
    const Matrix hg = h * state.G;
    const Matrix ho = h * state.omega;
    const Vector force = h * z + f;
    EnergyReport report;
    report.energy = 0.25 * hg.trace() + 0.5 * z.dot(h * z) + f.dot(z);
    const double variance = ((hg * hg).trace() + (ho * ho).trace()) / 8.0 + 0.5 * force.dot(state.G * force);
    report.sigma = std::sqrt(std::max(0.0, variance));
    return report;
}

namespace {

Matrix restricted_complex_structure(const State &state, const std::vector<Mode> &modes) {
    const Matrix w = detail::mode_rows(modes, state.G.rows());
    const Matrix g_a = w * state.G * w.transpose();
    const Matrix omega_a = w * state.omega * w.transpose();
    Eigen::FullPivLU<Matrix> lu(omega_a);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) {
        fail(ErrorKind::InvalidRestriction, "modes do not span a symplectic subspace");
    }
    return -g_a * lu.inverse();
}

}  // namespace

double entanglement_entropy(const State &state, const std::vector<Mode> &modes) {
    const Matrix j_a = restricted_complex_structure(state, modes);
    double total = 0.0;
    for (double lambda : detail::paired_eigenvalues(j_a * j_a)) {
        total += linalg::boson_mode_entropy(std::sqrt(std::max(1.0, -lambda)));
    }
    return total;
}

double entanglement_entropy_trace(const State &state, const std::vector<Mode> &modes) {
    return detail::trace_formula_entropy(restricted_complex_structure(state, modes), 1.0);
}

StandardMode standardize_mode(const State &state, const Mode &mode) {
    const Matrix &omega = state.omega;
    const Matrix &g = state.G;
    const double w = mode.x.dot(omega * mode.k);
    if (std::abs(w) <= 1e-12 * std::max(1.0, mode.x.norm() * mode.k.norm() * omega.norm())) {
        fail(ErrorKind::DegenerateMode, "mode observables commute; they do not define a mode");
    }
    const Vector x = mode.x;
    const Vector k = mode.k / w;
    Eigen::Matrix2d g2;
    g2 << x.dot(g * x), x.dot(g * k), x.dot(g * k), k.dot(g * k);
    const double c = std::sqrt(std::max(1.0, g2.determinant()));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g2);
    const Eigen::Matrix2d s = std::sqrt(c) * es.operatorInverseSqrt();
    StandardMode out;
    out.mode.x = s(0, 0) * x + s(0, 1) * k;
    out.mode.k = s(1, 0) * x + s(1, 1) * k;
    out.r = 0.5 * std::acosh(c);
    return out;
}

PartnerPair partner_mode(const State &state, const Mode &mode) {
    const StandardMode sm = standardize_mode(state, mode);
    const double c = cosh2(sm.r);
    const double s = sinh2(sm.r);
    if (s < 1e-8) {
        fail(ErrorKind::NoPartner, "mode is pure; it has no partner");
    }
    const Matrix jt = state.complex_structure().transpose();
    const Vector &x = sm.mode.x;
    const Vector &k = sm.mode.k;
    PartnerPair pair;
    pair.mode = sm.mode;
    pair.partner.x = (c * x + jt * k) / s;
    pair.partner.k = (-c * k + jt * x) / s;
    pair.r = sm.r;
    return pair;
}

Matrix unsqueeze(const State &state, const PartnerPair &pair) {
    const Matrix jt = state.complex_structure().transpose();
    const Vector &x = pair.mode.x;
    const Vector &k = pair.mode.k;
    const double ch = 2.0 * std::cosh(pair.r);
    const double sh = 2.0 * std::sinh(pair.r);
    Matrix rows(4, x.size());
    rows.row(0) = ((x - jt * k) / ch).transpose();
    rows.row(1) = ((k + jt * x) / ch).transpose();
    rows.row(2) = ((x + jt * k) / sh).transpose();
    rows.row(3) = ((-k + jt * x) / sh).transpose();
    return rows;
}

double restricted_form(const State &state, const Hamiltonian &H, const Vector &w, const Vector &u) {
    return (state.omega * w).dot(H.h * (state.omega * u));
}

TwoModeProblem restricted_problem(const State &state, const Hamiltonian &H, const PartnerPair &pair,
                                  const Tolerances &tol) {
    detail::require_same_dim(H.h, state.G, "Hamiltonian vs state");
    const Matrix hv = state.omega.transpose() * H.h * state.omega;
    const Matrix j = state.complex_structure();
    if ((j * hv * j.transpose() - hv).norm() > tol.oracle * std::max(1.0, hv.norm()) * std::max(1.0, j.squaredNorm())) {
        fail(ErrorKind::Precondition, "state is not the ground state of the Hamiltonian");
    }
    const Matrix b = pair.basis();
    if (detail::relative_error(b * state.omega * b.transpose(), linalg::standard_symplectic(2)) > tol.oracle) {
        fail(ErrorKind::Precondition, "pair is not in standard form");
    }

    const Vector &x = pair.mode.x;
    const Vector &k = pair.mode.k;
    const double c = cosh2(pair.r);
    const double s = sinh2(pair.r);
    const double hxx = x.dot(hv * x);
    const double hkk = k.dot(hv * k);
    const double hxk = x.dot(hv * k);
    const double hx_jk = x.dot(hv * (j.transpose() * k));
    const double delta = (hxx + hkk + 2.0 * c * hx_jk) / (s * s);

    Eigen::Matrix4d hc;
    hc(0, 0) = hxx;
    hc(1, 1) = hkk;
    hc(0, 1) = hxk;
    hc(2, 2) = hxx + delta;
    hc(3, 3) = hkk + delta;
    hc(2, 3) = -hxk;
    hc(0, 2) = (c * hxx + hx_jk) / s;
    hc(1, 3) = -(c * hkk + hx_jk) / s;
    hc(0, 3) = -(c / s) * hxk;
    hc(1, 2) = (c / s) * hxk;
    for (int a = 0; a < 4; ++a) {
        for (int bb = 0; bb < a; ++bb) {
            hc(a, bb) = hc(bb, a);
        }
    }
    const Matrix omega4 = linalg::standard_symplectic(2);

    TwoModeProblem out;
    out.r = pair.r;
    out.h4 = omega4 * hc * omega4.transpose();
    out.delta = delta;
    out.eps_plus = (hxx + hkk + delta) / (2.0 * c);
    out.eps_minus = std::sqrt((4.0 * hxk * hxk + (hxx - hkk) * (hxx - hkk)) / (4.0 * s * s) + 0.25 * delta * delta);
    out.eps1 = out.eps_plus - out.eps_minus;
    out.eps2 = out.eps_plus + out.eps_minus;
    if (!(out.eps1 > 0.0)) {
        fail(ErrorKind::NumericalInconsistency,
             fmt::format("restricted spectrum is not positive (eps1 = {:.6g})", out.eps1));
    }
    out.degenerate = out.eps_minus <= tol.degeneracy * out.eps_plus;
    if (!out.degenerate) {
        out.phi = std::atan2(2.0 * hxk, hxx - hkk);
        out.theta = 0.5 * std::acos(std::clamp(delta / (2.0 * out.eps_minus), -1.0, 1.0));
    }
    return out;
}

CostReport extraction_cost(double eps1, double eps2, double r, std::optional<double> theta,
                           std::optional<double> omega_max, const Tolerances &tol) {
    if (!(eps1 > 0.0) || !(eps2 >= eps1)) {
        fail(ErrorKind::InvalidSpectrum, fmt::format("need 0 < eps1 <= eps2, got {} and {}", eps1, eps2));
    }
    if (!(r >= 0.0) || !std::isfinite(r)) {
        fail(ErrorKind::InvalidSqueezing, fmt::format("squeezing r = {} must be nonnegative", r));
    }
    const double c = cosh2(r);
    const double s = sinh2(r);
    const double sum = eps1 + eps2;
    const bool degenerate = (eps2 - eps1) < tol.degeneracy * sum;

    CostReport out;
    out.delta_S = linalg::boson_mode_entropy(c);
    if (degenerate) {
        const double eps = 0.5 * sum;
        out.delta_E_min = 2.0 * eps * std::sinh(r) * std::sinh(r);
        out.sigma_E = eps * s;
    } else {
        // sqrt(eps1^2 + eps2^2 + 2 eps1 eps2 cosh 4r) - eps1 - eps2, without the cancellation.
        const double extra = 4.0 * eps1 * eps2 * s * s;
        const double root = std::sqrt(sum * sum + extra);
        out.delta_E_min = 0.5 * extra / (root + sum);
        out.sigma_E = 2.0 * eps1 * eps2 * c * s / root;
    }
    if (theta) {
        const double ep = 0.5 * (eps2 + eps1);
        const double em = 0.5 * (eps2 - eps1);
        const double c4t = std::cos(4.0 * *theta);
        const double c2t = std::cos(2.0 * *theta);
        const double c4r = std::cosh(4.0 * r);
        const double common = 4.0 * ep * ep * c * c + em * em * (3.0 + c4t - (1.0 - c4t) * c4r);
        const double cross = 8.0 * ep * em * c2t * c;
        const double eps_a = 0.5 * std::sqrt(std::max(0.0, common - cross));
        const double eps_abar = 0.5 * std::sqrt(std::max(0.0, common + cross));
        out.delta_E_theta = 0.5 * (eps_a + eps_abar - eps1 - eps2);
    }
    if (omega_max) {
        if (*omega_max < eps2 * (1.0 - tol.structural)) {
            fail(ErrorKind::InvalidSpectrum, "largest excitation energy is below eps2");
        }
        out.delta_E_max = 2.0 * *omega_max * std::sinh(r) * std::sinh(r);
    }
    return out;
}

Matrix squeeze_matrix(double r) {
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    Matrix m(4, 4);
    m << ch, 0, sh, 0,
         0, ch, 0, -sh,
         sh, 0, ch, 0,
         0, -sh, 0, ch;
    return m;
}

PartnerPair optimal_correction(const TwoModeProblem &problem, const PartnerPair &pair) {
    if (problem.degenerate) {
        return pair;
    }
    const Matrix rotation =
        linalg::matrix_exp((std::numbers::pi / 4.0 - problem.theta) * linalg::passive_generator(problem.phi));
    const Matrix correction = squeeze_matrix(pair.r) * rotation * squeeze_matrix(-pair.r);
    const Matrix rows = correction * pair.basis();
    PartnerPair out;
    out.mode = {rows.row(0).transpose(), rows.row(1).transpose()};
    out.partner = {rows.row(2).transpose(), rows.row(3).transpose()};
    out.r = pair.r;
    return out;
}

SwapResult restricted_ground_swap(const State &state, const Hamiltonian &H, const PartnerPair &pair) {
    detail::require_same_dim(H.h, state.G, "Hamiltonian vs state");
    const Matrix b = pair.basis();
    const Matrix omega_b = b * state.omega * b.transpose();
    const Matrix lift = state.omega * b.transpose() * omega_b.inverse();
    const Matrix h_pair = linalg::symmetric_part(lift.transpose() * H.h * lift);
    const Matrix g_pair = b * state.G * b.transpose();

    const State ground_a = ground_state({h_pair.topLeftCorner(2, 2), {}}, omega_b.topLeftCorner(2, 2));
    const State ground_abar = ground_state({h_pair.bottomRightCorner(2, 2), {}}, omega_b.bottomRightCorner(2, 2));
    const Matrix g_new = detail::block_diag(ground_a.G, ground_abar.G);
    const Matrix change = linalg::symmetric_part(lift * (g_new - g_pair) * lift.transpose());

    SwapResult out;
    out.state = state;
    out.state.G = state.G + change;
    out.delta_E = 0.25 * H.h.cwiseProduct(change).sum();
    out.restricted_h = h_pair;
    return out;
}

std::vector<double> excitation_spectrum(const State &state, const Hamiltonian &H) {
    detail::require_same_dim(H.h, state.G, "Hamiltonian vs state");
    return detail::paired_eigenvalues(state.G * H.h);
}

}  // namespace entcost::boson
