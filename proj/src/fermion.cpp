#include "entcost/fermion.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "detail.hpp"
#include "entcost/errors.hpp"
#include "entcost/linalg.hpp"

namespace entcost::fermion {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

void check_hamiltonian(const Hamiltonian &H, const Matrix &g, const Tolerances &tol) {
    detail::require_even_dim(H.h, "Hamiltonian matrix");
    detail::require_same_dim(H.h, g, "Hamiltonian vs metric");
    if ((H.h + H.h.transpose()).norm() > tol.structural * std::max(1.0, H.h.norm())) {
        fail(ErrorKind::Precondition, "fermionic Hamiltonian matrix must be antisymmetric");
    }
}

double clamp_squeezing(double r) {
    if (!(r >= 0.0) || r > kQuarterPi + kSqueezingInputSlack) {
        fail(ErrorKind::InvalidSqueezing, fmt::format("squeezing r = {} outside [0, pi/4]", r));
    }
    return std::min(r, kQuarterPi);
}

void check_spectrum(double eps1, double eps2) {
    if (!(eps1 > 0.0) || !(eps2 >= eps1)) {
        fail(ErrorKind::InvalidSpectrum, fmt::format("need 0 < eps1 <= eps2, got {} and {}", eps1, eps2));
    }
}

// A vanishing one-mode Hamiltonian (no on-site term) leaves every pure state
// degenerate. The swap energy does not depend on which one is taken.
Matrix one_mode_ground(const Matrix &h, const Matrix &g) {
    const double orientation = h(0, 1) < 0.0 ? -1.0 : 1.0;
    Matrix omega(2, 2);
    omega << 0.0, orientation, -orientation, 0.0;
    return std::sqrt(g.determinant()) * omega;
}

}  // namespace

Matrix State::complex_structure() const { return omega * g.inverse(); }

State ground_state(const Hamiltonian &H, const Matrix &g, const Tolerances &tol) {
    check_hamiltonian(H, g, tol);
    const Matrix k = g * H.h;
    Eigen::FullPivLU<Matrix> lu(k);
    lu.setThreshold(tol.structural);
    if (!lu.isInvertible()) {
        fail(ErrorKind::GaplessHamiltonian, "Hamiltonian has a zero excitation energy");
    }
    // In metric-orthonormal coordinates the ground state is the orthogonal
    // normal form of h with every block scaled to unit value.
    const Eigen::LLT<Matrix> llt(g);
    if (llt.info() != Eigen::Success) {
        fail(ErrorKind::Precondition, "fermionic metric must be positive definite");
    }
    const Matrix lower = llt.matrixL();
    const auto form = linalg::antisymmetric_normal_form(lower.transpose() * H.h * lower, tol.structural);
    if (form.values.front() <= tol.structural * std::max(1.0, form.values.back())) {
        fail(ErrorKind::GaplessHamiltonian, "Hamiltonian has a zero excitation energy");
    }
    const Matrix frame = lower * form.basis;
    State state;
    state.omega = linalg::antisymmetric_part(
        frame * linalg::standard_symplectic(static_cast<int>(H.h.rows() / 2)) * frame.transpose());
    state.g = g;
    return state;
}

EnergyReport energy_observables(const State &state, const Hamiltonian &H) {
    detail::require_same_dim(H.h, state.omega, "Hamiltonian vs state");
    const Matrix hg = H.h * state.g;
    const Matrix ho = H.h * state.omega;
    EnergyReport report;
    report.energy = -0.25 * H.h.cwiseProduct(state.omega).sum();
    const double variance = -((hg * hg).trace() + (ho * ho).trace()) / 8.0;
    report.sigma = std::sqrt(std::max(0.0, variance));
    return report;
}

namespace {

Matrix restricted_complex_structure(const State &state, const std::vector<Mode> &modes) {
    const Matrix w = detail::mode_rows(modes, state.omega.rows());
    const Matrix g_a = w * state.g * w.transpose();
    Eigen::LLT<Matrix> llt(g_a);
    if (llt.info() != Eigen::Success || g_a.determinant() <= 1e-20) {
        fail(ErrorKind::InvalidRestriction, "modes are linearly dependent");
    }
    return (w * state.omega * w.transpose()) * g_a.inverse();
}

}  // namespace

double entanglement_entropy(const State &state, const std::vector<Mode> &modes) {
    const Matrix j_a = restricted_complex_structure(state, modes);
    double total = 0.0;
    for (double lambda : detail::paired_eigenvalues(j_a * j_a)) {
        total += linalg::fermion_mode_entropy(std::sqrt(std::clamp(-lambda, 0.0, 1.0)));
    }
    return total;
}

double entanglement_entropy_trace(const State &state, const std::vector<Mode> &modes) {
    return detail::trace_formula_entropy(restricted_complex_structure(state, modes), -1.0);
}

StandardMode standardize_mode(const State &state, const Mode &mode) {
    const Matrix &g = state.g;
    const double xx = mode.x.dot(g * mode.x);
    if (!(xx > 1e-24)) {
        fail(ErrorKind::DegenerateMode, "mode has a vanishing observable");
    }
    const Vector x = mode.x / std::sqrt(xx);
    Vector k = mode.k - x.dot(g * mode.k) * x;
    const double kk = k.dot(g * k);
    if (!(kk > 1e-24 * std::max(1.0, mode.k.dot(g * mode.k)))) {
        fail(ErrorKind::DegenerateMode, "mode observables are linearly dependent");
    }
    k /= std::sqrt(kk);
    double w = x.dot(state.omega * k);
    if (w < 0.0) {
        k = -k;
        w = -w;
    }
    return {{x, k}, 0.5 * std::acos(std::min(1.0, w))};
}

PartnerPair partner_mode(const State &state, const Mode &mode) {
    const StandardMode sm = standardize_mode(state, mode);
    const double c = std::cos(2.0 * sm.r);
    const double s = std::sin(2.0 * sm.r);
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

double restricted_form(const State &state, const Hamiltonian &H, const Vector &v, const Vector &w) {
    return (state.g * v).dot(H.h * (state.g * w));
}

TwoModeProblem restricted_problem(const State &state, const Hamiltonian &H, const PartnerPair &pair,
                                  const Tolerances &tol) {
    detail::require_same_dim(H.h, state.omega, "Hamiltonian vs state");
    const Matrix hv = state.g * H.h * state.g;
    const Matrix j = state.complex_structure();
    if ((j * hv * j.transpose() - hv).norm() > tol.oracle * std::max(1.0, hv.norm()) * std::max(1.0, j.squaredNorm())) {
        fail(ErrorKind::Precondition, "state is not the ground state of the Hamiltonian");
    }
    const Matrix b = pair.basis();
    if (detail::relative_error(b * state.g * b.transpose(), Matrix::Identity(4, 4)) > tol.oracle) {
        fail(ErrorKind::Precondition, "pair is not orthonormal");
    }

    const Vector &x = pair.mode.x;
    const Vector &k = pair.mode.k;
    const Matrix jt = j.transpose();
    const double c = std::cos(2.0 * pair.r);
    const double s = std::sin(2.0 * pair.r);
    const double cot = c / s;
    const double hxk = x.dot(hv * k);
    const double hx_jk = x.dot(hv * (jt * k));
    const double hx_jx = x.dot(hv * (jt * x));
    const double hk_jk = k.dot(hv * (jt * k));

    const double h_x_xbar = hx_jk / s;
    const double h_k_kbar = hx_jk / s;
    const double h_x_kbar = -cot * hxk + hx_jx / s;
    const double h_k_xbar = -cot * hxk + hk_jk / s;
    const double h_xbar_kbar = (cot / s) * (hx_jx + hk_jk) - (1.0 + 2.0 * cot * cot) * hxk;

    Eigen::Matrix4d hc = Eigen::Matrix4d::Zero();
    hc(0, 1) = hxk;
    hc(0, 2) = h_x_xbar;
    hc(0, 3) = h_x_kbar;
    hc(1, 2) = h_k_xbar;
    hc(1, 3) = h_k_kbar;
    hc(2, 3) = h_xbar_kbar;
    hc -= hc.transpose().eval();

    TwoModeProblem out;
    out.r = pair.r;
    out.h4 = hc;
    const double sum_a = h_xbar_kbar + hxk;
    const double sum_x = h_x_kbar + h_k_xbar;
    const double diff_a = h_xbar_kbar - hxk;
    const double diff_x = h_x_kbar - h_k_xbar;
    out.eps_plus = 0.5 * std::sqrt(sum_a * sum_a + sum_x * sum_x);
    out.eps_minus = std::sqrt(0.25 * (diff_a * diff_a + diff_x * diff_x) + h_x_xbar * h_x_xbar);
    out.eps1 = out.eps_plus - out.eps_minus;
    out.eps2 = out.eps_plus + out.eps_minus;
    if (!(out.eps1 > 0.0)) {
        fail(ErrorKind::NumericalInconsistency,
             fmt::format("restricted spectrum is not positive (eps1 = {:.6g})", out.eps1));
    }
    out.degenerate = out.eps_minus <= tol.degeneracy * out.eps_plus;
    if (!out.degenerate) {
        out.phi = std::atan2(2.0 * h_x_xbar, diff_x);
        out.theta = 0.5 * std::acos(std::clamp(diff_a / (2.0 * out.eps_minus), -1.0, 1.0));
    }
    return out;
}

ProductCosts product_state_costs(double eps1, double eps2, double r, double theta) {
    check_spectrum(eps1, eps2);
    r = clamp_squeezing(r);
    const double ep = 0.5 * (eps2 + eps1);
    const double em = 0.5 * (eps2 - eps1);
    const double c2r = std::cos(2.0 * r);
    const double c2t = std::cos(2.0 * theta);
    ProductCosts out;
    out.cost = {ep * (1.0 - c2r), ep - em * c2t, ep + em * c2t, ep * (1.0 + c2r)};
    const double lowest = *std::min_element(out.cost.begin(), out.cost.end());
    for (int i = 0; i < 4; ++i) {
        if (out.cost[i] <= lowest + 1e-12 * ep) {
            out.best = {i % 2, i / 2};
            break;
        }
    }
    return out;
}

CostReport extraction_cost(double eps1, double eps2, double r, std::optional<double> theta,
                           std::optional<double> omega_max, const Tolerances &tol) {
    check_spectrum(eps1, eps2);
    r = clamp_squeezing(r);
    const double c2r = std::cos(2.0 * r);
    const double threshold = (eps2 - eps1) / (eps2 + eps1);
    const double sin_r = std::sin(r);

    CostReport out;
    out.delta_S = linalg::fermion_mode_entropy(c2r);
    out.supercritical = c2r < threshold;
    if (out.supercritical) {
        out.delta_E_min = eps1;
        out.sigma_E = 0.0;
    } else {
        out.delta_E_min = (eps1 + eps2) * sin_r * sin_r;
        out.sigma_E = 0.5 * (eps1 + eps2) * std::sin(2.0 * r);
    }
    if (theta) {
        const ProductCosts costs = product_state_costs(eps1, eps2, r, *theta);
        out.delta_E_theta = *std::min_element(costs.cost.begin(), costs.cost.end());
    }
    if (omega_max) {
        if (*omega_max < eps2 * (1.0 - tol.structural)) {
            fail(ErrorKind::InvalidSpectrum, "largest excitation energy is below eps2");
        }
        out.delta_E_max = 2.0 * *omega_max * sin_r * sin_r;
    }
    return out;
}

OptimalityReport optimality_check(const TwoModeProblem &problem, const Tolerances &tol) {
    const ProductCosts costs = product_state_costs(problem.eps1, problem.eps2, problem.r, problem.theta);
    const CostReport report = extraction_cost(problem.eps1, problem.eps2, problem.r);
    OptimalityReport out;
    out.best_state = costs.best;
    out.delta_E_theta = *std::min_element(costs.cost.begin(), costs.cost.end());
    out.delta_E_min = report.delta_E_min;
    out.achieves_min = out.delta_E_theta <= out.delta_E_min + tol.structural * std::max(1.0, problem.eps_plus);
    return out;
}

Matrix squeeze_matrix(double r) {
    const double c = std::cos(r);
    const double s = std::sin(r);
    Matrix m(4, 4);
    m << c, 0, s, 0,
         0, c, 0, -s,
         -s, 0, c, 0,
         0, s, 0, c;
    return m;
}

SwapResult restricted_ground_swap(const State &state, const Hamiltonian &H, const PartnerPair &pair) {
    detail::require_same_dim(H.h, state.omega, "Hamiltonian vs state");
    const Matrix b = pair.basis();
    const Matrix g_b = b * state.g * b.transpose();
    const Matrix lift = state.g * b.transpose() * g_b.inverse();
    const Matrix h_pair = linalg::antisymmetric_part(lift.transpose() * H.h * lift);
    const Matrix omega_pair = b * state.omega * b.transpose();

    const Matrix omega_new = detail::block_diag(one_mode_ground(h_pair.topLeftCorner(2, 2), g_b.topLeftCorner(2, 2)),
                                                one_mode_ground(h_pair.bottomRightCorner(2, 2),
                                                                g_b.bottomRightCorner(2, 2)));
    const Matrix change = linalg::antisymmetric_part(lift * (omega_new - omega_pair) * lift.transpose());

    SwapResult out;
    out.state = state;
    out.state.omega = state.omega + change;
    out.delta_E = -0.25 * H.h.cwiseProduct(change).sum();
    out.restricted_h = h_pair;
    return out;
}

std::vector<double> excitation_spectrum(const State &state, const Hamiltonian &H) {
    detail::require_same_dim(H.h, state.omega, "Hamiltonian vs state");
    return detail::paired_eigenvalues(-state.omega * H.h);
}

}  // namespace entcost::fermion
