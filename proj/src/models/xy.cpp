#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "entcost/errors.hpp"
#include "entcost/linalg.hpp"
#include "entcost/models.hpp"

namespace entcost::models {

namespace {

void validate(const XYSpec &spec) {
    if (spec.sites < 2) {
        fail(ErrorKind::Size, fmt::format("XY chain needs at least 2 sites, got {}", spec.sites));
    }
    if (!std::isfinite(spec.coupling) || !std::isfinite(spec.field) || !std::isfinite(spec.anisotropy)) {
        fail(ErrorKind::Precondition, "XY couplings must be finite");
    }
}

std::vector<double> momenta(int sites) {
    std::vector<double> k(sites);
    for (int i = 0; i < sites; ++i) {
        k[i] = 2.0 * std::numbers::pi * i / sites;
    }
    return k;
}

void require_gapped(const XYSpec &spec) {
    const XYDispersion d = xy_dispersion(spec);
    const double gap = *std::min_element(d.eps.begin(), d.eps.end());
    if (gap <= 1e-9 * std::max(1.0, d.eps_max)) {
        fail(ErrorKind::GaplessHamiltonian,
             fmt::format("XY chain (h = {}, gamma = {}) has a zero mode", spec.field, spec.anisotropy));
    }
}

}  // namespace

double xy_energy(const XYSpec &spec, double kappa) {
    const double j = spec.coupling;
    const double h = spec.field;
    const double g = spec.anisotropy;
    const double s = std::sin(kappa);
    const double radicand = h * h + 2.0 * h * j * std::cos(kappa) + j * j + (g * g - 1.0) * j * j * s * s;
    if (radicand < -1e-12 * std::max(1.0, j * j + h * h)) {
        fail(ErrorKind::Precondition, fmt::format("negative dispersion radicand {} at kappa = {}", radicand, kappa));
    }
    return std::sqrt(std::max(0.0, radicand));
}

XYDispersion xy_dispersion(const XYSpec &spec) {
    validate(spec);
    XYDispersion out;
    out.kappa = momenta(spec.sites);
    for (double k : out.kappa) {
        out.eps.push_back(xy_energy(spec, k));
    }
    const double j = spec.coupling;
    const double h = spec.field;
    const double g2 = spec.anisotropy * spec.anisotropy;
    out.interior_minimum = g2 < 1.0 && j != 0.0 && std::abs(h) <= std::abs(j * (g2 - 1.0));
    if (out.interior_minimum) {
        out.eps_min = std::sqrt(std::max(0.0, g2 * (j * j + h * h / (g2 - 1.0))));
    } else {
        out.eps_min = std::min(xy_energy(spec, 0.0), xy_energy(spec, std::numbers::pi));
    }
    out.eps_max = std::sqrt(std::max(0.0, j * j + h * h + 2.0 * h * j));
    return out;
}

std::pair<Complex, Complex> xy_bogoliubov(const XYSpec &spec, double kappa) {
    const double a = -spec.coupling * std::cos(kappa) - spec.field;
    const double b = spec.anisotropy * spec.coupling * std::sin(kappa);
    const double e = xy_energy(spec, kappa);
    // e^2 = a^2 + b^2, so for a < 0 the sum e + a is b^2 / (e - a) without cancellation.
    const double e_plus_a = a >= 0.0 ? e + a : (e - a > 0.0 ? b * b / (e - a) : 0.0);
    if (e_plus_a <= 1e-12 * std::max(1.0, e)) {
        // Limit of the normalized coefficients as eps + a -> 0.
        return {Complex(0.0, 0.0), Complex(0.0, b >= 0.0 ? 1.0 : -1.0)};
    }
    const double norm = std::sqrt(2.0 * e * e_plus_a);
    return {Complex(e_plus_a / norm, 0.0), Complex(0.0, b / norm)};
}

fermion::Hamiltonian xy_hamiltonian(const XYSpec &spec) {
    validate(spec);
    const int n = spec.sites;
    const double forward = 0.5 * spec.coupling * (1.0 + spec.anisotropy);
    const double backward = 0.5 * spec.coupling * (1.0 - spec.anisotropy);
    Matrix h = Matrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const int next = (j + 1) % n;
        const int prev = (j + n - 1) % n;
        h(2 * j, 2 * j + 1) += spec.field;
        h(2 * j, 2 * next + 1) += forward;
        h(2 * j, 2 * prev + 1) += backward;
    }
    return {h - h.transpose()};
}

XYGroundStructures xy_ground_structures(const XYSpec &spec) {
    validate(spec);
    require_gapped(spec);
    const int n = spec.sites;
    const std::vector<double> ks = momenta(n);
    const Complex i_unit(0.0, 1.0);

    // Complex structure in the basis (f_1^dag, ..., f_N^dag, f_1, ..., f_N).
    CMatrix local = CMatrix::Zero(2 * n, 2 * n);
    for (double k : ks) {
        const auto [u, v] = xy_bogoliubov(spec, k);
        const double uu = std::norm(u);
        const double vv = std::norm(v);
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                const Complex fwd = std::exp(i_unit * k * static_cast<double>(j - l));
                const Complex bwd = std::exp(i_unit * k * static_cast<double>(l - j));
                local(j, l) += uu * fwd - vv * bwd;
                local(j, n + l) += std::conj(u) * std::conj(v) * (bwd - fwd);
                local(n + j, l) += u * v * (bwd - fwd);
                local(n + j, n + l) += -uu * bwd + vv * fwd;
            }
        }
    }
    local *= -i_unit / static_cast<double>(n);

    // q_j = (f_j^dag + f_j)/sqrt2, p_j = i (f_j^dag - f_j)/sqrt2, then interleave.
    const Matrix id = Matrix::Identity(n, n);
    CMatrix w(2 * n, 2 * n);
    w << id.cast<Complex>(), id.cast<Complex>(), i_unit * id, -i_unit * id;
    w /= std::numbers::sqrt2;
    CMatrix hermitian = w * local * w.inverse();
    Matrix interleave = Matrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        interleave(2 * j, j) = 1.0;
        interleave(2 * j + 1, n + j) = 1.0;
    }
    hermitian = interleave.cast<Complex>() * hermitian * interleave.transpose().cast<Complex>();
    if (hermitian.imag().cwiseAbs().maxCoeff() > 1e-10) {
        fail(ErrorKind::NumericalInconsistency, "rotated complex structure is not real");
    }

    XYGroundStructures out;
    out.complex_structure = hermitian.real();
    out.omega = Matrix::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            double sum = 0.0;
            for (double k : ks) {
                const auto [u, v] = xy_bogoliubov(spec, k);
                const double d = k * static_cast<double>(j - l);
                sum += (std::norm(v) - std::norm(u)) * std::cos(d) - 2.0 * (u * v).imag() * std::sin(d);
            }
            out.omega(2 * j, 2 * l + 1) = sum / n;
            out.omega(2 * l + 1, 2 * j) = -sum / n;
        }
    }
    out.h_check = xy_hamiltonian(spec).h;
    return out;
}

SiteReport xy_single_site(const XYSpec &spec, int site) {
    validate(spec);
    require_gapped(spec);
    if (site < 0 || site >= spec.sites) {
        fail(ErrorKind::Precondition, fmt::format("site {} outside the chain", site));
    }
    const int n = spec.sites;
    const fermion::Hamiltonian H = xy_hamiltonian(spec);
    const fermion::State state = fermion::ground_state(H, Matrix::Identity(2 * n, 2 * n));
    const std::vector<double> spectrum = fermion::excitation_spectrum(state, H);

    Mode mode{Vector::Unit(2 * n, 2 * site), Vector::Unit(2 * n, 2 * site + 1)};
    const StandardMode sm = fermion::standardize_mode(state, mode);
    SiteReport out;
    out.site = site;
    out.r = sm.r;
    out.delta_S = linalg::fermion_mode_entropy(std::cos(2.0 * sm.r));
    const double sin_r = std::sin(sm.r);
    out.bound_lower = fermion::extraction_cost(spectrum[0], spectrum[1], sm.r).delta_E_min;
    out.bound_upper = 2.0 * spectrum.back() * sin_r * sin_r;
    if (std::sin(2.0 * sm.r) < 1e-8) {
        return out;
    }
    const PartnerPair pair = fermion::partner_mode(state, sm.mode);
    const TwoModeProblem problem = fermion::restricted_problem(state, H, pair);
    const fermion::SwapResult swap = fermion::restricted_ground_swap(state, H, pair);
    out.has_partner = true;
    out.pair = pair;
    out.eps1 = problem.eps1;
    out.eps2 = problem.eps2;
    out.delta_E = swap.delta_E;
    out.within_bounds = out.delta_E >= out.bound_lower - 1e-9 && out.delta_E <= out.bound_upper + 1e-9;
    return out;
}

std::vector<SiteReport> xy_single_site_scan(const XYSpec &spec) {
    std::vector<SiteReport> out;
    for (int j = 0; j < spec.sites; ++j) {
        out.push_back(xy_single_site(spec, j));
    }
    return out;
}

double xy_fixed_gap_field(double eps_min, double gamma, double sign) {
    if (!(eps_min > 0.0 && eps_min <= 1.0)) {
        fail(ErrorKind::Precondition, fmt::format("eps_min must lie in (0, 1], got {}", eps_min));
    }
    if (!(gamma > 0.0) || gamma > 1.0 || gamma < eps_min) {
        fail(ErrorKind::Precondition,
             fmt::format("anisotropy {} outside [eps_min, 1] = [{}, 1]", gamma, eps_min));
    }
    const double g2 = gamma * gamma;
    const double product = std::max(0.0, (1.0 - g2) * (g2 - eps_min * eps_min));
    return (sign < 0.0 ? -1.0 : 1.0) * std::sqrt(product) / gamma;
}

FixedGapPath xy_fixed_gap_path(double eps_min, const std::vector<double> &gamma_grid, double sign, double tol) {
    FixedGapPath out;
    for (double g : gamma_grid) {
        if (!(g > 0.0) || g > 1.0 || g < eps_min) {
            out.skipped.emplace_back(g, "anisotropy outside [eps_min, 1]");
            continue;
        }
        const double h = xy_fixed_gap_field(eps_min, g, sign);
        const XYDispersion d = xy_dispersion({2, 1.0, h, g});
        if (std::abs(d.eps_min - eps_min) > tol) {
            out.skipped.emplace_back(
                g, fmt::format("band minimum {:.10g} differs from the target; gamma^2 > eps_min", d.eps_min));
            continue;
        }
        out.points.push_back({g, h});
    }
    return out;
}

}  // namespace entcost::models
