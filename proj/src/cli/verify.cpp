#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "entcost/boson.hpp"
#include "entcost/errors.hpp"
#include "entcost/fermion.hpp"
#include "entcost/linalg.hpp"
#include "entcost/models.hpp"
#include "entcost/oracle.hpp"
#include "internal.hpp"

namespace entcost::cli {

namespace {

using oracle::SeededSampler;

Mode site_mode(int modes, int site) {
    return {Vector::Unit(2 * modes, 2 * site), Vector::Unit(2 * modes, 2 * site + 1)};
}

// Largest deviation between Wick's theorem and direct operator products over
// every ordered 4-tuple of generator indices.
template <typename Correlator>
double wick_four_point_gap(const CMatrix &c2, Statistics stats, int dim, Correlator &&direct) {
    double worst = 0.0;
    std::vector<int> idx(4);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int c = 0; c < dim; ++c)
                for (int d = 0; d < dim; ++d) {
                    idx = {a, b, c, d};
                    worst = std::max(worst, std::abs(linalg::wick_npoint(c2, idx, stats) - direct(idx)));
                }
    return worst;
}

}  // namespace

Table run_verify(const VerifyOptions &opt, bool &all_passed) {
    if (opt.fermion_modes < 2 || opt.fermion_modes > oracle::FermionFock::kMaxModes) {
        fail(ErrorKind::Size, fmt::format("--modes must lie in 2..{}, got {}", oracle::FermionFock::kMaxModes,
                                          opt.fermion_modes));
    }
    if (opt.cutoff < 10 || opt.cutoff > oracle::BosonFock::kMaxCutoff) {
        fail(ErrorKind::Size,
             fmt::format("--cutoff must lie in 10..{}, got {}", oracle::BosonFock::kMaxCutoff, opt.cutoff));
    }
    if (opt.instances < 1) {
        fail(ErrorKind::Precondition, "--instances must be positive");
    }

    Table table;
    table.columns = {"check", "margin", "tolerance", "passed"};
    all_passed = true;
    auto record = [&](const std::string &name, double margin, double tol) {
        const bool ok = margin <= tol;
        all_passed = all_passed && ok;
        table.add({name, margin, tol, ok});
    };

    SeededSampler sampler(opt.seed);
    const int n = opt.fermion_modes;
    const Matrix id = Matrix::Identity(2 * n, 2 * n);

    double energy_gap = 0.0, cov_gap = 0.0, site_gap = 0.0, pair_gap = 0.0, swap_gap = 0.0;
    for (int i = 0; i < opt.instances; ++i) {
        const fermion::Hamiltonian H = oracle::random_fermion_hamiltonian(n, sampler);
        const fermion::State state = fermion::ground_state(H, id);
        const oracle::FockOracleResult exact = oracle::fermion_fock_oracle(H);
        const oracle::FermionFock fock(n);
        energy_gap = std::max(energy_gap, std::abs(fermion::energy_observables(state, H).energy - exact.energies[0]));
        cov_gap = std::max(cov_gap, (state.omega - exact.covariance).cwiseAbs().maxCoeff());
        for (int j = 0; j < n; ++j) {
            site_gap = std::max(site_gap, std::abs(fermion::entanglement_entropy(state, {site_mode(n, j)}) -
                                                   exact.mode_entropies[j]));
        }
        if (n >= 3) {
            const double s = fermion::entanglement_entropy(state, {site_mode(n, 0), site_mode(n, 1)});
            pair_gap = std::max(pair_gap, std::abs(s - fock.reduced_entropy(exact.ground, {0, 1})));
        }
        const StandardMode sm = fermion::standardize_mode(state, oracle::haar_random_mode(id, sampler));
        const PartnerPair pair = fermion::partner_mode(state, sm.mode);
        const fermion::SwapResult swap = fermion::restricted_ground_swap(state, H, pair);
        const CVector swapped = fock.gaussian_vector(swap.state.omega);
        const double direct = fock.expectation(fock.hamiltonian(H), swapped) - exact.energies[0];
        swap_gap = std::max(swap_gap, std::abs(swap.delta_E - direct));
    }
    record("fermion ground energy vs exact diagonalization", energy_gap, 1e-8);
    record("fermion ground covariance vs exact diagonalization", cov_gap, 1e-8);
    record("fermion single-site entropy vs exact diagonalization", site_gap, 1e-8);
    if (n >= 3) {
        record("fermion two-site entropy vs exact diagonalization", pair_gap, 1e-8);
    }
    record("fermion swap cost vs exact diagonalization", swap_gap, 1e-8);

    {
        const fermion::Hamiltonian H = oracle::random_fermion_hamiltonian(2, sampler);
        const fermion::State state = fermion::ground_state(H, Matrix::Identity(4, 4));
        const oracle::FermionFock fock(2);
        const CVector psi = oracle::fermion_fock_oracle(H).ground;
        const CMatrix c2 = 0.5 * (Matrix::Identity(4, 4).cast<Complex>() + Complex(0, 1) * state.omega.cast<Complex>());
        const Statistics stats = opt.inject_wick_parity_fault ? Statistics::Boson : Statistics::Fermion;
        const double gap = wick_four_point_gap(c2, stats, 4, [&](const std::vector<int> &idx) {
            return fock.correlator(psi, idx);
        });
        record("fermion Wick 4-point functions vs operator products", gap, 1e-10);
    }

    {
        const boson::Hamiltonian H = oracle::random_boson_hamiltonian(2, sampler);
        const boson::State state = boson::ground_state(H, linalg::standard_symplectic(2));
        const oracle::FockOracleResult exact = oracle::boson_fock_oracle(H, opt.cutoff, 1e-6);
        record("boson ground energy vs truncated Fock space",
               std::abs(boson::energy_observables(state, H).energy - exact.energies[0]), 1e-6);
        record("boson ground covariance vs truncated Fock space",
               (state.G - exact.covariance).cwiseAbs().maxCoeff(), 1e-6);
        record("boson mode entropy vs truncated Fock space",
               std::abs(boson::entanglement_entropy(state, {site_mode(2, 0)}) - exact.mode_entropies[0]), 1e-6);

        const oracle::BosonFock fock(2, opt.cutoff);
        const CMatrix c2 = 0.5 * (state.G.cast<Complex>() + Complex(0, 1) * state.omega.cast<Complex>());
        const double gap = wick_four_point_gap(c2, Statistics::Boson, 4, [&](const std::vector<int> &idx) {
            return fock.correlator(exact.ground, idx);
        });
        record("boson Wick 4-point functions vs operator products", gap, 1e-6);
    }

    {
        // Degenerate pair whose ground state is a two-mode squeezed vacuum.
        const double eps = 0.5 + sampler.uniform();
        const double r = 0.5;
        const Matrix m = boson::squeeze_matrix(r);
        const boson::Hamiltonian H{eps * (m * m.transpose()).inverse(), Vector()};
        const boson::State state = boson::ground_state(H, linalg::standard_symplectic(2));
        const PartnerPair pair = boson::partner_mode(state, site_mode(2, 0));
        const double gaussian = boson::restricted_ground_swap(state, H, pair).delta_E;
        const double formula = 2.0 * eps * std::sinh(r) * std::sinh(r);

        const oracle::BosonFock fock(2, opt.cutoff);
        const auto full = fock.hamiltonian(H);
        boson::Hamiltonian local = H;
        local.h.topRightCorner(2, 2).setZero();
        local.h.bottomLeftCorner(2, 2).setZero();
        const double e0 = oracle::lanczos_lowest(full).values.at(0);
        const CVector product = oracle::lanczos_lowest(fock.hamiltonian(local)).ground;
        const double direct = fock.expectation(full, product) - e0;
        record("boson degenerate swap cost: covariance swap vs formula", std::abs(gaussian - formula), 1e-10);
        record("boson degenerate swap cost: truncated Fock space vs formula", std::abs(direct - formula), 1e-4);
    }

    {
        const models::XYSpec spec{6, 1.0, 0.37, 0.61};
        const models::XYGroundStructures gs = models::xy_ground_structures(spec);
        const fermion::Hamiltonian H{gs.h_check};
        const fermion::State state = fermion::ground_state(H, Matrix::Identity(12, 12));
        const oracle::FockOracleResult exact = oracle::fermion_fock_oracle(H);
        record("XY momentum-space complex structure vs ground state",
               (gs.complex_structure - state.omega).cwiseAbs().maxCoeff(), 1e-8);
        record("XY closed-form covariance vs ground state", (gs.omega - state.omega).cwiseAbs().maxCoeff(), 1e-8);
        double gap = 0.0;
        for (int j = 0; j < spec.sites; ++j) {
            gap = std::max(gap, std::abs(fermion::entanglement_entropy(state, {site_mode(6, j)}) -
                                         exact.mode_entropies[j]));
        }
        record("XY single-site entropy vs exact diagonalization", gap, 1e-8);
    }
    return table;
}

}  // namespace entcost::cli
