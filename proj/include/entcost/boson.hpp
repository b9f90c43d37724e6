#pragma once

#include <optional>
#include <vector>

#include "entcost/types.hpp"

namespace entcost::boson {

// H = 1/2 h_ab xi^a xi^b + f_a xi^a with [xi^a, xi^b] = i omega^ab.
struct Hamiltonian {
    Matrix h;
    Vector f;  // empty means no linear term
};

struct State {
    Matrix G;      // symmetric covariance <xi xi + xi xi> - 2 z z
    Vector z;      // displacement <xi>
    Matrix omega;  // commutator form

    int modes() const { return static_cast<int>(G.rows() / 2); }
    // J = -G omega^{-1}
    Matrix complex_structure() const;
};

State ground_state(const Hamiltonian &H, const Matrix &omega, const Tolerances &tol = {});

struct EnergyReport {
    double energy = 0.0;
    double sigma = 0.0;
};
EnergyReport energy_observables(const State &state, const Hamiltonian &H);

// Entanglement entropy (bits) of the subsystem spanned by `modes`, from the
// spectrum of the restricted complex structure.
double entanglement_entropy(const State &state, const std::vector<Mode> &modes);
// Same quantity from the trace formula Tr[(1+iJ_A)/2 log|(1+iJ_A)/2|].
double entanglement_entropy_trace(const State &state, const std::vector<Mode> &modes);

StandardMode standardize_mode(const State &state, const Mode &mode);
// Standardizes `mode` and constructs its purifying partner.
PartnerPair partner_mode(const State &state, const Mode &mode);
// Rows (y, l, z, m): the two unsqueezed modes with M_r (y,l,z,m) = (x,k,xbar,kbar).
Matrix unsqueeze(const State &state, const PartnerPair &pair);

// hv(w, u) = h_ab omega^ac omega^bd w_c u_d
double restricted_form(const State &state, const Hamiltonian &H, const Vector &w, const Vector &u);
TwoModeProblem restricted_problem(const State &state, const Hamiltonian &H, const PartnerPair &pair,
                                  const Tolerances &tol = {});

struct CostReport {
    double delta_S = 0.0;
    double delta_E_min = 0.0;
    double sigma_E = 0.0;
    std::optional<double> delta_E_theta;
    std::optional<double> delta_E_max;
};
CostReport extraction_cost(double eps1, double eps2, double r, std::optional<double> theta = {},
                           std::optional<double> omega_max = {}, const Tolerances &tol = {});

// Re-chooses the pair inside the same two-mode subsystem so that it reaches the
// minimal cost at unchanged entanglement.
PartnerPair optimal_correction(const TwoModeProblem &problem, const PartnerPair &pair);

// Two-mode squeezing acting on rows (x, k, xbar, kbar).
Matrix squeeze_matrix(double r);

// Replaces the state of the pair by the product of the ground states of the
// one-mode restricted Hamiltonians.
struct SwapResult {
    State state;
    double delta_E = 0.0;
    Matrix restricted_h;  // 4x4 in the pair basis
};
SwapResult restricted_ground_swap(const State &state, const Hamiltonian &H, const PartnerPair &pair);

// Excitation energies omega_1 <= ... <= omega_N.
std::vector<double> excitation_spectrum(const State &state, const Hamiltonian &H);

}  // namespace entcost::boson
