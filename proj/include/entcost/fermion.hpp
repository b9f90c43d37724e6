#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "entcost/types.hpp"

namespace entcost::fermion {

// H = (i/2) h_ab xi^a xi^b with {xi^a, xi^b} = g^ab and h antisymmetric.
struct Hamiltonian {
    Matrix h;
};

struct State {
    Matrix omega;  // antisymmetric covariance, <xi^a xi^b> = (g + i omega)/2
    Matrix g;      // anticommutator metric

    int modes() const { return static_cast<int>(omega.rows() / 2); }
    // J = omega g^{-1}
    Matrix complex_structure() const;
};

State ground_state(const Hamiltonian &H, const Matrix &g, const Tolerances &tol = {});

struct EnergyReport {
    double energy = 0.0;
    double sigma = 0.0;
};
EnergyReport energy_observables(const State &state, const Hamiltonian &H);

double entanglement_entropy(const State &state, const std::vector<Mode> &modes);
// Same quantity from the trace formula -Tr[(1+iJ_A)/2 log((1+iJ_A)/2)].
double entanglement_entropy_trace(const State &state, const std::vector<Mode> &modes);

// Orthonormalizes the mode in g and orients it so that omega(x, k) = cos 2r >= 0.
StandardMode standardize_mode(const State &state, const Mode &mode);
PartnerPair partner_mode(const State &state, const Mode &mode);

// hv(v, w) = g^ab g^cd v_a h_bc w_d
double restricted_form(const State &state, const Hamiltonian &H, const Vector &v, const Vector &w);
TwoModeProblem restricted_problem(const State &state, const Hamiltonian &H, const PartnerPair &pair,
                                  const Tolerances &tol = {});

// Costs of the four product states of the pair, indexed k + 2 l for
// omega_pair = diag((-1)^k A2, (-1)^l A2), i.e. (0,0), (1,0), (0,1), (1,1).
struct ProductCosts {
    std::array<double, 4> cost{};
    std::pair<int, int> best{0, 0};
};
ProductCosts product_state_costs(double eps1, double eps2, double r, double theta);

struct CostReport {
    double delta_S = 0.0;
    double delta_E_min = 0.0;
    double sigma_E = 0.0;
    bool supercritical = false;
    std::optional<double> delta_E_theta;  // cheapest product state at the given theta
    std::optional<double> delta_E_max;
};
CostReport extraction_cost(double eps1, double eps2, double r, std::optional<double> theta = {},
                           std::optional<double> omega_max = {}, const Tolerances &tol = {});

struct OptimalityReport {
    bool achieves_min = false;
    std::pair<int, int> best_state{0, 0};
    double delta_E_theta = 0.0;
    double delta_E_min = 0.0;
};
OptimalityReport optimality_check(const TwoModeProblem &problem, const Tolerances &tol = {});

// Two-mode squeezing acting on rows (x, k, xbar, kbar); angles r.
Matrix squeeze_matrix(double r);

struct SwapResult {
    State state;
    double delta_E = 0.0;
    Matrix restricted_h;
};
SwapResult restricted_ground_swap(const State &state, const Hamiltonian &H, const PartnerPair &pair);

// Excitation energies omega_1 <= ... <= omega_N.
std::vector<double> excitation_spectrum(const State &state, const Hamiltonian &H);

// Largest r accepted by the cost functions; inputs up to this slack past pi/4 are clamped.
inline constexpr double kSqueezingInputSlack = 1e-5;

}  // namespace entcost::fermion
