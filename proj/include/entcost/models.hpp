#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entcost/boson.hpp"
#include "entcost/fermion.hpp"
#include "entcost/oracle.hpp"
#include "entcost/types.hpp"

namespace entcost::models {

// ---- dilute Bose gas: one (k, -k) momentum pair ----

struct BoseGasPair {
    double eps = 0.0;
    double r = 0.0;
    double delta_S = 0.0;
    double delta_E = 0.0;
};
BoseGasPair bose_gas_pair_analysis(double omega, double gamma);

// 4x4 h on (q_k, p_k, q_-k, p_-k).
boson::Hamiltonian bose_gas_hamiltonian(double omega, double gamma);

// delta_E / delta_S, zero where no entanglement is extracted.
double bose_gas_ratio(double gamma_over_omega);

struct BoseGasPeak {
    double gamma_over_omega = 0.0;
    double delta_S = 0.0;
    double delta_E = 0.0;  // in units of omega
    double ratio = 0.0;
};
BoseGasPeak bose_gas_peak();

// ---- XY chain after the Jordan-Wigner map ----

struct XYSpec {
    int sites = 2;
    double coupling = 1.0;    // J
    double field = 0.0;       // h
    double anisotropy = 0.0;  // gamma
};

struct XYDispersion {
    std::vector<double> kappa;
    std::vector<double> eps;
    double eps_min = 0.0;  // infinite-chain minimum over kappa
    double eps_max = 0.0;  // sqrt(J^2 + h^2 + 2 h J)
    bool interior_minimum = false;
};
double xy_energy(const XYSpec &spec, double kappa);
XYDispersion xy_dispersion(const XYSpec &spec);

std::pair<Complex, Complex> xy_bogoliubov(const XYSpec &spec, double kappa);

// Quadratic Hamiltonian in the on-site basis (q_1, p_1, ..., q_N, p_N), identity metric.
fermion::Hamiltonian xy_hamiltonian(const XYSpec &spec);

struct XYGroundStructures {
    Matrix complex_structure;  // from the momentum-space Bogoliubov solution
    Matrix omega;              // closed-form covariance
    Matrix h_check;
};
XYGroundStructures xy_ground_structures(const XYSpec &spec);

struct SiteReport {
    int site = 0;
    double r = 0.0;
    double delta_S = 0.0;
    bool has_partner = false;
    std::optional<PartnerPair> pair;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double delta_E = 0.0;
    double bound_lower = 0.0;  // minimal cost allowed by the full spectrum
    double bound_upper = 0.0;  // 2 omega_N sin^2 r
    bool within_bounds = true;
};
SiteReport xy_single_site(const XYSpec &spec, int site);
std::vector<SiteReport> xy_single_site_scan(const XYSpec &spec);

// Field giving minimal excitation energy eps_min at the given anisotropy (J = 1);
// sign selects the branch.
double xy_fixed_gap_field(double eps_min, double gamma, double sign = 1.0);

struct FixedGapPoint {
    double gamma = 0.0;
    double field = 0.0;
};
struct FixedGapPath {
    std::vector<FixedGapPoint> points;
    std::vector<std::pair<double, std::string>> skipped;
};
FixedGapPath xy_fixed_gap_path(double eps_min, const std::vector<double> &gamma_grid, double sign = 1.0,
                               double tol = 1e-8);

// ---- random partner pairs ----

struct HaarSample {
    double r = 0.0;
    double delta_S = 0.0;
    double delta_E = 0.0;
    double bound_lower = 0.0;
    double bound_upper = 0.0;
    bool within_bounds = true;
};
HaarSample fermion_haar_sample(const fermion::State &state, const fermion::Hamiltonian &H,
                               const std::vector<double> &spectrum, oracle::SeededSampler &sampler,
                               double slack = 1e-9);
HaarSample boson_haar_sample(const boson::State &state, const boson::Hamiltonian &H,
                             const std::vector<double> &spectrum, oracle::SeededSampler &sampler,
                             double slack = 1e-9);
std::vector<HaarSample> xy_haar_samples(const XYSpec &spec, int count, std::uint64_t seed, double slack = 1e-9);

}  // namespace entcost::models
