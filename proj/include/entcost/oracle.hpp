#pragma once

#include <Eigen/Sparse>
#include <array>
#include <cstdint>
#include <vector>

#include "entcost/boson.hpp"
#include "entcost/fermion.hpp"
#include "entcost/types.hpp"

namespace entcost::oracle {

// Counter-based generator: draw n is splitmix64(seed + (n + 1) * golden gamma),
// so (seed, counter) fully determines the output on every platform.
class SeededSampler {
  public:
    explicit SeededSampler(std::uint64_t seed, std::uint64_t counter = 0) : seed_(seed), counter_(counter) {}

    std::uint64_t next_u64();
    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    // Standard normal via Box-Muller; consumes two uniforms per call.
    double normal();
    Vector normal_vector(Eigen::Index n);
    Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

// Two Gaussian covectors orthonormalized in the metric g; redraws near-collinear pairs.
Mode haar_random_mode(const Matrix &g, SeededSampler &sampler, int max_retries = 64);
// Haar mode in the state's covariance metric, rescaled so that omega(x, k) = 1.
Mode haar_random_boson_mode(const boson::State &state, SeededSampler &sampler, int max_retries = 64);

// Random antisymmetric h with Gaussian entries of the given scale.
fermion::Hamiltonian random_fermion_hamiltonian(int modes, SeededSampler &sampler, double scale = 1.0);
// Random positive-definite h = a a^T / (2N) + floor * 1.
boson::Hamiltonian random_boson_hamiltonian(int modes, SeededSampler &sampler, double floor = 0.5);

struct FockOracleResult {
    std::vector<double> energies;  // ascending
    Matrix covariance;             // omega for fermions, G for bosons
    Vector displacement;           // bosons only
    std::vector<double> mode_entropies;  // reduced entropy of each single mode (bosons: mode 0 only)
    CVector ground;
    double convergence_estimate = 0.0;
};

// Exact Fock space of N fermionic modes with Majorana-type generators
// q_j = (c_j + c_j^dag)/sqrt2, p_j = i (c_j^dag - c_j)/sqrt2 ordered (q1, p1, ...).
// Jordan-Wigner strings run over lower mode indices; mode 0 is the most
// significant bit of a basis index.
class FermionFock {
  public:
    static constexpr int kMaxModes = 8;
    explicit FermionFock(int modes);

    int modes() const { return modes_; }
    Eigen::Index dim() const { return Eigen::Index{1} << modes_; }

    CMatrix generator(int a) const;
    // Applies xi^a to a state vector.
    CVector apply(int a, const CVector &psi) const;
    // Dense matrix of (i/2) h_ab xi^a xi^b.
    CMatrix hamiltonian(const fermion::Hamiltonian &H) const;
    double expectation(const CMatrix &op, const CVector &psi) const;
    // omega^ab = -i <[xi^a, xi^b]>.
    Matrix covariance(const CVector &psi) const;
    // Entropy (bits) of the reduced state on the listed modes.
    double reduced_entropy(const CVector &psi, const std::vector<int> &subset) const;
    // Ground vector of the Gaussian state with covariance omega (identity metric).
    CVector gaussian_vector(const Matrix &omega) const;
    // Two-point function <xi^a xi^b> as a dense matrix.
    CMatrix two_point(const CVector &psi) const;
    // <xi^a1 xi^a2 ...> by direct operator products.
    Complex correlator(const CVector &psi, const std::vector<int> &indices) const;

  private:
    int modes_;
    // xi^a |s> = phase[a][s] |target[a][s]>
    std::vector<std::vector<Eigen::Index>> target_;
    std::vector<std::vector<Complex>> phase_;
};

FockOracleResult fermion_fock_oracle(const fermion::Hamiltonian &H);

// Truncated Fock space of at most two bosonic modes, a = (q + i p)/sqrt2,
// levels 0..cutoff per mode, mode 0 the slow index.
class BosonFock {
  public:
    static constexpr int kMaxModes = 2;
    static constexpr int kMaxCutoff = 60;
    BosonFock(int modes, int cutoff);

    int modes() const { return modes_; }
    int cutoff() const { return cutoff_; }
    Eigen::Index dim() const { return dim_; }

    const Eigen::SparseMatrix<Complex> &generator(int a) const { return xi_[a]; }
    Eigen::SparseMatrix<Complex> hamiltonian(const boson::Hamiltonian &H) const;
    double expectation(const Eigen::SparseMatrix<Complex> &op, const CVector &psi) const;
    // Symmetrized covariance and displacement of a state vector.
    Matrix covariance(const CVector &psi, Vector *displacement = nullptr) const;
    double mode0_entropy(const CVector &psi) const;
    Complex correlator(const CVector &psi, const std::vector<int> &indices) const;

  private:
    int modes_;
    int cutoff_;
    Eigen::Index dim_;
    std::vector<Eigen::SparseMatrix<Complex>> xi_;
};

struct LanczosResult {
    std::vector<double> values;  // converged Ritz values, ascending
    CVector ground;
    double residual = 0.0;
};
// Lowest eigenpairs of a Hermitian sparse matrix, full reorthogonalization.
LanczosResult lanczos_lowest(const Eigen::SparseMatrix<Complex> &m, int wanted = 4, double tol = 1e-10);

// Runs at `cutoff` and `cutoff - 5`; throws ConvergenceError when the ground
// energy or covariance moves by more than `tolerance`.
FockOracleResult boson_fock_oracle(const boson::Hamiltonian &H, int cutoff, double tolerance = 1e-6);

struct BoundsReport {
    bool holds = false;
    // (eps1 - omega_1, omega_{N-1} - eps1, eps2 - omega_2, omega_N - eps2)
    std::array<double, 4> margins{};
    std::vector<double> spectrum;
    TwoModeProblem problem;
};
BoundsReport spectrum_bounds_check(const std::vector<double> &spectrum, const TwoModeProblem &problem,
                                   double tol = 1e-9);
BoundsReport spectrum_bounds_check(const boson::State &state, const boson::Hamiltonian &H, const PartnerPair &pair,
                                   double tol = 1e-9);
BoundsReport spectrum_bounds_check(const fermion::State &state, const fermion::Hamiltonian &H,
                                   const PartnerPair &pair, double tol = 1e-9);

// Basis rows: the modes of A, then their partners in B (same order), then the
// uncorrelated rest of B. r_values are sorted descending, one per mode of A.
struct StandardForm {
    Matrix basis;
    std::vector<double> r_values;
};
StandardForm standard_form_decompose(const boson::State &state, const std::vector<int> &subsystem_a);
// Fermionic states with the identity metric.
StandardForm standard_form_decompose(const fermion::State &state, const std::vector<int> &subsystem_a);
// Covariance (G for bosons, omega for fermions) expected in the decomposition basis.
Matrix expected_standard_form(Statistics stats, const std::vector<double> &r_values, int modes);

}  // namespace entcost::oracle
