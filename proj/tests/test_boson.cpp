#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "entcost/boson.hpp"
#include "entcost/errors.hpp"
#include "entcost/linalg.hpp"
#include "entcost/oracle.hpp"
#include "helpers.hpp"

namespace entcost {
namespace {

using testing::max_abs;
using testing::site_mode;

ErrorKind kind_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorKind::Precondition;
}

double s_b(double x) {
    const double p = (x + 1) / 2;
    const double m = (x - 1) / 2;
    return p * std::log2(p) - (m > 0 ? m * std::log2(m) : 0.0);
}

// Eigenmode rows (ascending frequency) of a bosonic Hamiltonian on the dual space.
Matrix eigenmode_rows(const boson::State &state, const boson::Hamiltonian &H, std::vector<double> &freqs) {
    const Matrix hv = state.omega.transpose() * H.h * state.omega;
    const auto wf = linalg::williamson(hv, state.omega);
    const int n = state.modes();
    Matrix rows(2 * n, 2 * n);
    freqs.clear();
    for (int i = 0; i < n; ++i) {
        rows.middleRows(2 * i, 2) = wf.transform.middleRows(2 * (n - 1 - i), 2);
        freqs.push_back(wf.values[n - 1 - i]);
    }
    return rows;
}

TEST(BosonGround, OscillatorCovariance) {
    const double w = 1.3;
    Matrix h(2, 2);
    h << w * w, 0, 0, 1;
    const boson::State st = boson::ground_state({h, Vector::Zero(2)}, linalg::standard_symplectic(1));
    Matrix expected(2, 2);
    expected << 1 / w, 0, 0, w;
    EXPECT_LE(max_abs(st.G - expected), 1e-12);
    EXPECT_LE(max_abs(st.z), 0.0);
    const auto e = boson::energy_observables(st, {h, Vector()});
    EXPECT_NEAR(e.energy, w / 2, 1e-12);
    EXPECT_NEAR(e.sigma, 0.0, 1e-6);
}

TEST(BosonGround, DisplacementSolvesLinearTerm) {
    oracle::SeededSampler sampler(21);
    boson::Hamiltonian H = oracle::random_boson_hamiltonian(3, sampler);
    H.f = sampler.normal_vector(6);
    const boson::State st = boson::ground_state(H, linalg::standard_symplectic(3));
    EXPECT_LE(max_abs(H.h * st.z + H.f), 1e-10);
    const auto e = boson::energy_observables(st, H);
    boson::State centered = st;
    centered.z.setZero();
    const double quadratic = boson::energy_observables(centered, {H.h, Vector()}).energy;
    EXPECT_NEAR(e.energy - quadratic, -0.5 * H.f.dot(H.h.ldlt().solve(H.f)), 1e-10);
}

TEST(BosonGround, PurityOfRandomGroundStates) {
    oracle::SeededSampler sampler(22);
    for (int n = 1; n <= 6; ++n) {
        const auto s = testing::random_boson_setup(n, sampler);
        const Matrix j = s.state.complex_structure();
        EXPECT_LE(max_abs(j * j + Matrix::Identity(2 * n, 2 * n)), 1e-10);
    }
}

TEST(BosonGround, IndefiniteHamiltonianIsUnbounded) {
    Matrix h = Matrix::Identity(2, 2);
    h(1, 1) = -1.0;
    EXPECT_EQ(kind_of([&] { boson::ground_state({h, Vector()}, linalg::standard_symplectic(1)); }),
              ErrorKind::UnboundedHamiltonian);
}

TEST(BosonGround, MatchesTruncatedFock) {
    oracle::SeededSampler sampler(23);
    const boson::Hamiltonian H = oracle::random_boson_hamiltonian(2, sampler);
    const boson::State st = boson::ground_state(H, linalg::standard_symplectic(2));
    const auto exact = oracle::boson_fock_oracle(H, 40);
    EXPECT_LE(max_abs(st.G - exact.covariance), 1e-4);
}

TEST(BosonEntropy, DualFormulasAgreeOnRandomSubspaces) {
    oracle::SeededSampler sampler(24);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 5;
        const auto s = testing::random_boson_setup(n, sampler);
        const Matrix rows = testing::random_symplectic(n, sampler);
        const int k = 1 + trial % n;
        std::vector<Mode> modes;
        for (int i = 0; i < k; ++i) {
            modes.push_back({rows.row(2 * i).transpose(), rows.row(2 * i + 1).transpose()});
        }
        EXPECT_NEAR(boson::entanglement_entropy(s.state, modes), boson::entanglement_entropy_trace(s.state, modes),
                    1e-12);
    }
}

TEST(BosonEntropy, KnownSqueezing) {
    // Two-mode squeezed vacuum with cosh 2r = 3 on two oscillators.
    const double r = 0.5 * std::acosh(3.0);
    const Matrix m = boson::squeeze_matrix(r);
    // Site covectors are m applied to vacuum covectors, so G = m m^T in site coordinates.
    const boson::State tmsv{m * m.transpose(), Vector::Zero(4), linalg::standard_symplectic(2)};
    const double expected = s_b(3.0);
    EXPECT_NEAR(boson::entanglement_entropy(tmsv, {site_mode(2, 0)}), expected, 1e-12);
    EXPECT_NEAR(boson::entanglement_entropy_trace(tmsv, {site_mode(2, 0)}), expected, 1e-12);
    EXPECT_NEAR(boson::entanglement_entropy(tmsv, {site_mode(2, 0), site_mode(2, 1)}), 0.0, 1e-12);
}

TEST(BosonEntropy, EigenmodeIsPure) {
    oracle::SeededSampler sampler(25);
    const auto s = testing::random_boson_setup(3, sampler);
    std::vector<double> freqs;
    const Matrix rows = eigenmode_rows(s.state, s.H, freqs);
    EXPECT_NEAR(boson::entanglement_entropy(s.state, {{rows.row(2).transpose(), rows.row(3).transpose()}}), 0.0,
                1e-10);
}

TEST(BosonModes, StandardizeIsAFixedPointAndSymplecticInvariant) {
    oracle::SeededSampler sampler(26);
    const auto s = testing::random_boson_setup(3, sampler);
    const Mode raw = oracle::haar_random_boson_mode(s.state, sampler);
    const StandardMode sm = boson::standardize_mode(s.state, raw);
    const Matrix &g = s.state.G;
    EXPECT_NEAR(sm.mode.x.dot(s.state.omega * sm.mode.k), 1.0, 1e-12);
    EXPECT_NEAR(sm.mode.x.dot(g * sm.mode.x), std::cosh(2 * sm.r), 1e-10);
    EXPECT_NEAR(sm.mode.k.dot(g * sm.mode.k), std::cosh(2 * sm.r), 1e-10);
    EXPECT_NEAR(sm.mode.x.dot(g * sm.mode.k), 0.0, 1e-10);

    const StandardMode again = boson::standardize_mode(s.state, sm.mode);
    EXPECT_NEAR(again.r, sm.r, 1e-12);
    EXPECT_LE((again.mode.x - sm.mode.x).norm() + (again.mode.k - sm.mode.k).norm(), 1e-10);

    // Recombine with a unit-determinant 2x2 map and compare with the direct sqrt(det) formula.
    const Mode mixed{2.0 * sm.mode.x + 0.3 * sm.mode.k, -0.7 * sm.mode.x + 0.395 * sm.mode.k};
    Eigen::Matrix2d g2;
    const double w = mixed.x.dot(s.state.omega * mixed.k);
    const Vector kk = mixed.k / w;
    g2 << mixed.x.dot(g * mixed.x), mixed.x.dot(g * kk), mixed.x.dot(g * kk), kk.dot(g * kk);
    EXPECT_NEAR(std::cosh(2 * boson::standardize_mode(s.state, mixed).r), std::sqrt(g2.determinant()), 1e-10);
    EXPECT_NEAR(boson::standardize_mode(s.state, mixed).r, sm.r, 1e-10);
}

TEST(BosonModes, CommutingObservablesAreRejected) {
    oracle::SeededSampler sampler(27);
    const auto s = testing::random_boson_setup(2, sampler);
    const Vector x = Vector::Unit(4, 0);
    EXPECT_EQ(kind_of([&] { boson::standardize_mode(s.state, {x, 2.0 * x}); }), ErrorKind::DegenerateMode);
}

TEST(BosonPartner, StandardFormAndInvolution) {
    oracle::SeededSampler sampler(28);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = testing::random_boson_setup(3, sampler);
        const Mode mode = oracle::haar_random_boson_mode(s.state, sampler);
        const PartnerPair pair = boson::partner_mode(s.state, mode);
        const Matrix b = pair.basis();
        const double c = std::cosh(2 * pair.r);
        const double sh = std::sinh(2 * pair.r);
        Matrix expected = c * Matrix::Identity(4, 4);
        expected(0, 2) = expected(2, 0) = sh;
        expected(1, 3) = expected(3, 1) = -sh;
        EXPECT_LE(max_abs(b * s.state.G * b.transpose() - expected), 1e-10);
        EXPECT_LE(max_abs(b * s.state.omega * b.transpose() - linalg::standard_symplectic(2)), 1e-10);

        const PartnerPair back = boson::partner_mode(s.state, pair.partner);
        EXPECT_LE((back.partner.x - pair.mode.x).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LE((back.partner.k - pair.mode.k).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(BosonPartner, TwoModeSqueezedVacuumPartnerIsTheOtherSite) {
    const double r = 0.4;
    const Matrix inv = boson::squeeze_matrix(r).inverse();
    const boson::State st{inv * inv.transpose(), Vector::Zero(4), linalg::standard_symplectic(2)};
    const PartnerPair pair = boson::partner_mode(st, site_mode(2, 0));
    EXPECT_NEAR(pair.r, r, 1e-12);
    // In site coordinates the pair is (e_q1, e_p1, +-e_q2, +-e_p2).
    EXPECT_LE(testing::oriented_plane_distance(pair.partner, site_mode(2, 1)), 1e-10);
}

TEST(BosonPartner, PureModeHasNoPartner) {
    const boson::State st{Matrix::Identity(4, 4), Vector::Zero(4), linalg::standard_symplectic(2)};
    EXPECT_EQ(kind_of([&] { boson::partner_mode(st, site_mode(2, 0)); }), ErrorKind::NoPartner);
}

TEST(BosonUnsqueeze, IdentityCovarianceAndCanonicalRelations) {
    oracle::SeededSampler sampler(29);
    const auto s = testing::random_boson_setup(3, sampler);
    const PartnerPair pair = boson::partner_mode(s.state, oracle::haar_random_boson_mode(s.state, sampler));
    const Matrix rows = boson::unsqueeze(s.state, pair);
    EXPECT_LE(max_abs(rows * s.state.G * rows.transpose() - Matrix::Identity(4, 4)), 1e-10);
    EXPECT_LE(max_abs(rows * s.state.omega * rows.transpose() - linalg::standard_symplectic(2)), 1e-10);
    EXPECT_LE(max_abs(boson::squeeze_matrix(pair.r) * rows - pair.basis()), 1e-10);
}

TEST(BosonRestricted, EigenmodePairOfTwoModeSystem) {
    oracle::SeededSampler sampler(30);
    const auto s = testing::random_boson_setup(2, sampler);
    std::vector<double> freqs;
    const Matrix eig = eigenmode_rows(s.state, s.H, freqs);
    const double r = 0.6;
    const Matrix rows = boson::squeeze_matrix(r) * eig;
    const PartnerPair pair = boson::partner_mode(s.state, {rows.row(0).transpose(), rows.row(1).transpose()});
    const TwoModeProblem p = boson::restricted_problem(s.state, s.H, pair);
    EXPECT_NEAR(p.eps1, freqs[0], 1e-10);
    EXPECT_NEAR(p.eps2, freqs[1], 1e-10);
    EXPECT_NEAR(std::abs(std::cos(2 * p.theta)), 1.0, 1e-8);

    const double eps_plus = 0.5 * (p.eps1 + p.eps2);
    const auto swap = boson::restricted_ground_swap(s.state, s.H, pair);
    EXPECT_NEAR(swap.delta_E, 2 * eps_plus * std::pow(std::sinh(r), 2), 1e-10);

    const PartnerPair corrected = boson::optimal_correction(p, pair);
    const TwoModeProblem pc = boson::restricted_problem(s.state, s.H, corrected);
    EXPECT_NEAR(pc.theta, std::numbers::pi / 4, 1e-8);
    EXPECT_NEAR(pc.delta, 0.0, 1e-8);
    EXPECT_NEAR(boson::restricted_ground_swap(s.state, s.H, corrected).delta_E,
                boson::extraction_cost(p.eps1, p.eps2, r).delta_E_min, 1e-10);
    EXPECT_NEAR(boson::entanglement_entropy(s.state, {corrected.mode}),
                boson::entanglement_entropy(s.state, {pair.mode}), 1e-12);
}

TEST(BosonRestricted, ThetaQuarterPairIsSymmetric) {
    oracle::SeededSampler sampler(31);
    const auto s = testing::random_boson_setup(2, sampler);
    std::vector<double> freqs;
    const Matrix eig = eigenmode_rows(s.state, s.H, freqs);
    const Matrix rows = boson::squeeze_matrix(0.5) *
                        linalg::matrix_exp(std::numbers::pi / 4 * linalg::passive_generator(0.0)) * eig;
    const PartnerPair pair = boson::partner_mode(s.state, {rows.row(0).transpose(), rows.row(1).transpose()});
    const TwoModeProblem p = boson::restricted_problem(s.state, s.H, pair);
    EXPECT_NEAR(p.delta, 0.0, 1e-10);
    const PartnerPair same = boson::optimal_correction(p, pair);
    EXPECT_LE(max_abs(same.basis() - pair.basis()), 1e-8);
}

TEST(BosonRestricted, AsymmetryMatchesSplitting) {
    oracle::SeededSampler sampler(32);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = testing::random_boson_setup(4, sampler);
        const PartnerPair pair = boson::partner_mode(s.state, oracle::haar_random_boson_mode(s.state, sampler));
        const TwoModeProblem p = boson::restricted_problem(s.state, s.H, pair);
        EXPECT_GT(p.eps1, 0.0);
        EXPECT_NEAR(p.delta, (p.eps2 - p.eps1) * std::cos(2 * p.theta), 1e-10 * std::max(1.0, p.eps2));
    }
}

TEST(BosonCost, ClosedFormsAndLimits) {
    const auto zero = boson::extraction_cost(1.0, 2.0, 0.0);
    EXPECT_EQ(zero.delta_E_min, 0.0);
    EXPECT_EQ(zero.delta_S, 0.0);

    const double eps = 1.3;
    const double r = 0.8;
    EXPECT_NEAR(boson::extraction_cost(eps, eps, r).delta_E_min, 2 * eps * std::pow(std::sinh(r), 2), 1e-12);

    const auto c = boson::extraction_cost(1.0, 2.5, r, 0.3, 4.0);
    EXPECT_NEAR(c.delta_S, s_b(std::cosh(2 * r)), 1e-13);
    EXPECT_NEAR(*c.delta_E_max, 8.0 * std::pow(std::sinh(r), 2), 1e-12);
    const double denom = 1 + 6.25 + 5.0 * std::cosh(4 * r);
    EXPECT_NEAR(c.sigma_E, std::sinh(2 * r) * std::sqrt(2 * 6.25 * (1 + std::cosh(4 * r)) / denom), 1e-12);

    const double big = 1e6;
    const double limit = std::pow(std::sinh(2 * r), 2);
    EXPECT_NEAR(boson::extraction_cost(1.0, big, r).delta_E_min / limit, 1.0, 1e-3);

    const double ratio = boson::extraction_cost(1.0, 9.0, 10.0).delta_E_min / boson::extraction_cost(1.0, 1.0, 10.0).delta_E_min;
    EXPECT_NEAR(ratio / 3.0, 1.0, 1e-3);

    EXPECT_EQ(kind_of([] { boson::extraction_cost(0.0, 1.0, 0.1); }), ErrorKind::InvalidSpectrum);
}

TEST(BosonCost, OrderingMonotonicityAndSmallR) {
    const double e1 = 0.7, e2 = 2.2, wmax = 3.0;
    for (double r : {0.05, 0.4, 1.1}) {
        const double lo = *boson::extraction_cost(e1, e2, r, std::numbers::pi / 4).delta_E_theta;
        const double hi = *boson::extraction_cost(e1, e2, r, 0.0).delta_E_theta;
        EXPECT_NEAR(lo, boson::extraction_cost(e1, e2, r).delta_E_min, 1e-12);
        double prev = lo;
        for (double theta = std::numbers::pi / 4; theta >= 0.0; theta -= std::numbers::pi / 40) {
            const double cur = *boson::extraction_cost(e1, e2, r, theta).delta_E_theta;
            EXPECT_GE(cur, prev - 1e-12);
            prev = cur;
        }
        EXPECT_NEAR(hi, (e1 + e2) * std::pow(std::sinh(r), 2), 1e-12);
        EXPECT_LE(hi, *boson::extraction_cost(e1, e2, r, {}, wmax).delta_E_max + 1e-12);
        EXPECT_LT(boson::extraction_cost(e1, e2, r).delta_E_min, boson::extraction_cost(e1 + 0.1, e2, r).delta_E_min);
        EXPECT_LT(boson::extraction_cost(e1, e2, r).delta_E_min, boson::extraction_cost(e1, e2 + 0.1, r).delta_E_min);
    }
    auto ratio = [&](double r) {
        const auto c = boson::extraction_cost(e1, e2, r);
        return c.delta_S / c.delta_E_min;
    };
    EXPECT_GT(ratio(1e-3), ratio(1e-1));
    const double r = 1e-3;
    EXPECT_NEAR(boson::extraction_cost(e1, e2, r).delta_E_min / (r * r) / (4 * e1 * e2 / (e1 + e2)), 1.0, 1e-2);
}

TEST(BosonCost, DegenerateVarianceAndSwapConsistency) {
    const double eps = 0.9, r = 0.7;
    const Matrix m = boson::squeeze_matrix(r);
    const boson::Hamiltonian H{eps * (m * m.transpose()).inverse(), Vector()};
    const boson::State st = boson::ground_state(H, linalg::standard_symplectic(2));
    const PartnerPair pair = boson::partner_mode(st, site_mode(2, 0));
    const auto swap = boson::restricted_ground_swap(st, H, pair);
    EXPECT_NEAR(swap.delta_E, 2 * eps * std::pow(std::sinh(r), 2), 1e-10);
    EXPECT_NEAR(boson::energy_observables(swap.state, H).sigma, eps * std::sinh(2 * r), 1e-10);
    EXPECT_NEAR(boson::extraction_cost(eps, eps, r).sigma_E, eps * std::sinh(2 * r), 1e-12);
    EXPECT_NEAR(boson::energy_observables(swap.state, H).energy - boson::energy_observables(st, H).energy,
                swap.delta_E, 1e-10);
}

TEST(BosonEnergy, VarianceOfSqueezedStatesAgainstFock) {
    oracle::SeededSampler sampler(34);
    const oracle::BosonFock fock(2, 40);
    for (int trial = 0; trial < 3; ++trial) {
        const auto s = testing::random_boson_setup(2, sampler);
        // Ground state of a second, unrelated Hamiltonian probed with the first.
        const boson::Hamiltonian other = oracle::random_boson_hamiltonian(2, sampler);
        const boson::State probe = boson::ground_state(other, linalg::standard_symplectic(2));
        const CVector psi = oracle::lanczos_lowest(fock.hamiltonian(other)).ground;
        const auto hm = fock.hamiltonian(s.H);
        const double mean = fock.expectation(hm, psi);
        const Eigen::SparseMatrix<Complex> h2 = hm * hm;
        const double var = fock.expectation(h2, psi) - mean * mean;
        const auto e = boson::energy_observables(probe, s.H);
        EXPECT_NEAR(e.energy, mean, 1e-6);
        EXPECT_NEAR(e.sigma, std::sqrt(var), 1e-5);
    }
}

TEST(BosonCost, VarianceOfOptimalSwap) {
    oracle::SeededSampler sampler(35);
    for (int trial = 0; trial < 10; ++trial) {
        // Two-mode systems: with more modes the couplings to the rest add to the variance.
        const auto s = testing::random_boson_setup(2, sampler);
        const PartnerPair pair = boson::partner_mode(s.state, oracle::haar_random_boson_mode(s.state, sampler));
        const TwoModeProblem p = boson::restricted_problem(s.state, s.H, pair);
        const auto swap = boson::restricted_ground_swap(s.state, s.H, boson::optimal_correction(p, pair));
        EXPECT_NEAR(boson::energy_observables(swap.state, s.H).sigma,
                    boson::extraction_cost(p.eps1, p.eps2, p.r).sigma_E, 1e-9);
    }
}

TEST(BosonCost, SwapMatchesThetaCostOnRandomPairs) {
    oracle::SeededSampler sampler(33);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = testing::random_boson_setup(2 + trial % 4, sampler);
        const PartnerPair pair = boson::partner_mode(s.state, oracle::haar_random_boson_mode(s.state, sampler));
        const TwoModeProblem p = boson::restricted_problem(s.state, s.H, pair);
        const auto swap = boson::restricted_ground_swap(s.state, s.H, pair);
        const auto cost = boson::extraction_cost(p.eps1, p.eps2, p.r, p.theta);
        EXPECT_NEAR(swap.delta_E, *cost.delta_E_theta, 1e-10 * std::max(1.0, swap.delta_E));
        EXPECT_NEAR(boson::energy_observables(swap.state, s.H).energy - boson::energy_observables(s.state, s.H).energy,
                    swap.delta_E, 1e-10 * std::max(1.0, swap.delta_E));
    }
}

TEST(BosonSpectrum, FrequenciesOfUncoupledOscillators) {
    Matrix h = Matrix::Zero(4, 4);
    h.diagonal() << 4.0, 1.0, 1.0, 9.0;
    const boson::Hamiltonian H{h, Vector()};
    const boson::State st = boson::ground_state(H, linalg::standard_symplectic(2));
    const auto spec = boson::excitation_spectrum(st, H);
    ASSERT_EQ(spec.size(), 2u);
    EXPECT_NEAR(spec[0], 2.0, 1e-12);
    EXPECT_NEAR(spec[1], 3.0, 1e-12);
}

}  // namespace
}  // namespace entcost
