#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "entcost/boson.hpp"
#include "entcost/errors.hpp"
#include "entcost/linalg.hpp"
#include "entcost/models.hpp"
#include "entcost/oracle.hpp"
#include "helpers.hpp"

namespace entcost {
namespace {

using linalg::abs_eigen_map;
using testing::max_abs;

Matrix complex_abs_reference(const Matrix &m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m.cast<Complex>());
    const CMatrix v = es.eigenvectors();
    const CVector mod = es.eigenvalues().cwiseAbs().cast<Complex>();
    return (v * mod.asDiagonal() * v.inverse()).real();
}

TEST(AbsEigenMap, OscillatorInverseIsScaledIdentity) {
    const double omega = 1.7;
    const Matrix k = linalg::standard_symplectic(1) * (omega * Matrix::Identity(2, 2));
    EXPECT_LE(max_abs(abs_eigen_map(k.inverse()) - Matrix::Identity(2, 2) / omega), 1e-12);
}

TEST(AbsEigenMap, IdentityIsFixed) {
    EXPECT_LE(max_abs(abs_eigen_map(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)), 1e-14);
}

TEST(AbsEigenMap, MatchesComplexEigensolverOnRandomAntisymmetric) {
    oracle::SeededSampler sampler(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = sampler.normal_matrix(4, 4);
        const Matrix k = a - a.transpose();
        EXPECT_LE(max_abs(abs_eigen_map(k) - complex_abs_reference(k)), 1e-10);
    }
}

TEST(AbsEigenMap, HighlyDegenerateStructuredInput) {
    // Inverse of an XY chain Hamiltonian at zero field: the real Schur iteration stalls on it.
    const Matrix k = models::xy_hamiltonian({10, 1.0, 0.0, 0.8}).h.inverse();
    EXPECT_LE(max_abs(abs_eigen_map(k) - complex_abs_reference(k)), 1e-10);
}

TEST(AbsEigenMap, CommutesAndIsIdempotent) {
    oracle::SeededSampler sampler(12);
    for (int trial = 0; trial < 20; ++trial) {
        const boson::Hamiltonian H = oracle::random_boson_hamiltonian(3, sampler);
        const Matrix k = linalg::standard_symplectic(3) * H.h;
        const Matrix a = abs_eigen_map(k);
        EXPECT_LE(max_abs(a * k - k * a), 1e-10);
        EXPECT_LE(max_abs(abs_eigen_map(a) - a), 1e-10);
    }
}

TEST(AbsEigenMap, SingularInputIsRejected) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = -1.0;
    m(1, 1) = 0.0;
    Matrix singular = Matrix::Zero(2, 2);
    singular(0, 0) = 1.0;
    try {
        abs_eigen_map(singular);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateSpectrum);
    }
    EXPECT_NO_THROW(abs_eigen_map(m));
}

TEST(GroupMembership, Identity) {
    const auto flags = linalg::group_membership(Matrix::Identity(4, 4), FormPair::standard(2));
    EXPECT_TRUE(flags.symplectic);
    EXPECT_TRUE(flags.orthogonal);
}

TEST(GroupMembership, TwoModeSqueezingIsSymplecticOnly) {
    const auto flags = linalg::group_membership(boson::squeeze_matrix(0.5), FormPair::standard(2));
    EXPECT_TRUE(flags.symplectic);
    EXPECT_FALSE(flags.orthogonal);
}

TEST(GroupMembership, PassiveRotationPreservesBothForms) {
    for (double phi : {0.0, 0.4, 2.1}) {
        for (double theta : {0.3, -1.2}) {
            const Matrix n = linalg::matrix_exp(theta * linalg::passive_generator(phi));
            const auto flags = linalg::group_membership(n, FormPair::standard(2));
            EXPECT_TRUE(flags.symplectic);
            EXPECT_TRUE(flags.orthogonal);
        }
    }
}

TEST(MatrixExp, ZeroIsIdentity) {
    EXPECT_LE(max_abs(linalg::matrix_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)), 0.0);
}

TEST(MatrixExp, QuarterTurnOfPassiveGenerator) {
    // The generator squares to -1, so exp(t K) = cos t + sin t K.
    for (double phi : {0.0, 0.9}) {
        const Matrix k = linalg::passive_generator(phi);
        EXPECT_LE(max_abs(k * k + Matrix::Identity(4, 4)), 1e-15);
        const Matrix expected = (Matrix::Identity(4, 4) + k) / std::numbers::sqrt2;
        EXPECT_LE(max_abs(linalg::matrix_exp(std::numbers::pi / 4 * k) - expected), 1e-14);
    }
}

TEST(MatrixExp, InverseProperty) {
    oracle::SeededSampler sampler(13);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = sampler.normal_matrix(4, 4);
        m *= 5.0 / m.norm();
        EXPECT_LE(max_abs(linalg::matrix_exp(m) * linalg::matrix_exp(-m) - Matrix::Identity(4, 4)), 1e-10);
    }
}

TEST(Wick, OddCountsVanish) {
    const CMatrix c2 = CMatrix::Random(4, 4);
    EXPECT_EQ(linalg::wick_npoint(c2, {0, 1, 2}, Statistics::Boson), Complex(0.0));
    EXPECT_EQ(linalg::wick_npoint(c2, {3}, Statistics::Fermion), Complex(0.0));
}

TEST(Wick, TwoPointIsTheInput) {
    const CMatrix c2 = CMatrix::Random(4, 4);
    EXPECT_EQ(linalg::wick_npoint(c2, {2, 1}, Statistics::Boson), c2(2, 1));
    EXPECT_EQ(linalg::wick_npoint(c2, {2, 1}, Statistics::Fermion), c2(2, 1));
}

TEST(Wick, FourPointMatchingSigns) {
    const CMatrix c2 = CMatrix::Random(4, 4);
    const Complex plain = c2(0, 1) * c2(2, 3) + c2(0, 2) * c2(1, 3) + c2(0, 3) * c2(1, 2);
    const Complex signed_sum = c2(0, 1) * c2(2, 3) - c2(0, 2) * c2(1, 3) + c2(0, 3) * c2(1, 2);
    EXPECT_LE(std::abs(linalg::wick_npoint(c2, {0, 1, 2, 3}, Statistics::Boson) - plain), 1e-15);
    EXPECT_LE(std::abs(linalg::wick_npoint(c2, {0, 1, 2, 3}, Statistics::Fermion) - signed_sum), 1e-15);
}

TEST(Wick, FermionicFourAndSixPointAgainstFockOnThreeModes) {
    oracle::SeededSampler sampler(14);
    const fermion::Hamiltonian H = oracle::random_fermion_hamiltonian(3, sampler);
    const fermion::State state = fermion::ground_state(H, Matrix::Identity(6, 6));
    const oracle::FermionFock fock(3);
    const CVector psi = oracle::fermion_fock_oracle(H).ground;
    const CMatrix c2 = 0.5 * (Matrix::Identity(6, 6).cast<Complex>() + Complex(0, 1) * state.omega.cast<Complex>());
    double worst = 0.0;
    std::vector<int> idx(4);
    for (int t = 0; t < 6 * 6 * 6 * 6; ++t) {
        int rest = t;
        for (int &i : idx) {
            i = rest % 6;
            rest /= 6;
        }
        worst = std::max(worst, std::abs(linalg::wick_npoint(c2, idx, Statistics::Fermion) - fock.correlator(psi, idx)));
    }
    idx.resize(6);
    for (int t = 0; t < 6 * 6 * 6 * 6 * 6 * 6; ++t) {
        int rest = t;
        for (int &i : idx) {
            i = rest % 6;
            rest /= 6;
        }
        worst = std::max(worst, std::abs(linalg::wick_npoint(c2, idx, Statistics::Fermion) - fock.correlator(psi, idx)));
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(NormalForms, AntisymmetricNormalForm) {
    oracle::SeededSampler sampler(15);
    const Matrix a = sampler.normal_matrix(6, 6);
    const Matrix m = a - a.transpose();
    const auto nf = linalg::antisymmetric_normal_form(m);
    EXPECT_LE(max_abs(nf.basis.transpose() * nf.basis - Matrix::Identity(6, 6)), 1e-12);
    Matrix expected = Matrix::Zero(6, 6);
    for (int i = 0; i < 3; ++i) {
        expected(2 * i, 2 * i + 1) = nf.values[i];
        expected(2 * i + 1, 2 * i) = -nf.values[i];
        if (i > 0) EXPECT_GE(nf.values[i], nf.values[i - 1]);
        EXPECT_GE(nf.values[i], 0.0);
    }
    EXPECT_LE(max_abs(nf.basis.transpose() * m * nf.basis - expected), 1e-12);
}

TEST(NormalForms, WilliamsonOfSqueezedThermalState) {
    oracle::SeededSampler sampler(16);
    const Matrix s = testing::random_symplectic(2, sampler);
    Matrix d = Matrix::Zero(4, 4);
    d.diagonal() << 1.5, 1.5, 4.0, 4.0;
    const Matrix g = s * d * s.transpose();
    const Matrix omega = linalg::standard_symplectic(2);
    const auto wf = linalg::williamson(g, omega);
    ASSERT_EQ(wf.values.size(), 2u);
    EXPECT_NEAR(wf.values[0], 4.0, 1e-10);
    EXPECT_NEAR(wf.values[1], 1.5, 1e-10);
    EXPECT_LE(max_abs(wf.transform * omega * wf.transform.transpose() - omega), 1e-10);
    Matrix diag = Matrix::Zero(4, 4);
    diag.diagonal() << 4.0, 4.0, 1.5, 1.5;
    EXPECT_LE(max_abs(wf.transform * g * wf.transform.transpose() - diag), 1e-9);
}

TEST(ModeEntropy, EndpointsAndClosedForm) {
    EXPECT_DOUBLE_EQ(linalg::boson_mode_entropy(1.0), 0.0);
    EXPECT_DOUBLE_EQ(linalg::fermion_mode_entropy(1.0), 0.0);
    EXPECT_NEAR(linalg::fermion_mode_entropy(0.0), 1.0, 1e-15);
    const double r = 0.7;
    const double c2 = std::pow(std::cosh(r), 2);
    const double s2 = std::pow(std::sinh(r), 2);
    EXPECT_NEAR(linalg::boson_mode_entropy(std::cosh(2 * r)), c2 * std::log2(c2) - s2 * std::log2(s2), 1e-13);
    const double fc = std::pow(std::cos(r), 2);
    const double fs = std::pow(std::sin(r), 2);
    EXPECT_NEAR(linalg::fermion_mode_entropy(std::cos(2 * r)), -fc * std::log2(fc) - fs * std::log2(fs), 1e-13);
}

TEST(BlockPermutation, MovesPairsOfRows) {
    Matrix rows(6, 1);
    rows << 0, 1, 2, 3, 4, 5;
    Matrix expected(6, 1);
    expected << 4, 5, 0, 1, 2, 3;
    EXPECT_EQ(linalg::permute_row_blocks(rows, {2, 0, 1}), expected);
}

}  // namespace
}  // namespace entcost
