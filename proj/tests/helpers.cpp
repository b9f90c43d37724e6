#include "helpers.hpp"

#include <cmath>

#include "entcost/linalg.hpp"

namespace entcost::testing {

double max_abs(const Matrix &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Mode site_mode(int modes, int site) {
    return {Vector::Unit(2 * modes, 2 * site), Vector::Unit(2 * modes, 2 * site + 1)};
}

double oriented_plane_distance(const Mode &a, const Mode &b) {
    Matrix basis_a(a.x.size(), 2);
    basis_a << a.x, a.k;
    Matrix basis_b(b.x.size(), 2);
    basis_b << b.x, b.k;
    // Least-squares coefficients of b in the span of a.
    const Matrix coeff = basis_a.colPivHouseholderQr().solve(basis_b);
    const double off_plane = max_abs(basis_a * coeff - basis_b);
    const Eigen::Matrix2d c = coeff;
    const double rotation = std::max((c.transpose() * c - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(),
                                     std::abs(c.determinant() - 1.0));
    return std::max(off_plane, rotation);
}

BosonSetup random_boson_setup(int modes, oracle::SeededSampler &sampler) {
    BosonSetup s;
    s.H = oracle::random_boson_hamiltonian(modes, sampler);
    s.state = boson::ground_state(s.H, linalg::standard_symplectic(modes));
    return s;
}

FermionSetup random_fermion_setup(int modes, oracle::SeededSampler &sampler) {
    FermionSetup s;
    s.H = oracle::random_fermion_hamiltonian(modes, sampler);
    s.state = fermion::ground_state(s.H, Matrix::Identity(2 * modes, 2 * modes));
    return s;
}

Matrix random_symplectic(int modes, oracle::SeededSampler &sampler, double scale) {
    const Matrix a = sampler.normal_matrix(2 * modes, 2 * modes);
    const Matrix sym = 0.5 * scale * (a + a.transpose());
    return linalg::matrix_exp(linalg::standard_symplectic(modes) * sym);
}

Matrix random_orthogonal(int dim, oracle::SeededSampler &sampler) {
    const Matrix a = sampler.normal_matrix(dim, dim);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    for (int i = 0; i < dim; ++i) {
        if (qr.matrixQR()(i, i) < 0.0) q.col(i) = -q.col(i);
    }
    return q;
}

}  // namespace entcost::testing
