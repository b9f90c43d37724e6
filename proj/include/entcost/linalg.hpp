#pragma once

#include <vector>

#include "entcost/types.hpp"

namespace entcost::linalg {

// Real matrix with the eigenvectors of `m` and eigenvalues replaced by their
// moduli. Eigenvalues must be nonzero and either real or purely imaginary.
Matrix abs_eigen_map(const Matrix &m, const Tolerances &tol = {});

// symplectic: max |m omega m^T - omega| <= tol; orthogonal: max |m g m^T - g| <= tol.
struct GroupFlags {
    bool symplectic = false;
    bool orthogonal = false;
};
GroupFlags group_membership(const Matrix &m, const FormPair &forms, double tol = 1e-10);

Matrix matrix_exp(const Matrix &a);

// n-point function of a Gaussian state from its two-point function
// c2(a, b) = <xi^a xi^b> by summing over perfect matchings. Fermionic
// matchings carry the sign of their permutation.
Complex wick_npoint(const CMatrix &c2, const std::vector<int> &indices, Statistics stats);

// Interleaved Darboux form: blocks [[0, 1], [-1, 0]].
Matrix standard_symplectic(int modes);

// Two-mode generator of the passive transformations that keep both the
// identity metric and the Darboux form invariant, parametrized by phi.
Matrix passive_generator(double phi);

// Orthogonal `basis` (columns) with basis^T m basis = direct sum of
// values[i] * [[0, 1], [-1, 0]], values[i] >= 0 in ascending order.
struct AntisymmetricNormalForm {
    Matrix basis;
    std::vector<double> values;
};
AntisymmetricNormalForm antisymmetric_normal_form(const Matrix &m, double tol = 1e-12);

// Rows of `transform` satisfy transform * omega * transform^T = Darboux form and
// transform * g * transform^T = direct sum of values[i] * 1_2, values in
// descending order.
struct WilliamsonForm {
    Matrix transform;
    std::vector<double> values;
};
WilliamsonForm williamson(const Matrix &g, const Matrix &omega, double tol = 1e-12);

// Entropy in bits of a bosonic mode whose restricted complex structure has
// eigenvalues +-i x (x >= 1).
double boson_mode_entropy(double x);
// Entropy in bits of a fermionic mode whose restricted complex structure has
// eigenvalues +-i x (0 <= x <= 1).
double fermion_mode_entropy(double x);

// Permutes the 2x2 blocks of a 2n x 2n matrix's rows: result row block i is
// input row block order[i].
Matrix permute_row_blocks(const Matrix &rows, const std::vector<int> &order);

Matrix symmetric_part(const Matrix &m);
Matrix antisymmetric_part(const Matrix &m);

}  // namespace entcost::linalg
