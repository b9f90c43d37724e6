#pragma once

#include <vector>

#include "entcost/types.hpp"

namespace entcost::detail {

void require_square(const Matrix &m, const char *what);
void require_even_dim(const Matrix &m, const char *what);
void require_same_dim(const Matrix &a, const Matrix &b, const char *what);

// Stacks the modes as rows (x1, k1, x2, k2, ...).
Matrix mode_rows(const std::vector<Mode> &modes, Eigen::Index dim);

// Eigenvalues of a general real matrix. Falls back to the complex QR iteration
// when the real Schur iteration stalls on highly structured input.
CVector eigenvalues(const Matrix &m);

// Sorted real parts of eigenvalues that come in equal pairs, averaged per pair.
std::vector<double> paired_eigenvalues(const Matrix &m);

Matrix block_diag(const Matrix &a, const Matrix &b);

double relative_error(const Matrix &a, const Matrix &b);

// Trace-formula entropy in bits: sign * sum_mu mu log2|mu| over eigenvalues of (1 + i J_A)/2.
double trace_formula_entropy(const Matrix &restricted_j, double sign);

}  // namespace entcost::detail
