#pragma once

#include <Eigen/Dense>
#include <complex>

namespace entcost {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

enum class Statistics { Boson, Fermion };

struct Tolerances {
    double structural = 1e-10;
    double oracle = 1e-8;
    // Relative gap |eps2 - eps1| / (eps1 + eps2) below which a spectrum is degenerate.
    double degeneracy = 1e-9;
};

// A pair of bilinear forms on the dual phase space: antisymmetric `omega` and
// symmetric positive-definite `g`. Bosons use omega as the commutator form and g
// as the state covariance; fermions use g as the anticommutator metric and omega
// as the state covariance.
struct FormPair {
    Matrix omega;
    Matrix g;

    // Interleaved Darboux form (q1, p1, q2, p2, ...) and the identity metric.
    static FormPair standard(int modes);
    int dim() const { return static_cast<int>(omega.rows()); }
};

// A single mode given by two dual vectors; x and k play the roles of the
// position-like and momentum-like linear observables.
struct Mode {
    Vector x;
    Vector k;
};

struct StandardMode {
    Mode mode;
    double r = 0.0;
};

struct PartnerPair {
    Mode mode;
    Mode partner;
    double r = 0.0;

    // Rows (x, k, xbar, kbar).
    Matrix basis() const;
};

// Restricted two-mode Hamiltonian of a partner pair, in the basis (x, k, xbar, kbar).
struct TwoModeProblem {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    double r = 0.0;
    double eps_plus = 0.0;
    double eps_minus = 0.0;
    double delta = 0.0;  // bosons only: hv(xbar,xbar) - hv(x,x)
    bool degenerate = false;
    Matrix h4;
};

}  // namespace entcost
