#pragma once

#include <cstdint>

#include "entcost/boson.hpp"
#include "entcost/fermion.hpp"
#include "entcost/oracle.hpp"
#include "entcost/types.hpp"

namespace entcost::testing {

double max_abs(const Matrix &m);

// Site mode (q_j, p_j) of an N-mode system.
Mode site_mode(int modes, int site);

// Distance between two modes as oriented planes: zero iff (b.x, b.k) is an
// SO(2) rotation of (a.x, a.k) with unit determinant.
double oriented_plane_distance(const Mode &a, const Mode &b);

struct BosonSetup {
    boson::Hamiltonian H;
    boson::State state;
};
BosonSetup random_boson_setup(int modes, oracle::SeededSampler &sampler);

struct FermionSetup {
    fermion::Hamiltonian H;
    fermion::State state;
};
FermionSetup random_fermion_setup(int modes, oracle::SeededSampler &sampler);

// Random symplectic matrix exp of a random Hamiltonian generator.
Matrix random_symplectic(int modes, oracle::SeededSampler &sampler, double scale = 0.3);
// Random orthogonal matrix from a QR decomposition.
Matrix random_orthogonal(int dim, oracle::SeededSampler &sampler);

}  // namespace entcost::testing
