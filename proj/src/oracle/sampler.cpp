#include <cmath>
#include <numbers>

#include "entcost/errors.hpp"
#include "entcost/oracle.hpp"

namespace entcost::oracle {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SeededSampler::next_u64() {
    ++counter_;
    return splitmix64(seed_ + counter_ * kGoldenGamma);
}

double SeededSampler::uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

double SeededSampler::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector SeededSampler::normal_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = normal();
    }
    return v;
}

Matrix SeededSampler::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = normal();
        }
    }
    return m;
}

Mode haar_random_mode(const Matrix &g, SeededSampler &sampler, int max_retries) {
    const Eigen::Index n = g.rows();
    if (n < 4) {
        fail(ErrorKind::Size, "random modes need at least two modes");
    }
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Vector x = sampler.normal_vector(n);
        Vector k = sampler.normal_vector(n);
        const double xx = x.dot(g * x);
        const double kk = k.dot(g * k);
        const double xk = x.dot(g * k);
        if (xx * kk - xk * xk < 1e-12 * xx * kk) {
            continue;
        }
        x /= std::sqrt(xx);
        k -= x.dot(g * k) * x;
        k /= std::sqrt(k.dot(g * k));
        return {x, k};
    }
    fail(ErrorKind::Convergence, "could not draw a non-degenerate random mode");
}

Mode haar_random_boson_mode(const boson::State &state, SeededSampler &sampler, int max_retries) {
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Mode m = haar_random_mode(state.G, sampler, max_retries);
        const double w = m.x.dot(state.omega * m.k);
        if (std::abs(w) < 1e-6) {
            continue;
        }
        if (w < 0.0) {
            m.k = -m.k;
        }
        const double s = 1.0 / std::sqrt(std::abs(w));
        m.x *= s;
        m.k *= s;
        return m;
    }
    fail(ErrorKind::Convergence, "could not draw a random mode with nonzero commutator");
}

fermion::Hamiltonian random_fermion_hamiltonian(int modes, SeededSampler &sampler, double scale) {
    const Matrix a = sampler.normal_matrix(2 * modes, 2 * modes);
    return {scale * 0.5 * (a - a.transpose())};
}

boson::Hamiltonian random_boson_hamiltonian(int modes, SeededSampler &sampler, double floor) {
    const Matrix a = sampler.normal_matrix(2 * modes, 2 * modes);
    Matrix h = a * a.transpose() / (2.0 * modes) + floor * Matrix::Identity(2 * modes, 2 * modes);
    return {0.5 * (h + h.transpose()), Vector()};
}

}  // namespace entcost::oracle
