#include <cmath>

#include "entcost/linalg.hpp"
#include "entcost/models.hpp"

namespace entcost::models {

namespace {

void classify(HaarSample &s, double slack) {
    s.within_bounds = s.delta_E >= s.bound_lower - slack && s.delta_E <= s.bound_upper + slack;
}

}  // namespace

HaarSample fermion_haar_sample(const fermion::State &state, const fermion::Hamiltonian &H,
                               const std::vector<double> &spectrum, oracle::SeededSampler &sampler, double slack) {
    const Mode mode = oracle::haar_random_mode(state.g, sampler);
    const StandardMode sm = fermion::standardize_mode(state, mode);
    HaarSample s;
    s.r = sm.r;
    s.delta_S = linalg::fermion_mode_entropy(std::cos(2.0 * sm.r));
    const double sin_r = std::sin(sm.r);
    s.bound_lower = fermion::extraction_cost(spectrum.front(), spectrum[1], sm.r).delta_E_min;
    s.bound_upper = 2.0 * spectrum.back() * sin_r * sin_r;
    if (std::sin(2.0 * sm.r) >= 1e-8) {
        const PartnerPair pair = fermion::partner_mode(state, sm.mode);
        s.delta_E = fermion::restricted_ground_swap(state, H, pair).delta_E;
    }
    classify(s, slack);
    return s;
}

HaarSample boson_haar_sample(const boson::State &state, const boson::Hamiltonian &H,
                             const std::vector<double> &spectrum, oracle::SeededSampler &sampler, double slack) {
    const Mode mode = oracle::haar_random_boson_mode(state, sampler);
    const StandardMode sm = boson::standardize_mode(state, mode);
    HaarSample s;
    s.r = sm.r;
    s.delta_S = linalg::boson_mode_entropy(std::cosh(2.0 * sm.r));
    const double sinh_r = std::sinh(sm.r);
    s.bound_lower = boson::extraction_cost(spectrum.front(), spectrum[1], sm.r).delta_E_min;
    s.bound_upper = 2.0 * spectrum.back() * sinh_r * sinh_r;
    if (std::sinh(2.0 * sm.r) >= 1e-8) {
        const PartnerPair pair = boson::partner_mode(state, sm.mode);
        s.delta_E = boson::restricted_ground_swap(state, H, pair).delta_E;
    }
    classify(s, slack);
    return s;
}

std::vector<HaarSample> xy_haar_samples(const XYSpec &spec, int count, std::uint64_t seed, double slack) {
    const fermion::Hamiltonian H = xy_hamiltonian(spec);
    const int dim = 2 * spec.sites;
    const fermion::State state = fermion::ground_state(H, Matrix::Identity(dim, dim));
    const std::vector<double> spectrum = fermion::excitation_spectrum(state, H);
    oracle::SeededSampler sampler(seed);
    std::vector<HaarSample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back(fermion_haar_sample(state, H, spectrum, sampler, slack));
    }
    return out;
}

}  // namespace entcost::models
