#include <algorithm>

#include "entcost/errors.hpp"
#include "entcost/oracle.hpp"

namespace entcost::oracle {

BoundsReport spectrum_bounds_check(const std::vector<double> &spectrum, const TwoModeProblem &problem, double tol) {
    const size_t n = spectrum.size();
    if (n < 2) {
        fail(ErrorKind::Precondition, "spectrum bounds need at least two modes");
    }
    if (!std::is_sorted(spectrum.begin(), spectrum.end())) {
        fail(ErrorKind::Precondition, "spectrum must be sorted ascending");
    }
    BoundsReport out;
    out.spectrum = spectrum;
    out.problem = problem;
    out.margins = {problem.eps1 - spectrum[0], spectrum[n - 2] - problem.eps1, problem.eps2 - spectrum[1],
                   spectrum[n - 1] - problem.eps2};
    const double slack = tol * std::max(1.0, spectrum.back());
    out.holds = std::all_of(out.margins.begin(), out.margins.end(), [&](double m) { return m >= -slack; });
    return out;
}

BoundsReport spectrum_bounds_check(const boson::State &state, const boson::Hamiltonian &H, const PartnerPair &pair,
                                   double tol) {
    return spectrum_bounds_check(boson::excitation_spectrum(state, H), boson::restricted_problem(state, H, pair), tol);
}

BoundsReport spectrum_bounds_check(const fermion::State &state, const fermion::Hamiltonian &H,
                                   const PartnerPair &pair, double tol) {
    return spectrum_bounds_check(fermion::excitation_spectrum(state, H), fermion::restricted_problem(state, H, pair),
                                 tol);
}

}  // namespace entcost::oracle
