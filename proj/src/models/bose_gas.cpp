#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include <cmath>
#include <limits>

#include "entcost/errors.hpp"
#include "entcost/linalg.hpp"
#include "entcost/models.hpp"

namespace entcost::models {

BoseGasPair bose_gas_pair_analysis(double omega, double gamma) {
    if (!(omega > 0.0) || !(gamma >= 0.0)) {
        fail(ErrorKind::Precondition, fmt::format("need omega > 0 and gamma >= 0, got {} and {}", omega, gamma));
    }
    if (!(gamma < 0.5 * omega)) {
        fail(ErrorKind::UnboundedHamiltonian,
             fmt::format("pair Hamiltonian unbounded below for gamma = {} >= omega/2 = {}", gamma, 0.5 * omega));
    }
    const double ratio = gamma / omega;
    const double root = std::sqrt(1.0 - 4.0 * ratio * ratio);
    BoseGasPair out;
    out.eps = omega * root;
    const double cosh2r = 1.0 / root;
    out.r = 0.5 * std::acosh(cosh2r);
    out.delta_S = linalg::boson_mode_entropy(cosh2r);
    out.delta_E = omega * (1.0 - root);
    return out;
}

boson::Hamiltonian bose_gas_hamiltonian(double omega, double gamma) {
    Matrix h = omega * Matrix::Identity(4, 4);
    h(0, 2) = h(2, 0) = 2.0 * gamma;
    h(1, 3) = h(3, 1) = -2.0 * gamma;
    return {h, Vector()};
}

double bose_gas_ratio(double gamma_over_omega) {
    const BoseGasPair pair = bose_gas_pair_analysis(1.0, gamma_over_omega);
    return pair.delta_S > 0.0 ? pair.delta_E / pair.delta_S : 0.0;
}

BoseGasPeak bose_gas_peak() {
    const auto negative_ratio = [](double x) { return -bose_gas_ratio(x); };
    const auto [x, value] =
        boost::math::tools::brent_find_minima(negative_ratio, 1e-3, 0.5 - 1e-9, std::numeric_limits<double>::digits / 2);
    const BoseGasPair pair = bose_gas_pair_analysis(1.0, x);
    return {x, pair.delta_S, pair.delta_E, -value};
}

}  // namespace entcost::models
