#include "divert/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace divert {

void EngagementScenario::validate() const {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("scenario: dt must be > 0");
    }
    if (!(u_ub > 0.0)) {
        throw std::invalid_argument("scenario: u_ub must be > 0");
    }
    if (N < 2) {
        throw std::invalid_argument("scenario: N must be >= 2");
    }
    if (!(theta_f > -M_PI && theta_f <= M_PI)) {
        throw std::invalid_argument("scenario: theta_f must lie in (-pi, pi]");
    }
    const double fields[] = {p0.x(),  p0.y(),  v0.x(),  v0.y(),  chi0.x(), chi0.y(),
                             nu0.x(), nu0.y(), theta_f, u_ub,    dt};
    for (double f : fields) {
        if (!std::isfinite(f)) {
            throw std::invalid_argument("scenario: non-finite field");
        }
    }
}

}  // namespace divert
