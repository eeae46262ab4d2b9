#include "breathing/constants.hpp"

#include <cmath>
#include <stdexcept>

namespace breathing {

double cyclotron_frequency(double field_gauss)
{
    return cgs::e_charge * field_gauss / (cgs::m_electron * cgs::c_light);
}

double landau_width(double field_gauss)
{
    if (field_gauss == 0.0)
        throw std::domain_error("no Landau scale in free space (H = 0)");
    return std::sqrt(2.0 * cgs::hbar * cgs::c_light / std::abs(cgs::e_charge * field_gauss));
}

double magnetic_length(double field_gauss)
{
    if (field_gauss == 0.0)
        throw std::domain_error("no Landau scale in free space (H = 0)");
    return std::sqrt(cgs::hbar * cgs::c_light / std::abs(cgs::e_charge * field_gauss));
}

double energy_to_velocity(double kinetic_ev)
{
    if (kinetic_ev < 0.0)
        throw std::domain_error("kinetic energy must be non-negative");
    if (std::isinf(kinetic_ev))
        return cgs::c_light;
    const double rest_ev = erg_to_ev(cgs::m_electron * cgs::c_light * cgs::c_light);
    // c sqrt(1 - 1/gamma^2) written without the cancellation at small k
    const double k = kinetic_ev / rest_ev;
    return cgs::c_light * std::sqrt(k * (k + 2.0)) / (1.0 + k);
}

} // namespace breathing
