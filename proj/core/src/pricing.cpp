#include "dhsim/pricing.hpp"

#include <algorithm>
#include <cmath>

namespace dhsim::pricing {

double chp_bid(const ChpParams& chp, double elec_price) {
    if (elec_price <= chp.alpha * chp.rho_e) {
        return chp.alpha * (chp.rho_e * chp.r + chp.rho_h) - elec_price * chp.r;
    }
    return elec_price * chp.rho_h / chp.rho_e;
}

double chp_heat_cap(const ChpParams& chp) {
    double fuel_cap = chp.f_max / (chp.rho_h + chp.r * chp.rho_e);
    return std::min(chp.g_h_max, fuel_cap);
}

double price_signal(double ambient_temp) {
    if (ambient_temp >= 17.5) return 0.0;
    return 380.0 * std::pow(0.92, ambient_temp);
}

double cop_at(const CopModel& model, double ambient_temp) {
    return std::clamp(model.cop0 + model.cop1 * ambient_temp, model.cop_min, model.cop_max);
}

std::vector<double> cop_series(const CopModel& model, const std::vector<double>& ambient_temp) {
    std::vector<double> out(ambient_temp.size());
    for (std::size_t i = 0; i < ambient_temp.size(); ++i) out[i] = cop_at(model, ambient_temp[i]);
    return out;
}

}  // namespace dhsim::pricing
