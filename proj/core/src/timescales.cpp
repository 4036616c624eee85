#include "decoh/timescales.hpp"

#include <stdexcept>

namespace decoh {

void TimescaleParams::validate() const {
  if (!(mass > 0.0 && temperature > 0.0 && gamma_pp > 0.0 && omega > 0.0 && delta_x > 0.0 &&
        hbar > 0.0))
    throw std::invalid_argument("TimescaleParams: all parameters must be > 0");
}

Timescales timescales(const TimescaleParams& p) {
  p.validate();
  Timescales out;
  const double dx2 = p.delta_x * p.delta_x;
  out.t_dec = p.hbar * p.hbar / (p.mass * p.temperature * p.gamma_pp * dx2);
  out.t_mix = p.mass * p.omega * p.omega * dx2 / (p.gamma_pp * p.temperature);
  out.t_wp = p.mass * dx2 / p.hbar;
  return out;
}

}  // namespace decoh
