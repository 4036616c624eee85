#pragma once

namespace decoh {

struct TimescaleParams {
  double mass = 1.0;
  double temperature = 1.0;
  double gamma_pp = 1.0;
  double omega = 1.0;
  double delta_x = 1.0;
  double hbar = 1.0;

  void validate() const;
};

/// Characteristic times for a packet separation delta_x: decoherence,
/// probability mixing, and free wave-packet spreading.
struct Timescales {
  double t_dec = 0.0;
  double t_mix = 0.0;
  double t_wp = 0.0;
};

Timescales timescales(const TimescaleParams& p);

}  // namespace decoh
