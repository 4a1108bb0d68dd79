#include "casipol/fluctuations.hpp"

#include <cmath>
#include <stdexcept>

#include "casipol/wall_force.hpp"

namespace casipol {

std::string_view regime_name(MeasurementRegime r) {
  switch (r) {
    case MeasurementRegime::long_measurement:
      return "long_measurement";
    case MeasurementRegime::crossover:
      return "crossover";
    case MeasurementRegime::short_measurement:
      return "short_measurement";
  }
  return "?";
}

double crossover_time(double d) {
  if (!(d > 0.0)) throw std::domain_error("crossover_time: d must be > 0");
  return d;  // reduced units, c = 1
}

FluctuationReport relative_fluctuation(double d, double T) {
  if (!(d > 0.0)) throw std::domain_error("relative_fluctuation: d must be > 0");
  if (!(T > 0.0)) throw std::domain_error("relative_fluctuation: T must be > 0");
  FluctuationReport rep;
  rep.d = d;
  rep.T = T;
  rep.x = d / T;
  const double x5 = std::pow(rep.x, 5.0);
  const double x6 = std::pow(rep.x, 6.0);
  if (rep.x < 0.5) {
    rep.regime = MeasurementRegime::long_measurement;
    rep.rf_lo = rep.rf_hi = x6;
  } else if (rep.x > 2.0) {
    rep.regime = MeasurementRegime::short_measurement;
    rep.rf_lo = rep.rf_hi = x5;
  } else {
    rep.regime = MeasurementRegime::crossover;
    rep.rf_lo = std::min(x5, x6);
    rep.rf_hi = std::max(x5, x6);
  }
  rep.observable = rep.rf_hi >= 1e-2;
  return rep;
}

FeasibilityReport feasibility_report(double d, const InstrumentSpec& instrument,
                                     const AtomSpec& atom) {
  if (!(instrument.response_time > 0.0))
    throw std::domain_error("feasibility_report: response time must be > 0");
  FeasibilityReport rep;
  rep.fluctuation = relative_fluctuation(d, instrument.response_time);
  rep.crossover_T = crossover_time(d);
  rep.mean_force = wall_force_far_ground(atom, d);
  rep.abs_fluct_lo = std::fabs(rep.mean_force) * rep.fluctuation.rf_lo;
  rep.abs_fluct_hi = std::fabs(rep.mean_force) * rep.fluctuation.rf_hi;
  rep.caveat = kPrefactorCaveat;
  return rep;
}

}  // namespace casipol
