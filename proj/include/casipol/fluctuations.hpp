// fluctuations.hpp - quantum-fluctuation regimes of the ground-state
// atom-wall force under a finite measurement time T.
//
// The relative fluctuation of the time-averaged force scales as (d/cT)^6 for
// long measurements (d << cT) and (d/cT)^5 for short ones (d >> cT). Only
// the scalings are known; the prefactors here are set to 1 and every report
// carries an order-of-magnitude caveat. In reduced units c = 1, so
// x = d/(cT) = d/T.

#pragma once

#include <string_view>

#include "casipol/units.hpp"

namespace casipol {

enum class MeasurementRegime { long_measurement, crossover, short_measurement };

std::string_view regime_name(MeasurementRegime r);

struct FluctuationReport {
  double d;  // atom-wall distance (reduced length)
  double T;  // measurement duration (reduced time)
  double x;  // d/(cT)
  MeasurementRegime regime;
  // x^6 in the long regime, x^5 in the short one; in the crossover band
  // x in [1/2, 2] the two power laws bracket the value, so both bounds are
  // reported (rf_lo == rf_hi outside the band).
  double rf_lo;
  double rf_hi;
  bool observable;  // rf_hi >= 1e-2 (reporting threshold, not physics)
};

inline constexpr std::string_view kPrefactorCaveat =
    "order-of-magnitude scaling with unit prefactor";

// Measurement duration with x = d/(cT) = 1; in reduced units simply d.
double crossover_time(double d);

FluctuationReport relative_fluctuation(double d, double T);

struct InstrumentSpec {
  double response_time;  // T, reduced time, > 0
  // Lorentzian response of width T; its transform exp(-omega T) is the
  // frequency cutoff that makes the fluctuation finite.
  static constexpr std::string_view response_shape = "lorentzian";
};

struct FeasibilityReport {
  FluctuationReport fluctuation;
  double crossover_T;      // reduced time
  double mean_force;       // far-zone ground-state force at d
  double abs_fluct_lo;     // |mean_force| * rf bounds
  double abs_fluct_hi;
  std::string_view caveat;  // kPrefactorCaveat
};

FeasibilityReport feasibility_report(double d, const InstrumentSpec& instrument,
                                     const AtomSpec& atom);

}  // namespace casipol
