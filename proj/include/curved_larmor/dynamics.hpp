#pragma once

#include <string>
#include <vector>

#include "curved_larmor/invariants.hpp"

namespace curved_larmor {

struct Accel {
    double ar = 0.0;
    double aphi = 0.0;
    double az = 0.0;
};

/// Second-order equations of motion as explicit accelerations; omega is the
/// trajectory constant fixed from the initial state.
/// Throws std::domain_error at the r = 0 coordinate singularity when
/// vphi != 0; with vphi = 0 the azimuthal acceleration is 0 by continuity.
Accel accelerations(const SpaceChart& chart, const State& state, double omega);

/// First-order reduction: vz^2, vr^2 and vphi as functions of (r, z) and the
/// integrals of motion. The squares may be negative outside the classically
/// allowed region; callers use the sign change for turning-point detection.
struct FirstOrderRates {
    double vz_sq = 0.0;
    double vr_sq = 0.0;
    double vphi = 0.0;
};

FirstOrderRates first_order_rates(const MotionConstants& constants,
                                  const SpaceChart& chart, double r, double z);

enum class HaltReason { None, DomainExit, Singularity, NonFinite };

const char* to_string(HaltReason reason);

/// Max relative excursion of each integral over the samples,
/// |value - value0| / max(|value0|, floor) with floor = 1e-30.
struct DriftReport {
    double epsilon = 0.0;
    double I = 0.0;
    double A = 0.0;
    double C = 0.0;
    double omega = 0.0;

    double worst() const;
};

struct Sample {
    State state;
    MotionConstants constants; // recomputed from the state at this sample
};

struct Trajectory {
    SpaceChart chart;
    ParticleParams particle;
    FieldParams field;
    std::vector<Sample> samples; // strictly increasing in t
    double step = 0.0;
    std::string method = "rk4";
    double wall_ms = 0.0;
    HaltReason halt = HaltReason::None;
    std::string halt_message;
    DriftReport drift;

    bool completed() const { return halt == HaltReason::None; }
    const Sample& initial() const { return samples.front(); }
    const Sample& final() const { return samples.back(); }
};

/// Classical fixed-step RK4 on (r, phi, z, vr, vphi, vz), sampling every
/// step. Deterministic for identical inputs. On domain exit, singularity
/// approach or non-finite values the partial trajectory is returned with the
/// halt reason set.
Trajectory integrate(const SpaceChart& chart, const ParticleParams& particle,
                     const FieldParams& field, const State& initial, double h,
                     double T);

DriftReport drift_report(const Trajectory& traj);

} // namespace curved_larmor
