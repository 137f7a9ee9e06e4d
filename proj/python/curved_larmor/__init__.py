"""Charged-particle motion in constant-curvature spaces.

Thin re-export of the compiled core; see the project README for the
coordinate conventions and the CLI front end.
"""

from ._core import (  # noqa: F401
    Accel,
    DriftReport,
    Embedded,
    FieldParams,
    FirstOrderRates,
    HaltReason,
    KTrig,
    MotionConstants,
    OrbitClass,
    OrbitGeometry,
    ParticleParams,
    PhiClosedForm,
    RadialTurningPoints,
    Sample,
    SpaceChart,
    State,
    Trajectory,
    ZClosedForm,
    ZReference,
    ZRegime,
    ZRegimeKind,
    __version__,
    accelerations,
    circle_params,
    circle_residual,
    classify_orbit,
    constants_from_integrals,
    cyclotron_omega,
    drift_report,
    embed,
    embedding_residual,
    euclidean_reference,
    field_strength_phir,
    first_order_rates,
    fit_z_reference,
    forbidden_region,
    integrate,
    invariant_A,
    invariant_C,
    invariant_C_direct,
    invariant_I,
    ktrig,
    maxwell_residual,
    maxwell_residual_potential,
    motion_constants,
    onaxis_constants,
    onaxis_vphi,
    orbit_residual,
    orbit_residual_normalized,
    phi0_from_state,
    phi_closed_form_onaxis,
    quadrature_phi_of_r,
    quadrature_r_of_z,
    radial_turning_points,
    squared_speed,
    vector_potential_phi,
    z_closed_form,
)
