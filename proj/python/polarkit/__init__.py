"""Finite classical polar spaces: point enumeration, group orbits and intriguing sets."""

from ._core import (
    CapacityExceeded,
    FieldReduction,
    FormInvarianceError,
    IncompatibleFields,
    InvalidArgument,
    OrbitPartition,
    PointSet,
    PolarkitError,
    Report,
    Space,
    adjoint_sl3,
    classical_generators,
    classify,
    dlength_partition,
    extsq_sp6,
    feasibility,
    maximal_ts_points,
    orbits,
    perp_residual,
    sl2_5_generators,
    verify,
    zsigmondy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
