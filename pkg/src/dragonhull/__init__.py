"""Convex hulls of eta-dragon curves: closed-form vertices and a sampling oracle."""

from .core import (
    Coding,
    DomainError,
    DragonParams,
    Label,
    LabeledPoint,
    apply_word,
    candidate_set,
    coded_point,
    make_params,
    map_f1,
    map_f2,
    point_b,
    point_w,
    point_z,
)
from .geometry import Containment, GeometryError, HullReport, Polygon, convex_hull, hull_match
from .theory import (
    PartitionCell,
    PredictedHull,
    UpperRegion,
    BoundaryAmbiguous,
    eta_root,
    partition_cell,
    phi,
    predicted_hull,
    psi,
    theta,
)

__version__ = "0.1.0"
