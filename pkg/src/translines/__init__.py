"""Planar maps sending lines to translates of one curve, and the incidence and
unit-distance constructions built from them."""

from .actions import ActionCase, TranslationVec, action_apply, action_matrix, build_phi, generators
from .arrangements import (
    IncidenceReport,
    IntArrangement,
    count_curve_incidences,
    count_incidences_exact,
    elekes,
    map_arrangement,
)
from .curves import CurveTranslate, Line, MapId, line_image_translate, map_point, map_point_inverse, verify_translate
from .projective import ProjMat, commuting_to_aff, cross_ratio, eigen_real_3x3, projective_from_correspondences
from .unit_distances import LENS, ScaledGrid, UnitBall, gauge, unit_pairs_exact

__version__ = "0.1.0"
