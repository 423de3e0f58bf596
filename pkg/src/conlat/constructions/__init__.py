"""Concrete cubes, the finite lifting, the contradiction engines and the triangle."""

from .cube import (
    CASE_TABLE,
    CubeData,
    build_dac,
    build_dc,
    case_table_check,
    dual_tables_dc,
    verify_cube,
    verify_dac,
    verify_dc,
)
from .engines import ContradictionCertificate, Inapplicable, contradiction_engine_dac, contradiction_engine_dc
from .fixtures import synthetic_dac_cube, synthetic_dc_cube
from .lifting import LiftingData, build_lifting, lifting_iso, permutability_audit, verify_lifting
from .remark import verify_m3_remark
from .triangle import (
    NoObstruction,
    Obstruction,
    build_triangle,
    m3_lifting,
    verify_m3_lifting,
    verify_triangle,
    verify_triangle_obstruction,
)

__all__ = [
    "CASE_TABLE", "CubeData", "build_dac", "build_dc", "case_table_check", "dual_tables_dc", "verify_cube",
    "verify_dac", "verify_dc", "ContradictionCertificate", "Inapplicable", "contradiction_engine_dac",
    "contradiction_engine_dc", "synthetic_dac_cube", "synthetic_dc_cube", "LiftingData", "build_lifting",
    "lifting_iso", "permutability_audit", "verify_lifting", "verify_m3_remark", "NoObstruction", "Obstruction",
    "build_triangle", "m3_lifting", "verify_m3_lifting", "verify_triangle", "verify_triangle_obstruction",
]
