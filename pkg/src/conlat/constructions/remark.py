"""The two unguarded triangle containments fail on the atoms of M₃."""

from __future__ import annotations

from ..congruence import con_lattice
from ..lattice import m3
from ..report import Report
from ..urp import unguarded_containments


def verify_m3_remark() -> Report:
    L = m3()
    C = con_lattice(L)
    xi, xj, xk = L.atoms
    rep = Report("m3 unguarded containments")
    rep.add("Con M₃ has two elements", len(C) == 2)
    for row in unguarded_containments(L, xi, xj, xk):
        terms = [C[t].blocks() for t in row["terms"]]
        rep.add(f"{row['case']} ({row['form']}) containment fails", not row["holds"], {"terms": terms})
    return rep.finish()
