"""Replay the non-lifting argument on a concrete lattice cube.

Given a lattice cube and a candidate isomorphism from its congruence image
to one of the semilattice cubes, the engine picks the elements the argument
needs (lexicographically first choices), computes every ``Φ`` value, and
compares what the lattice actually gives with what the refinement matrices
force.  On a genuine lifting the split elements cannot all exist, so the
expected outcome there is :class:`Inapplicable`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..congruence import con_lattice
from ..diagram import Diagram, DiagramIso, con_image, is_order_iso, naturality_failures
from ..errors import InvalidIso, PreconditionViolated
from .cube import CASE_TABLE, GREEK, CubeData, forced_inequalities, forced_matrix, forced_phi, others

FORM_PAIRS = {"primary": [(0, 2), (1, 2), (0, 1)], "dual": [(2, 0), (2, 1), (1, 0)]}


@dataclass
class Inapplicable:
    reason: str
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"inapplicable": self.reason, **self.detail}


def _other(side: str) -> str:
    return "beta" if side == "alpha" else "alpha"


def _members(d: CubeData, obj: str) -> tuple[int, ...]:
    if obj == "bot":
        return d.two[1].map
    if obj == "top":
        return tuple(range(d.U.size))
    if obj.startswith("a"):
        return d.S[int(obj[1])][1].map
    return d.T[int(obj[1])][1].map


class _Phi:
    """``Φ_o(x, y)`` as a mask of ``U``: principal congruence pushed through the iso."""

    def __init__(self, cube: Diagram, iso: DiagramIso, d: CubeData):
        self.cube, self.iso, self.d = cube, iso, d
        self.members = {o: _members(d, o) for o in cube.index.objects}

    def __call__(self, obj: str, x: int, y: int) -> int:
        C = con_lattice(self.cube.objects[obj])
        return self.members[obj][self.iso.maps[obj][C.theta(x, y)]]


@dataclass
class ContradictionCertificate:
    variant: str
    zero_K: int
    one_K: int
    zeros: dict
    ones: dict
    xs: list
    orientation: tuple
    u: list
    v: list
    matrices: list
    images: list
    inequality: str
    form: str
    actual: dict
    forced: dict
    actual_holds: bool
    forced_holds: bool
    failed_identifications: list
    naturality_failures: list
    cube: Diagram = field(repr=False, default=None)
    iso: DiagramIso = field(repr=False, default=None)
    data: CubeData = field(repr=False, default=None)

    @property
    def violated(self) -> bool:
        """The forced inequality fails in ``U`` while the lattice inequality holds."""
        return self.actual_holds and not self.forced_holds

    def verify(self) -> bool:
        """Recompute every ``Φ`` value and both inequalities from the stored cube and iso."""
        d, cube = self.data, self.cube
        phi = _Phi(cube, self.iso, d)
        P = cube.objects["top"]
        imgs = [cube.arrow(f"a{i}", "top").map[x] for i, x in enumerate(self.xs)]
        if imgs != self.images:
            return False
        U = d.U
        pairs = FORM_PAIRS[self.form]
        act = [phi("top", P.meet[imgs[p]][imgs[q]], imgs[p]) for p, q in pairs]
        frc = [forced_phi(d, self.orientation, p, q) for p, q in pairs]
        if [d.label(a) for a in act] != self.actual["values"] or [d.label(f) for f in frc] != self.forced["values"]:
            return False
        act_holds = U.le(act[0], U.join[act[1]][act[2]])
        frc_holds = U.le(frc[0], U.join[frc[1]][frc[2]])
        return act_holds == self.actual_holds and frc_holds == self.forced_holds and self.violated

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "zero_K": self.zero_K,
            "one_K": self.one_K,
            "zeros": self.zeros,
            "ones": self.ones,
            "x": self.xs,
            "orientation": [f"{GREEK[s]}{i}" for i, s in enumerate(self.orientation)],
            "u": self.u,
            "v": self.v,
            "matrices": self.matrices,
            "images_in_P": self.images,
            "inequality": self.inequality,
            "form": self.form,
            "actual": self.actual,
            "forced": self.forced,
            "actual_holds": self.actual_holds,
            "forced_holds_in_U": self.forced_holds,
            "failed_identifications": self.failed_identifications,
            "naturality_failures": [f"{p}->{q}" for p, q in self.naturality_failures],
        }


def _check_inputs(cube: Diagram, iso: DiagramIso | None, d: CubeData):
    v = cube.is_commutative()
    if not v:
        raise PreconditionViolated(f"lattice cube does not commute: {v.witness}")
    if d.diagram is None:
        raise PreconditionViolated("semilattice cube is incomplete")
    for i in range(3):
        n = len(con_lattice(cube.objects[f"a{i}"]))
        if n != 4:
            return Inapplicable(f"Con K{i} is not 2²", {"size": n})
    img = con_image(cube)
    if iso is None:
        raise InvalidIso("no isomorphism given")
    for o in cube.index.objects:
        if o not in iso.maps or not is_order_iso(img.objects[o], d.diagram.objects[o], iso.maps[o]):
            raise InvalidIso(f"component at {o} is not an order isomorphism")
    return naturality_failures(img, d.diagram, iso.maps)


def _run(cube: Diagram, iso: DiagramIso | None, d: CubeData, both_orientations: bool):
    checked = _check_inputs(cube, iso, d)
    if isinstance(checked, Inapplicable):
        return checked
    nat = checked
    phi = _Phi(cube, iso, d)
    U = d.U
    le = U.le
    K = cube.objects["bot"]
    start = next(((x, y) for x in range(K.size) for y in range(K.size)
                  if x != y and K.leq[x][y] and phi("bot", x, y) == d.one), None)
    if start is None:
        return Inapplicable("Con K has no pair reaching 1")
    zK, oK = start
    zeros, ones, failures = {"bot": zK}, {"bot": oK}, []
    for i in range(3):
        f = cube.arrow("bot", f"a{i}")
        zeros[f"a{i}"], ones[f"a{i}"] = f.map[zK], f.map[oK]
    for j in range(3):
        vals = set()
        for i in range(3):
            if i != j:
                g = cube.arrow(f"a{i}", f"c{j}")
                vals.add((g.map[zeros[f"a{i}"]], g.map[ones[f"a{i}"]]))
        if len(vals) != 1:
            failures.append({"identification": f"0,1 of L{j} independent of i", "values": sorted(vals)})
        zeros[f"c{j}"], ones[f"c{j}"] = min(vals)
    vals = set()
    for j in range(3):
        h = cube.arrow(f"c{j}", "top")
        vals.add((h.map[zeros[f"c{j}"]], h.map[ones[f"c{j}"]]))
    if len(vals) != 1:
        failures.append({"identification": "0,1 of P independent of j", "values": sorted(vals)})
    zeros["top"], ones["top"] = min(vals)

    xs, firsts = [], []
    sides = ("alpha", "beta") if both_orientations else ("alpha",)
    for i in range(3):
        o = f"a{i}"
        R = cube.objects[o]
        z, t = zeros[o], ones[o]
        found = None
        for x in range(R.size):
            xn = R.meet[R.join[x][z]][t]
            for s in sides:
                first, second = d.side(i, s), d.side(i, _other(s))
                if le(phi(o, z, xn), first) and le(phi(o, xn, t), second):
                    found = (xn, s)
                    break
            if found:
                break
        if found is None:
            kind = "an almost permutable" if both_orientations else "a permutable"
            return Inapplicable(f"K{i} lacks {kind} split",
                                {"K": i, "zero": z, "one": t, "zero_K": zK, "one_K": oK})
        xn, s = found
        xs.append(xn)
        firsts.append(s)
        a0, a1 = phi(o, z, xn), phi(o, xn, t)
        if a0 != d.side(i, s) or a1 != d.side(i, _other(s)):
            failures.append({"identification": f"split values in S{i}", "values": [d.label(a0), d.label(a1)]})
    firsts = tuple(firsts)

    us, vs, matrices = [], [], []
    for j in range(3):
        jp, jpp = others(j)
        o = f"c{j}"
        L = cube.objects[o]
        u = cube.arrow(f"a{jp}", o).map[xs[jp]]
        v = cube.arrow(f"a{jpp}", o).map[xs[jpp]]
        us.append(u)
        vs.append(v)
        z, t = zeros[o], ones[o]
        m, jn = L.meet[u][v], L.join[u][v]
        f1, s1 = firsts[jp], _other(firsts[jp])
        f2, s2 = firsts[jpp], _other(firsts[jpp])
        actual = {(f1, f2): phi(o, z, m), (f1, s2): phi(o, m, u), (s1, f2): phi(o, m, v), (s1, s2): phi(o, jn, t)}
        forced = forced_matrix(d, j, firsts)
        cells = []
        for key in sorted(actual):
            k = 2 * (key[0] == "beta") + (key[1] == "beta")
            name = f"{GREEK[('xi', 'eta', 'zeta')[j]]}{k}"
            cell = {"entry": name, "row": f"{GREEK[key[0]]}{jp}", "column": f"{GREEK[key[1]]}{jpp}",
                    "actual": d.label(actual[key]), "forced": d.label(forced[key])}
            cells.append(cell)
            if actual[key] != forced[key]:
                failures.append({"identification": f"T{j} matrix entry {name}", **cell})
        h = cube.arrow(o, "top")
        for x, y in ((m, u), (m, v)):
            via_p = phi("top", h.map[x], h.map[y])
            if via_p != phi(o, x, y):
                failures.append({"identification": f"Φ_L{j} agrees with Φ_P", "pair": [x, y],
                                 "L": d.label(phi(o, x, y)), "P": d.label(via_p)})
        matrices.append({"T": j, "u": u, "v": v, "cells": cells})

    P = cube.objects["top"]
    imgs = [cube.arrow(f"a{i}", "top").map[x] for i, x in enumerate(xs)]
    expected = CASE_TABLE[firsts]
    forms = {f["form"]: f for f in forced_inequalities(d, firsts)}
    form = next((k for k, f in forms.items() if f["text"] == expected), None)
    if form is None:
        raise PreconditionViolated(f"no chain inequality produces {expected}")
    pairs = FORM_PAIRS[form]
    act = [phi("top", P.meet[imgs[p]][imgs[q]], imgs[p]) for p, q in pairs]
    frc = [forced_phi(d, firsts, p, q) for p, q in pairs]
    names = forms[form]["names"]
    for (p, q), a, f, nm in zip(pairs, act, frc, names):
        if a != f:
            failures.append({"identification": f"Φ_P(g{p}(x{p})∧g{q}(x{q}), g{p}(x{p})) = {nm}",
                             "actual": d.label(a), "forced": d.label(f)})
    return ContradictionCertificate(
        variant=d.name,
        zero_K=zK,
        one_K=oK,
        zeros=zeros,
        ones=ones,
        xs=xs,
        orientation=firsts,
        u=us,
        v=vs,
        matrices=matrices,
        images=imgs,
        inequality=expected,
        form=form,
        actual={"values": [d.label(a) for a in act]},
        forced={"values": [d.label(f) for f in frc], "names": list(names)},
        actual_holds=le(act[0], U.join[act[1]][act[2]]),
        forced_holds=le(frc[0], U.join[frc[1]][frc[2]]),
        failed_identifications=failures,
        naturality_failures=nat,
        cube=cube,
        iso=iso,
        data=d,
    )


def contradiction_engine_dc(cube: Diagram, iso: DiagramIso | None, d: CubeData | None = None):
    """Every split must be oriented (α then β); returns a certificate or :class:`Inapplicable`."""
    from .cube import build_dc

    return _run(cube, iso, d or build_dc(), both_orientations=False)


def contradiction_engine_dac(cube: Diagram, iso: DiagramIso | None, d: CubeData | None = None):
    """Splits may take either orientation; the orientation triple selects the inequality."""
    from .cube import build_dac

    return _run(cube, iso, d or build_dac(), both_orientations=True)
