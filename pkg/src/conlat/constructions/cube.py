"""The two Boolean semilattice cubes and their semilattice-level checks.

Both cubes live inside a powerset semilattice ``P(n)``; elements are bitmasks.
``T_j`` is generated by a free quadruple (``ξ`` for j=0, ``η`` for j=1,
``ζ`` for j=2) and ``S_i`` by the complementary pair ``α_i, β_i``.  In the
cube index, ``bot`` is the two-element semilattice, ``a{i}`` is ``S_i``,
``c{j}`` is ``T_j`` and ``top`` is ``U``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..adjoint import upper_adjoint
from ..diagram import Diagram, cube
from ..errors import PreconditionViolated
from ..report import Report
from ..semilattice import (
    FiniteJoinSemilattice0,
    JoinZeroHom,
    is_free_tuple,
    mask_of,
    powerset_semilattice,
    set_label,
    subsemilattice_generated,
)

LETTERS = ("xi", "eta", "zeta")
GREEK = {"xi": "ξ", "eta": "η", "zeta": "ζ", "alpha": "α", "beta": "β"}

DC_TABLE = {
    "xi": [{0, 4}, {3}, {2}, {1, 4}],
    "eta": [{0, 4}, {1, 4}, {2}, {3, 4}],
    "zeta": [{0, 4}, {1}, {3}, {2, 4}],
    "alpha": [{0, 1, 4}, {0, 3, 4}, {0, 2, 4}],
    "beta": [{2, 3, 4}, {1, 2, 4}, {1, 3, 4}],
}

DAC_TABLE = {
    "xi": [{0, 4, 7}, {3, 5, 6}, {2, 5, 6}, {1, 4, 7}],
    "eta": [{0, 4, 5, 7}, {1, 4, 6, 7}, {2, 5, 6, 7}, {3, 4, 5, 6}],
    "zeta": [{0, 4, 6}, {1, 5, 7}, {3, 5, 7}, {2, 4, 6}],
    "alpha": [{0, 1, 4, 5, 6, 7}, {0, 3, 4, 5, 6, 7}, {0, 2, 4, 5, 6, 7}],
    "beta": [{2, 3, 4, 5, 6, 7}, {1, 2, 4, 5, 6, 7}, {1, 3, 4, 5, 6, 7}],
}

# (lhs, rhs, rhs) as (letter, index) pairs: lhs is not below the join
DC_NON_INEQUALITIES = [(("eta", 1), ("xi", 1), ("zeta", 1))]
DAC_NON_INEQUALITIES = [
    (("eta", 1), ("xi", 1), ("zeta", 1)),
    (("eta", 2), ("xi", 0), ("zeta", 3)),
    (("eta", 3), ("xi", 3), ("zeta", 2)),
    (("eta", 0), ("xi", 2), ("zeta", 0)),
]


def entry_name(letter: str, k: int) -> str:
    return f"{GREEK[letter]}{k}"


def others(j: int) -> tuple[int, int]:
    """The two indices of {0,1,2} other than ``j``, increasing."""
    a, b = (x for x in range(3) if x != j)
    return a, b


def third(p: int, q: int) -> int:
    return 3 - p - q


@dataclass
class CubeData:
    name: str
    n: int
    U: FiniteJoinSemilattice0
    one: int
    xi: tuple[int, ...]
    eta: tuple[int, ...]
    zeta: tuple[int, ...]
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    T: list = field(default_factory=list)
    S: list = field(default_factory=list)
    two: tuple | None = None
    diagram: Diagram | None = None
    non_inequalities: list = field(default_factory=list)
    missing_inclusions: list = field(default_factory=list)

    def quad(self, j: int) -> tuple[int, ...]:
        return getattr(self, LETTERS[j])

    def value(self, letter: str, k: int) -> int:
        return getattr(self, letter)[k]

    def side(self, i: int, which: str) -> int:
        return self.alpha[i] if which == "alpha" else self.beta[i]

    def members(self, obj) -> tuple[int, ...]:
        return obj[1].map

    def t_index(self, j: int, mask: int) -> int:
        return self.members(self.T[j]).index(mask)

    def s_index(self, i: int, mask: int) -> int:
        return self.members(self.S[i]).index(mask)

    def meet_in_T(self, j: int, a: int, b: int) -> int:
        """Meet of two masks of ``T_j`` computed in ``T_j`` (not in ``U``)."""
        sub, incl = self.T[j]
        return incl.map[sub.meet(self.t_index(j, a), self.t_index(j, b))]

    def label(self, mask: int) -> str:
        return set_label(mask, self.n)


def _inclusion(small, big) -> JoinZeroHom | None:
    sm, bm = small[1].map, big[1].map
    pos = {m: k for k, m in enumerate(bm)}
    if any(m not in pos for m in sm):
        return None
    return JoinZeroHom(small[0], big[0], [pos[m] for m in sm], check=False)


def _build(name: str, n: int, table: dict, non_ineq, overrides=None) -> CubeData:
    table = {k: [set(s) for s in v] for k, v in table.items()}
    for letter, changes in (overrides or {}).items():
        for k, elements in changes.items():
            table[letter][k] = set(elements)
    U = powerset_semilattice(n)
    masks = {k: tuple(mask_of(s) for s in v) for k, v in table.items()}
    one = U.join_all(masks["xi"])
    d = CubeData(name, n, U, one, masks["xi"], masks["eta"], masks["zeta"], masks["alpha"], masks["beta"],
                 non_inequalities=list(non_ineq))
    d.T = [subsemilattice_generated(U, d.quad(j), name=f"T{j}") for j in range(3)]
    d.S = [subsemilattice_generated(U, (d.alpha[i], d.beta[i]), name=f"S{i}") for i in range(3)]
    d.two = subsemilattice_generated(U, [one], name="2")
    top = (U, JoinZeroHom.identity(U))
    objects = {"bot": d.two[0], "top": U}
    arrows = {}
    for i in range(3):
        objects[f"a{i}"] = d.S[i][0]
        arrows[("bot", f"a{i}")] = _inclusion(d.two, d.S[i])
    for j in range(3):
        objects[f"c{j}"] = d.T[j][0]
        arrows[(f"c{j}", "top")] = _inclusion(d.T[j], top)
    for i, j in itertools.permutations(range(3), 2):
        arrows[(f"a{i}", f"c{j}")] = _inclusion(d.S[i], d.T[j])
    d.missing_inclusions = sorted(k for k, v in arrows.items() if v is None)
    if not d.missing_inclusions:
        d.diagram = Diagram(cube(), objects, arrows)
    return d


def build_dc(universe_size: int = 5, overrides=None) -> CubeData:
    """The five-point cube; ``universe_size > 5`` embeds it in a larger powerset."""
    if universe_size < 5:
        raise ValueError("universe_size must be at least 5")
    return _build("dc", universe_size, DC_TABLE, DC_NON_INEQUALITIES, overrides)


def build_dac(overrides=None) -> CubeData:
    """The eight-point cube."""
    return _build("dac", 8, DAC_TABLE, DAC_NON_INEQUALITIES, overrides)


def matrix_cells(d: CubeData, j: int):
    """Rows ``α_{j'}, β_{j'}``, columns ``α_{j''}, β_{j''}``; entry ``(r, c)`` is ``τ_{2r+c}``."""
    jp, jpp = others(j)
    rows = [("alpha", jp), ("beta", jp)]
    cols = [("alpha", jpp), ("beta", jpp)]
    return rows, cols


def refinement_violation(d: CubeData, j: int):
    """First header of the ``T_j`` matrix that is not the join of its two entries."""
    U, quad = d.U, d.quad(j)
    rows, cols = matrix_cells(d, j)
    for r, (side, i) in enumerate(rows):
        got = U.join[quad[2 * r]][quad[2 * r + 1]]
        if got != d.side(i, side):
            return {"matrix": f"T{j}", "header": f"{GREEK[side]}{i}", "row": r,
                    "entries": [entry_name(LETTERS[j], 2 * r), entry_name(LETTERS[j], 2 * r + 1)],
                    "expected": d.label(d.side(i, side)), "got": d.label(got)}
    for c, (side, i) in enumerate(cols):
        got = U.join[quad[c]][quad[2 + c]]
        if got != d.side(i, side):
            return {"matrix": f"T{j}", "header": f"{GREEK[side]}{i}", "column": c,
                    "entries": [entry_name(LETTERS[j], c), entry_name(LETTERS[j], 2 + c)],
                    "expected": d.label(d.side(i, side)), "got": d.label(got)}
    return None


def non_inequality_witness(d: CubeData, lhs, r1, r2):
    """Points of ``lhs`` outside ``r1 ∨ r2`` (empty when the inequality holds)."""
    a = d.value(*lhs)
    b = d.U.join[d.value(*r1)][d.value(*r2)]
    diff = a & ~b
    return [k for k in range(d.n) if diff >> k & 1]


def inequality_text(lhs, r1, r2, holds: bool = False) -> str:
    rel = "≤" if holds else "≰"
    return f"{entry_name(*lhs)} {rel} {entry_name(*r1)}∨{entry_name(*r2)}"


def verify_cube(d: CubeData) -> Report:
    """Structural checks shared by both cubes."""
    rep = Report(f"verify {d.name}")
    U = d.U
    tops = {LETTERS[j]: U.join_all(d.quad(j)) for j in range(3)}
    rep.add("1 = ⋁ξ = ⋁η = ⋁ζ", len(set(tops.values())) == 1,
            {k: d.label(v) for k, v in tops.items()})
    for j in range(3):
        rep.add(f"{GREEK[LETTERS[j]]} is a free quadruple", is_free_tuple(U, d.quad(j)))
    for j in range(3):
        size = d.T[j][0].size
        rep.add(f"|T{j}| = 16", size == 16, {"size": size})
    for i in range(3):
        size = d.S[i][0].size
        rep.add(f"|S{i}| = 4", size == 4, {"size": size})
    for i in range(3):
        ai, bi = d.alpha[i], d.beta[i]
        rep.add(f"α{i} ∨ β{i} = 1", U.join[ai][bi] == d.one)
    rep.add("S_i ⊆ T_j for i ≠ j", not d.missing_inclusions,
            {"missing": [f"{p}->{q}" for p, q in d.missing_inclusions]} if d.missing_inclusions else None)
    if d.diagram is not None:
        v = d.diagram.is_commutative()
        rep.add("cube commutes", v.ok, v.witness)
    else:
        rep.add("cube commutes", "inapplicable", {"reason": "some inclusion is missing"})
    for j in range(3):
        bad = refinement_violation(d, j)
        rep.add(f"T{j} refinement matrix", bad is None, bad)
    for lhs, r1, r2 in d.non_inequalities:
        pts = non_inequality_witness(d, lhs, r1, r2)
        rep.add(inequality_text(lhs, r1, r2), bool(pts), {"element": pts[0] if pts else None, "outside": pts})
    return rep


def verify_dc(d: CubeData | None = None) -> Report:
    d = d or build_dc()
    return verify_cube(d).finish()


def verify_dac(d: CubeData | None = None) -> Report:
    d = d or build_dac()
    rep = verify_cube(d)
    rep.add("|U| = 256", d.U.size == 256, {"size": d.U.size})
    return rep.finish()


# forced refinement entries


def forced_phi(d: CubeData, firsts, p: int, q: int) -> int:
    """Forced value of ``Φ_P(g_p(x_p) ∧ g_q(x_q), g_p(x_p))`` as a mask of ``U``.

    ``firsts[i]`` names ``Φ(0, x_i)`` (``"alpha"`` or ``"beta"``); the
    forced value is ``first_p ∧ second_q`` computed in ``T_{third}``.
    """
    j = third(p, q)
    first_p = d.side(p, firsts[p])
    second_q = d.side(q, "beta" if firsts[q] == "alpha" else "alpha")
    return d.meet_in_T(j, first_p, second_q)


def forced_name(d: CubeData, firsts, p: int, q: int) -> str:
    """Matrix entry naming the forced value, ``τ_{2r+c}`` of ``T_{third}``."""
    j = third(p, q)
    jp, _ = others(j)
    sides = {p: firsts[p], q: "beta" if firsts[q] == "alpha" else "alpha"}
    r = 0 if sides[jp] == "alpha" else 1
    c = 0 if sides[3 - j - jp] == "alpha" else 1
    return entry_name(LETTERS[j], 2 * r + c)


def forced_inequalities(d: CubeData, firsts) -> list[dict]:
    """Both chain inequalities through the middle element, with forced values.

    With ``a, b, c`` the images of ``x_0, x_1, x_2`` and
    ``D(x, y) = Φ(x∧y, x)``, any lattice satisfies
    ``D(a,c) ≤ D(a,b) ∨ D(b,c)`` and ``D(c,a) ≤ D(c,b) ∨ D(b,a)``.
    """
    out = []
    for form, (x, y, z) in (("primary", (0, 1, 2)), ("dual", (2, 1, 0))):
        lhs = forced_phi(d, firsts, x, z)
        r1 = forced_phi(d, firsts, y, z) if form == "primary" else forced_phi(d, firsts, z, y)
        r2 = forced_phi(d, firsts, x, y) if form == "primary" else forced_phi(d, firsts, y, x)
        if form == "primary":
            names = (forced_name(d, firsts, 0, 2), forced_name(d, firsts, 1, 2), forced_name(d, firsts, 0, 1))
        else:
            names = (forced_name(d, firsts, 2, 0), forced_name(d, firsts, 2, 1), forced_name(d, firsts, 1, 0))
        rhs = d.U.join[r1][r2]
        holds = d.U.le(lhs, rhs)
        out.append({"form": form, "text": f"{names[0]} ≤ {names[1]}∨{names[2]}", "names": names,
                    "values": [d.label(lhs), d.label(r1), d.label(r2)], "holds_in_U": holds,
                    "outside": [k for k in range(d.n) if (lhs & ~rhs) >> k & 1]})
    return out


def forced_matrix(d: CubeData, j: int, firsts) -> dict:
    """Forced ``T_j`` entries keyed by (row side of ``j'``, column side of ``j''``)."""
    jp, jpp = others(j)
    return {(s1, s2): d.meet_in_T(j, d.side(jp, s1), d.side(jpp, s2))
            for s1 in ("alpha", "beta") for s2 in ("alpha", "beta")}


def forced_matches_matrices(d: CubeData) -> list:
    """Cells where ``row ∧ col`` in ``T_j`` differs from the named entry."""
    bad = []
    for j in range(3):
        quad = d.quad(j)
        for (s1, s2), v in forced_matrix(d, j, ("alpha",) * 3).items():
            k = 2 * (s1 == "beta") + (s2 == "beta")
            if v != quad[k]:
                bad.append({"matrix": f"T{j}", "entry": entry_name(LETTERS[j], k), "forced": d.label(v)})
    return bad


ORIENTATIONS = list(itertools.product(("alpha", "beta"), repeat=3))

# orientation of Φ(0, x_i) -> inequality the argument arrives at
CASE_TABLE = {
    ("alpha", "alpha", "alpha"): "η1 ≤ ξ1∨ζ1",
    ("beta", "beta", "beta"): "η1 ≤ ξ1∨ζ1",
    ("beta", "alpha", "beta"): "η2 ≤ ξ0∨ζ3",
    ("alpha", "beta", "alpha"): "η2 ≤ ξ0∨ζ3",
    ("beta", "beta", "alpha"): "η3 ≤ ξ3∨ζ2",
    ("alpha", "alpha", "beta"): "η3 ≤ ξ3∨ζ2",
    ("alpha", "beta", "beta"): "η0 ≤ ξ2∨ζ0",
    ("beta", "alpha", "alpha"): "η0 ≤ ξ2∨ζ0",
}


def orientation_text(firsts) -> str:
    return "(" + ",".join(f"{GREEK[s]}{i}" for i, s in enumerate(firsts)) + ")"


def case_row(d: CubeData, firsts) -> dict:
    """The inequality an orientation triple forces, in whichever chain form produces it."""
    expected = CASE_TABLE[tuple(firsts)]
    forms = forced_inequalities(d, firsts)
    match = next((f for f in forms if f["text"] == expected), None)
    return {"orientation": orientation_text(firsts), "expected": expected, "forms": forms,
            "matched_form": match["form"] if match else None,
            "fails_in_U": bool(match) and not match["holds_in_U"]}


def case_table_check(d: CubeData) -> Report:
    """Each orientation triple forces an inequality that must fail in ``U``.

    For the eight-point cube all eight triples must fail; for the five-point
    cube only the two uniform triples are asserted.
    """
    rep = Report(f"cases {d.name}")
    bad = forced_matches_matrices(d)
    rep.add("forced entries coincide with the refinement matrices", not bad, bad or None)
    uniform = {("alpha",) * 3, ("beta",) * 3}
    for firsts in ORIENTATIONS:
        row = case_row(d, firsts)
        name = f"{row['orientation']} forces {row['expected']}"
        if d.name == "dac" or tuple(firsts) in uniform:
            ok = row["matched_form"] is not None and row["fails_in_U"]
            rep.add(name + " which fails", ok, row)
        else:
            rep.add(name, "inapplicable", row)
    return rep.finish()


# dual maps of the five-point cube

# coatom of T_j obtained by dropping entry k -> k̄ of U
T_COATOMS = {0: {0: 0, 1: 3, 2: 2, 3: 1}, 1: {0: 0, 1: 1, 2: 2, 3: 3}, 2: {0: 0, 1: 1, 2: 3, 3: 2}}
# (j, i) -> (coatoms sent to α_i, coatoms sent to β_i)
PSI_TABLE = {
    (0, 2): ((1, 3), (0, 2)),
    (0, 1): ((1, 2), (0, 3)),
    (1, 2): ((1, 3), (0, 2)),
    (1, 0): ((2, 3), (0, 1)),
    (2, 1): ((1, 2), (0, 3)),
    (2, 0): ((2, 3), (0, 1)),
}
# ψ_j(4̄) as a set, and the coatoms of T_j whose meet it is
PSI4_TABLE = {0: ({2, 3}, (0, 1)), 1: ({2}, (0, 1, 3)), 2: ({1, 3}, (0, 2))}


def _adjoint(incl: JoinZeroHom):
    g = upper_adjoint(incl.as_monotone())
    return g.map


def dual_tables_dc(d: CubeData | None = None) -> Report:
    """Upper adjoints of every inclusion, compared with the expected tables."""
    d = d or build_dc()
    if d.name != "dc" or d.n != 5:
        raise PreconditionViolated("the dual tables describe the five-point cube")
    rep = Report("duals")
    U = d.U
    bar = {k: d.one & ~(1 << k) for k in range(5)}
    top = (U, JoinZeroHom.identity(U))
    rep.add("coatoms of U are k̄", sorted(U.as_lattice().coatoms) == sorted(bar.values()))
    for j in range(3):
        quad = d.quad(j)
        got = {}
        for k in range(4):
            got[k] = U.join_all(quad[m] for m in range(4) if m != k)
        ok = all(got[k] == bar[T_COATOMS[j][k]] for k in range(4))
        coat = sorted(d.T[j][1].map[c] for c in d.T[j][0].as_lattice().coatoms)
        ok = ok and coat == sorted(bar[k] for k in range(4))
        rep.add(f"coatoms of T{j}", ok, {GREEK[LETTERS[j]] + f"̄{k}": d.label(v) for k, v in got.items()})
    psi = {j: _adjoint(_inclusion(d.T[j], top)) for j in range(3)}
    psi_ji = {}
    for (j, i) in PSI_TABLE:
        psi_ji[(j, i)] = _adjoint(_inclusion(d.S[i], d.T[j]))
    for (j, i), (to_a, to_b) in PSI_TABLE.items():
        Sm = d.S[i][1].map
        for side, ks in (("alpha", to_a), ("beta", to_b)):
            vals = [Sm[psi_ji[(j, i)][d.t_index(j, bar[k])]] for k in ks]
            target = d.side(i, side)
            rep.add(f"ψ{j},{i}({ks[0]}̄) = ψ{j},{i}({ks[1]}̄) = {GREEK[side]}{i}", all(v == target for v in vals),
                    {"values": [d.label(v) for v in vals]})
    for j in range(3):
        Tm = d.T[j][1].map
        vals = {k: Tm[psi[j][bar[k]]] for k in range(4)}
        rep.add(f"ψ{j}(k̄) = k̄ for k < 4", all(vals[k] == bar[k] for k in range(4)),
                {f"{k}̄": d.label(v) for k, v in vals.items()})
    for j, (elems, meets) in PSI4_TABLE.items():
        Tsub, Tm = d.T[j][0], d.T[j][1].map
        v = Tm[psi[j][bar[4]]]
        m = Tm[Tsub.as_lattice().meet_all(d.t_index(j, bar[k]) for k in meets)]
        rep.add(f"ψ{j}(4̄) = {d.label(mask_of(elems))} = " + "∧".join(f"{k}̄" for k in meets),
                v == mask_of(elems) and m == v, {"value": d.label(v), "meet": d.label(m)})
    for (j, i) in PSI_TABLE:
        Sm = d.S[i][1].map
        v = Sm[psi_ji[(j, i)][psi[j][bar[4]]]]
        rep.add(f"ψ{j},{i}ψ{j}(4̄) = α{i}∧β{i} = 0", v == 0, {"value": d.label(v)})
    comp_ok, comp_bad = True, []
    for (j, i) in PSI_TABLE:
        Sm = d.S[i][1].map
        for k in range(4):
            v = Sm[psi_ji[(j, i)][psi[j][bar[k]]]]
            expect = d.alpha[i] if not d.alpha[i] >> k & 1 else d.beta[i]
            if v != expect:
                comp_ok = False
                comp_bad.append([j, i, k])
    rep.add("ψj,iψj(k̄) is the side of S_i omitting k", comp_ok, {"bad": comp_bad} if comp_bad else None)
    for name, obj in [(f"S{i}", d.S[i]) for i in range(3)] + [(f"T{j}", d.T[j]) for j in range(3)] + [("U", top)]:
        incl = _inclusion(d.two, obj)
        phi = _adjoint(incl)
        coatoms = obj[0].as_lattice().coatoms
        rep.add(f"dual of 2 ↪ {name} sends coatoms to 0", all(phi[c] == d.two[0].zero for c in coatoms))
    return rep.finish()
