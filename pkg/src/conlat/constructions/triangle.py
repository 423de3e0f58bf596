"""The triangle ``2 → 2² → 2`` with ``π∘ε = id``, its M₃ lifting, and the obstruction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..congruence import con_functor_map, con_lattice
from ..diagram import Diagram, con_image, diagram_isomorphism, triangle
from ..errors import PreconditionViolated, WitnessCheckFailed
from ..lattice import FiniteLattice, LatticeHom, boolean, chain, iter_homs, m3
from ..report import Report
from ..semilattice import JoinZeroHom, powerset_semilattice


def build_triangle() -> Diagram:
    """``ε(x) = (x, x)``, ``π(x, y) = x ∨ y`` and the identity on 2."""
    two = powerset_semilattice(1)
    sq = powerset_semilattice(2)
    eps = JoinZeroHom(two, sq, [0, 3])
    pi = JoinZeroHom(sq, two, [0, 1, 1, 1])
    ident = JoinZeroHom.identity(two)
    return Diagram(triangle(), {"low": two, "mid": sq, "high": two},
                   {("low", "mid"): eps, ("mid", "high"): pi, ("low", "high"): ident})


def lattice_triangle(K0: FiniteLattice, L: FiniteLattice, K1: FiniteLattice, e, p) -> Diagram:
    """Lattice triangle with ``f = p∘e`` stored on the long edge."""
    e = e if isinstance(e, LatticeHom) else LatticeHom(K0, L, e)
    p = p if isinstance(p, LatticeHom) else LatticeHom(L, K1, p)
    return Diagram(triangle(), {"low": K0, "mid": L, "high": K1},
                   {("low", "mid"): e, ("mid", "high"): p, ("low", "high"): p.compose(e)})


def m3_lifting() -> Diagram:
    """``K0 = 2``, ``L = 2²``, ``K1 = M₃``; ``e`` and ``f`` keep 0 and 1, ``p`` embeds 2² into M₃."""
    return lattice_triangle(chain(2), boolean(2), m3(), [0, 3], [0, 1, 2, 4])


@dataclass
class Obstruction:
    reason: str
    trace: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"obstruction": self.reason, "trace": self.trace, "facts": self.facts}


@dataclass
class NoObstruction:
    """The long edge is not surjective, so the argument does not apply."""

    is_lifting: bool
    facts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"applies": False, "is_lifting": self.is_lifting, **self.facts}


def pi_separates_zero(target: Diagram | None = None) -> bool:
    t = target or build_triangle()
    pi = t.arrows[("mid", "high")]
    return [x for x in range(pi.source.size) if pi.map[x] == pi.target.zero] == [pi.source.zero]


def verify_triangle_obstruction(candidate: Diagram, target: Diagram | None = None):
    """Replay the argument against a lattice triangle whose long edge is surjective.

    Returns :class:`Obstruction` with the trace when the long edge ``f`` is
    surjective; otherwise :class:`NoObstruction`.  Each step is also
    checked directly on the candidate.
    """
    target = target or build_triangle()
    v = candidate.is_commutative()
    if not v:
        raise PreconditionViolated(f"candidate triangle does not commute: {v.witness}")
    e = candidate.arrow("low", "mid")
    p = candidate.arrow("mid", "high")
    f = candidate.arrow("low", "high")
    iso = diagram_isomorphism(con_image(candidate), target)
    facts = {"is_lifting": iso is not None, "f_surjective": f.is_surjective()}
    if not f.is_surjective():
        return NoObstruction(iso is not None, facts)
    trace = []
    trace.append("f = p∘e is surjective")
    p_surj = p.is_surjective()
    trace.append("hence p is surjective")
    sep = pi_separates_zero(target)
    trace.append("Con p ≅ π and π separates 0")
    con_p = con_functor_map(p)
    CL = con_lattice(p.source)
    con_p_sep = [x for x in range(len(CL)) if con_p.map[x] == 0] == [0]
    trace.append("hence p is one-to-one")
    trace.append("therefore p is an isomorphism, which is impossible since π ≅ Con p and π is not an isomorphism")
    facts.update({
        "p_surjective": p_surj,
        "pi_separates_zero": sep,
        "con_p_separates_zero": con_p_sep,
        "p_injective": p.is_injective(),
        "pi_is_iso": target.arrows[("mid", "high")].is_injective(),
    })
    if not p_surj or con_p_sep != p.is_injective():
        raise WitnessCheckFailed(f"argument step failed on the candidate: {facts}")
    if iso is not None:
        raise WitnessCheckFailed("candidate with surjective long edge lifts the triangle")
    return Obstruction("p is an isomorphism, which is impossible", trace, facts)


def candidate_sweep(lattices) -> dict:
    """Run the obstruction on every triangle over ``lattices`` with surjective long edge."""
    counts = {"candidates": 0, "obstructed": 0, "liftings": 0}
    for K0, L, K1 in itertools.product(lattices, repeat=3):
        for e in iter_homs(K0, L):
            for p in iter_homs(L, K1):
                f = p.compose(e)
                if not f.is_surjective():
                    continue
                counts["candidates"] += 1
                res = verify_triangle_obstruction(lattice_triangle(K0, L, K1, e, p))
                if isinstance(res, Obstruction):
                    counts["obstructed"] += 1
                if res.facts.get("is_lifting"):
                    counts["liftings"] += 1
    return counts


def verify_m3_lifting() -> Report:
    rep = Report("m3 lifting")
    d = m3_lifting()
    rep.add("M₃ triangle commutes", d.is_commutative().ok)
    rep.add("Con M₃ ≅ 2", len(con_lattice(m3())) == 2)
    rep.add("p is an embedding", d.arrow("mid", "high").is_injective())
    e, f = d.arrow("low", "mid"), d.arrow("low", "high")
    rep.add("e and f keep 0 and 1", all(
        h.map[h.source.bottom] == h.target.bottom and h.map[h.source.top] == h.target.top for h in (e, f)))
    iso = diagram_isomorphism(con_image(d), build_triangle())
    rep.add("Con image of the M₃ triangle ≅ triangle", iso is not None, iso.to_json() if iso else None)
    res = verify_triangle_obstruction(d)
    rep.add("f is not surjective, so the M₃ lifting is not identity-preserving",
            isinstance(res, NoObstruction), res.to_json())
    return rep.finish()


def verify_triangle(sweep_max: int = 4) -> Report:
    from ..catalog import enumerate_lattices

    rep = Report("verify triangle")
    t = build_triangle()
    eps, pi = t.arrows[("low", "mid")], t.arrows[("mid", "high")]
    rep.add("π∘ε = id", pi.compose(eps).map == tuple(range(t.objects["low"].size)))
    rep.add("triangle commutes", t.is_commutative().ok)
    rep.add("π separates 0", pi_separates_zero(t))
    rep.add("π is not an isomorphism", not pi.is_injective())
    rep.extend(verify_m3_lifting())
    direct = lattice_triangle(chain(2), boolean(2), chain(2), [0, 3], [0, 1, 0, 1])
    res = verify_triangle_obstruction(direct)
    rep.add("identity-preserving candidate 2 → 2² → 2 is obstructed", isinstance(res, Obstruction), res.to_json())
    lattices = [L for n in range(1, sweep_max + 1) for L in enumerate_lattices(n)]
    counts = candidate_sweep(lattices)
    rep.add(f"every identity-preserving candidate over lattices of size ≤ {sweep_max} is obstructed",
            counts["candidates"] > 0 and counts["obstructed"] == counts["candidates"] and counts["liftings"] == 0,
            counts)
    return rep.finish()
