"""Small lattice cubes with hand-built isomorphisms, for exercising the engines.

These are not liftings (none exist); each component of the isomorphism is
an order isomorphism but naturality is not required.  They let the engines
run all the way to the final inequality.
"""

from __future__ import annotations

from ..congruence import con_lattice
from ..diagram import Diagram, DiagramIso, cube
from ..lattice import FiniteLattice, LatticeHom, boolean, chain
from .cube import CubeData, build_dac, build_dc


def iso_from_covers(L: FiniteLattice, members, cover_masks: dict) -> tuple[int, ...]:
    """Send each congruence to the join of the masks of the covers it collapses.

    ``members`` lists the masks of the target object in index order.
    """
    C = con_lattice(L)
    pos = {m: k for k, m in enumerate(members)}
    out = []
    for c in C:
        mask = 0
        for (a, b), m in cover_masks.items():
            if c.related(a, b):
                mask |= m
        out.append(pos[mask])
    return tuple(out)


def _chain_covers(n: int, masks) -> dict:
    return {(k, k + 1): masks[k] for k in range(n - 1)}


def _assemble(d: CubeData, K, Ki, Lj, P, f, g, h, iso_parts) -> tuple[Diagram, DiagramIso]:
    objects = {"bot": K, "top": P}
    arrows = {}
    for i in range(3):
        objects[f"a{i}"] = Ki[i]
        arrows[("bot", f"a{i}")] = LatticeHom(K, Ki[i], f)
    for j in range(3):
        objects[f"c{j}"] = Lj
        arrows[(f"c{j}", "top")] = LatticeHom(Lj, P, h)
        for i in range(3):
            if i != j:
                arrows[(f"a{i}", f"c{j}")] = LatticeHom(Ki[i], Lj, g)
    return Diagram(cube(), objects, arrows), DiagramIso(iso_parts)


def synthetic_dc_cube(d: CubeData | None = None) -> tuple[Diagram, DiagramIso]:
    """``K = 2``, ``K_i = 2²``, ``L_j`` a 5-chain and ``P`` a 6-chain.

    ``K_i`` splits in the (α, β) orientation, so the engine reaches the
    final inequality.
    """
    d = d or build_dc()
    K, B, Lj, P = chain(2), boolean(2), chain(5), chain(6)
    maps = {
        "bot": iso_from_covers(K, d.two[1].map, {(0, 1): d.one}),
        "top": iso_from_covers(P, range(d.U.size), _chain_covers(6, [1 << k for k in range(5)])),
    }
    for i in range(3):
        covers = {(0, 1): d.alpha[i], (2, 3): d.alpha[i], (0, 2): d.beta[i], (1, 3): d.beta[i]}
        maps[f"a{i}"] = iso_from_covers(B, d.S[i][1].map, covers)
    for j in range(3):
        maps[f"c{j}"] = iso_from_covers(Lj, d.T[j][1].map, _chain_covers(5, d.quad(j)))
    f = [0, 3]
    g = [0, 4, 0, 4]
    h = [0, 1, 2, 3, 4]
    return _assemble(d, K, [B] * 3, Lj, P, f, g, h, maps)


def synthetic_dac_cube(firsts, d: CubeData | None = None) -> tuple[Diagram, DiagramIso]:
    """``K_i`` are 3-chains whose lower cover maps to ``firsts[i]`` (``"alpha"``/``"beta"``)."""
    d = d or build_dac()
    K, Ki, Lj, P = chain(2), chain(3), chain(5), chain(d.n + 1)
    maps = {
        "bot": iso_from_covers(K, d.two[1].map, {(0, 1): d.one}),
        "top": iso_from_covers(P, range(d.U.size), _chain_covers(d.n + 1, [1 << k for k in range(d.n)])),
    }
    for i in range(3):
        lo, hi = (d.alpha[i], d.beta[i]) if firsts[i] == "alpha" else (d.beta[i], d.alpha[i])
        maps[f"a{i}"] = iso_from_covers(Ki, d.S[i][1].map, {(0, 1): lo, (1, 2): hi})
    for j in range(3):
        maps[f"c{j}"] = iso_from_covers(Lj, d.T[j][1].map, _chain_covers(5, d.quad(j)))
    f = [0, 2]
    g = [0, 2, 4]
    h = [0, 1, 2, 3, 4]
    return _assemble(d, K, [Ki] * 3, Lj, P, f, g, h, maps)
