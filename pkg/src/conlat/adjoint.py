"""Galois adjoints between finite lattices and the Con/Res duality."""

from __future__ import annotations

from .congruence import (
    Congruence,
    con_functor_map,
    con_lattice,
    quotient,
    res_functor_map,
    res_of,
)
from .errors import NotJoinHom, NotMeetHom
from .lattice import FiniteLattice, LatticeHom, MonotoneMap
from .report import Report


def _as_map(m) -> MonotoneMap:
    if isinstance(m, MonotoneMap):
        return m
    if hasattr(m, "as_monotone"):
        return m.as_monotone()
    raise TypeError(f"cannot view {m!r} as a map of lattices")


def is_complete_join_hom(m) -> bool:
    """Preserves binary joins and the bottom (enough for finite lattices)."""
    m = _as_map(m)
    A, B, f = m.source, m.target, m.map
    if f[A.bottom] != B.bottom:
        return False
    return all(f[A.join[a][b]] == B.join[f[a]][f[b]] for a in range(A.size) for b in range(a + 1, A.size))


def is_complete_meet_hom(m) -> bool:
    m = _as_map(m)
    A, B, f = m.source, m.target, m.map
    if f[A.top] != B.top:
        return False
    return all(f[A.meet[a][b]] == B.meet[f[a]][f[b]] for a in range(A.size) for b in range(a + 1, A.size))


def adjunction_violation(f: MonotoneMap, g: MonotoneMap):
    """First ``(a, b)`` where ``f(a) ≤ b  ⟺  a ≤ g(b)`` fails, or None."""
    A, B = f.source, f.target
    for a in range(A.size):
        for b in range(B.size):
            if B.leq[f.map[a]][b] != A.leq[a][g.map[b]]:
                return (a, b)
    return None


def are_dual(f, g) -> bool:
    return adjunction_violation(_as_map(f), _as_map(g)) is None


def upper_adjoint(f) -> MonotoneMap:
    """``f*(b)`` = largest ``a`` with ``f(a) ≤ b``."""
    f = _as_map(f)
    if not is_complete_join_hom(f):
        raise NotJoinHom("upper adjoint requires a join-hom preserving bottom")
    A, B = f.source, f.target
    g = MonotoneMap(B, A, [A.join_all(a for a in range(A.size) if B.leq[f.map[a]][b]) for b in range(B.size)], check=False)
    bad = adjunction_violation(f, g)
    if bad is not None:
        raise NotJoinHom(f"adjunction fails at {bad}")
    return g


def lower_adjoint(g) -> MonotoneMap:
    """``g†(a)`` = least ``b`` with ``a ≤ g(b)``."""
    g = _as_map(g)
    if not is_complete_meet_hom(g):
        raise NotMeetHom("lower adjoint requires a meet-hom preserving top")
    B, A = g.source, g.target
    f = MonotoneMap(A, B, [B.meet_all(b for b in range(B.size) if A.leq[a][g.map[b]]) for a in range(A.size)], check=False)
    bad = adjunction_violation(f, g)
    if bad is not None:
        raise NotMeetHom(f"adjunction fails at {bad}")
    return f


def verify_dual_ext(f: LatticeHom) -> Report:
    """Con f and Res f are dual, and Res f is the upper adjoint of Con f."""
    rep = Report("dual-ext")
    con_f = con_functor_map(f).as_monotone()
    res_f = res_functor_map(f)
    bad = adjunction_violation(con_f, res_f)
    rep.add("Con f and Res f are dual", bad is None, None if bad is None else {"pair": list(bad)})
    rep.add("Con f is a complete join-hom", is_complete_join_hom(con_f))
    rep.add("Res f is a complete meet-hom", is_complete_meet_hom(res_f))
    rep.add("Res f = (Con f)*", upper_adjoint(con_f).map == res_f.map)
    return rep.finish()


def quotient_congruence(theta: Congruence, gamma: Congruence, Q: FiniteLattice) -> Congruence:
    """γ/θ on ``Q = L/θ`` for γ ≥ θ."""
    reps = [blk[0] for blk in theta.blocks()]
    return Congruence(Q, [gamma.block[r] for r in reps])


def verify_res_interval_square(f: LatticeHom, beta: Congruence) -> Report:
    """Restriction commutes with the interval/quotient identifications."""
    rep = Report("res-interval-square")
    K, L = f.source, f.target
    CK, CL = con_lattice(K), con_lattice(L)
    alpha = res_of(f, beta)
    QK, pK = quotient(K, alpha)
    QL, pL = quotient(L, beta)
    # f'([x]) = [f(x)]; well defined because α is the preimage of β
    fprime = LatticeHom(QK, QL, [pL.map[f.map[blk[0]]] for blk in alpha.blocks()])
    CQK, CQL = con_lattice(QK), con_lattice(QL)
    upper = [g for g in CL if beta <= g]
    failures = []
    for g in upper:
        via_quot = CQK.index_of(res_of(fprime, quotient_congruence(beta, g, QL)))
        via_interval = CQK.index_of(quotient_congruence(alpha, res_of(f, g), QK))
        if via_quot != via_interval:
            failures.append(CL.index_of(g))
    rep.add("interval [β, full] has the size of Con(L/β)", len(upper) == len(CQL))
    rep.add("interval [α, full] has the size of Con(K/α)", sum(alpha <= c for c in CK) == len(CQK))
    rep.add("square commutes", not failures, {"failures": failures} if failures else None)
    return rep.finish()
