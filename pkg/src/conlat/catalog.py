"""Finite lattices up to isomorphism, property sweeps, and a bounded lifting search.

Lattices of size ``n`` are the join-semilattices of size ``n - 1`` with a
bottom adjoined.  Join-semilattices grow by adding one new minimal element
whose up-set meets every principal filter in a principal filter, which is
exactly the condition for joins with the new element to exist.  Candidates
are deduplicated by a canonical code: the smallest row-major order matrix
over relabelings that only permute elements with equal invariants.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from ._iso import invariants
from .adjoint import lower_adjoint, upper_adjoint
from .congruence import (
    con_functor_map,
    con_lattice,
    has_almost_permutable_congruences,
    has_permutable_congruences,
    is_congruence_splitting,
    permutable_via_criterion,
)
from .diagram import Diagram, DiagramIso, con_image, diagram_isomorphism, verify_diagram_iso
from .errors import BoundExceeded, ConlatError, WitnessCheckFailed
from .lattice import FiniteLattice, LatticeHom, induced_sublattice, is_distributive, iter_homs, lattice_from_leq
from .report import Report
from .semilattice import FiniteJoinSemilattice0
from ._iso import iter_order_isos
from .urp import find_splits, orient_and_split, urp1_minus_witness_from_chain_splits, urp1_witness_from_splitting

DEFAULT_BOUND = 7
EXTENDED_BOUND = 8
CACHE_ENV = "CONLAT_CACHE_DIR"
CACHE_VERSION = 1

Code = tuple  # flattened 0/1 order matrix


# canonical form


def _refined_classes(leq) -> list[list[int]]:
    """Elements grouped by invariants, refined once by the invariants of their covers."""
    inv = invariants(leq)
    n = len(leq)
    lt = [[leq[a][b] and a != b for b in range(n)] for a in range(n)]
    up_cov = [[b for b in range(n) if lt[a][b] and not any(lt[a][c] and lt[c][b] for c in range(n))] for a in range(n)]
    dn_cov = [[a for a in range(n) if b in up_cov[a]] for b in range(n)]
    key = [(inv[x][1], inv[x], tuple(sorted(inv[y] for y in up_cov[x])), tuple(sorted(inv[y] for y in dn_cov[x])))
           for x in range(n)]
    groups: dict = {}
    for x in range(n):
        groups.setdefault(key[x], []).append(x)
    return [groups[k] for k in sorted(groups)]


def canonical_order(leq) -> tuple[Code, list[int]]:
    """Smallest code over class-preserving relabelings, with the ordering achieving it.

    Classes are sorted by down-set size first, so the canonical ordering is
    always a linear extension.
    """
    n = len(leq)
    classes = _refined_classes(leq)
    best, best_order = None, None
    for parts in itertools.product(*(itertools.permutations(c) for c in classes)):
        order = [x for p in parts for x in p]
        code = tuple(int(leq[a][b]) for a in order for b in order)
        if best is None or code < best:
            best, best_order = code, order
    return best, best_order


def canonical_code(leq) -> Code:
    return canonical_order(leq)[0]


def _decode(code: Code) -> list[list[bool]]:
    n = int(round(len(code) ** 0.5))
    return [[bool(code[a * n + b]) for b in range(n)] for a in range(n)]


def code_to_hex(code: Code) -> str:
    n = int(round(len(code) ** 0.5))
    bits = "".join(str(b) for b in code) or "0"
    return f"{n}:{int(bits, 2):x}"


def hex_to_code(s: str) -> Code:
    n, h = s.split(":")
    n = int(n)
    bits = bin(int(h, 16))[2:].zfill(n * n)
    return tuple(int(b) for b in bits[-n * n:]) if n else ()


# generation


def _extensions(Q) -> list[Code]:
    """Canonical codes of join-semilattices obtained by adding one new minimal element to ``Q``."""
    m = len(Q)
    out = set()
    for r in range(1, m + 1):
        for A in itertools.combinations(range(m), r):
            if any(Q[a][b] for a in A for b in A if a != b):
                continue
            F = [any(Q[a][x] for a in A) for x in range(m)]
            ok = True
            for y in range(m):
                meet = [x for x in range(m) if F[x] and Q[y][x]]
                if not meet:
                    continue
                if not any(all(Q[c][x] for x in meet) for c in meet):
                    ok = False
                    break
            if not ok:
                continue
            R = [[False] * (m + 1) for _ in range(m + 1)]
            for a in range(m):
                for b in range(m):
                    R[a + 1][b + 1] = Q[a][b]
            R[0][0] = True
            for x in range(m):
                R[0][x + 1] = F[x]
            out.add(canonical_code(R))
    return sorted(out)


def _add_bottom(Q) -> list[list[bool]]:
    m = len(Q)
    R = [[True] * (m + 1)] + [[False] + list(row) for row in Q]
    return R


def _drop_bottom(leq) -> list[list[bool]]:
    # canonical order is a linear extension, so the bottom is element 0
    return [list(row[1:]) for row in leq[1:]]


def _lattice(code: Code, n: int, k: int) -> FiniteLattice:
    L = lattice_from_leq(_decode(code), name=f"L{n}.{k}")
    L.catalog_code = code
    return L


def _cache_path(n: int) -> Path | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return Path(root) / f"lattices-{n}.jsonl"


def _read_cache(n: int) -> list[Code] | None:
    p = _cache_path(n)
    if p is None or not p.exists():
        return None
    codes = []
    try:
        with p.open() as fh:
            for line in fh:
                rec = json.loads(line)
                if rec.get("version") != CACHE_VERSION or rec.get("n") != n:
                    return None
                codes.append(hex_to_code(rec["code"]))
    except (OSError, ValueError, KeyError):
        return None
    return codes


def _write_cache(n: int, codes: list[Code]) -> None:
    p = _cache_path(n)
    if p is None:
        return
    p.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=p.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            for k, code in enumerate(codes):
                L = _decode(code)
                covers = [[a, b] for a in range(n) for b in range(n)
                          if a != b and L[a][b] and not any(L[a][c] and L[c][b] and c not in (a, b) for c in range(n))]
                fh.write(json.dumps({"version": CACHE_VERSION, "n": n, "index": k,
                                     "code": code_to_hex(code), "covers": covers}) + "\n")
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


_MEMO: dict[int, list[Code]] = {}


def _codes(n: int, jobs: int = 1) -> list[Code]:
    if n in _MEMO:
        return _MEMO[n]
    cached = _read_cache(n)
    if cached is not None:
        _MEMO[n] = cached
        return cached
    if n == 1:
        codes = [(1,)]
    elif n == 2:
        codes = [canonical_code(_add_bottom([[True]]))]
    else:
        parents = [_drop_bottom(_decode(c)) for c in _codes(n - 1, jobs)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                children = list(ex.map(_extensions, parents))
        else:
            children = [_extensions(Q) for Q in parents]
        semis = sorted({c for ch in children for c in ch})
        codes = sorted({canonical_code(_add_bottom(_decode(c))) for c in semis})
    _MEMO[n] = codes
    _write_cache(n, codes)
    return codes


def enumerate_lattices(n: int, bound: int = DEFAULT_BOUND, allow_extended: bool = False,
                       jobs: int = 1) -> list[FiniteLattice]:
    """All lattices with ``n`` elements up to isomorphism, sorted by canonical code.

    Sizes above ``bound`` raise :class:`BoundExceeded`; ``allow_extended``
    lifts the bound to 8.
    """
    limit = max(bound, EXTENDED_BOUND) if allow_extended else bound
    if n < 1:
        raise ValueError("lattices have at least one element")
    if n > limit:
        raise BoundExceeded(f"size {n} exceeds the catalog bound {limit}")
    return [_lattice(c, n, k) for k, c in enumerate(_codes(n, jobs))]


def catalog(max_n: int, bound: int = DEFAULT_BOUND, allow_extended: bool = False, jobs: int = 1) -> list[FiniteLattice]:
    return [L for n in range(1, max_n + 1) for L in enumerate_lattices(n, bound, allow_extended, jobs)]


# brute-force oracle


def _is_lattice_order(R) -> bool:
    n = len(R)
    for a in range(n):
        for b in range(a + 1, n):
            ub = [c for c in range(n) if R[a][c] and R[b][c]]
            if not any(all(R[c][d] for d in ub) for c in ub):
                return False
    return True


def brute_force_lattices(n: int, limit: int = 6) -> list[list[list[bool]]]:
    """Every lattice order on ``n`` points, one per isomorphism class.

    Tries every relation among the middle elements, keeps the transitive
    ones with joins, and deduplicates by the minimum code over all
    permutations.  Independent of the generator above.  Sizes above
    ``limit`` raise :class:`BoundExceeded`; size 7 takes a few seconds.
    """
    if n > limit:
        raise BoundExceeded(f"the brute-force oracle stops at {limit} elements")
    if n <= 2:
        return [[[a <= b for b in range(n)] for a in range(n)]]
    mid = list(range(1, n - 1))
    pairs = list(itertools.combinations(mid, 2))
    seen, out = set(), []
    for rels in itertools.product(range(3), repeat=len(pairs)):
        R = [[a == b or a == 0 or b == n - 1 for b in range(n)] for a in range(n)]
        for (a, b), r in zip(pairs, rels):
            if r == 1:
                R[a][b] = True
            elif r == 2:
                R[b][a] = True
        if any(R[a][c] and R[c][b] and not R[a][b] for a in range(n) for b in range(n) for c in range(n)):
            continue
        if not _is_lattice_order(R):
            continue
        key = min(tuple(int(R[p[a]][p[b]]) for a in range(n) for b in range(n))
                  for p in ([0, *q, n - 1] for q in itertools.permutations(mid)))
        if key not in seen:
            seen.add(key)
            out.append(R)
    return out


# property suites


SUITES = {
    "a": "permutable congruences agree with the criterion",
    "b": "congruence-splitting implies permutable",
    "c": "split-built URP₁ witnesses validate on permutable lattices",
    "d": "split-built URP₁⁻ witnesses validate on almost permutable lattices",
    "e": "Con L is distributive",
    "f": "lower adjoint of the upper adjoint of Con f is Con f for inclusions",
}
SUITE_ALIASES = {
    "proposition": "a", "splitting": "b", "urp1": "c", "urp1-minus": "d", "distributive": "e", "adjoint": "f",
}
MAX_FAMILY = 2


def _families(C, eps: int, size: int):
    pairs = [(a, b) for a in range(len(C)) for b in range(len(C)) if C.lattice.join[a][b] == eps]
    return itertools.product(pairs, repeat=size)


def _suite_a(L):
    p, q = has_permutable_congruences(L), permutable_via_criterion(L)
    return 1, ([] if p.ok == q.ok else [{"permutable": p.ok, "criterion": q.ok}])


def _suite_b(L):
    s = is_congruence_splitting(L)
    if not s.ok:
        return 0, []
    p = has_permutable_congruences(L)
    return 1, ([] if p.ok else [{"witness": p.witness}])


def _principal_pairs(L):
    return [(u, v) for u in range(L.size) for v in range(L.size) if u != v and L.leq[u][v]]


def _suite_c(L):
    if not has_permutable_congruences(L):
        return 0, []
    C = con_lattice(L)
    checked, bad = 0, []
    for u, v in _principal_pairs(L):
        eps = C.theta(u, v)
        for size in range(1, MAX_FAMILY + 1):
            for fam in _families(C, eps, size):
                xs = [next(iter(find_splits(L, u, v, C[a], C[b])), None) for a, b in fam]
                checked += 1
                if None in xs:
                    bad.append({"u": u, "v": v, "family": fam, "reason": "no split"})
                    continue
                try:
                    urp1_witness_from_splitting(L, u, v, fam, xs)
                except WitnessCheckFailed as exc:
                    bad.append({"u": u, "v": v, "family": fam, "reason": str(exc)})
    return checked, bad


def _suite_d(L):
    if not has_almost_permutable_congruences(L):
        return 0, []
    C = con_lattice(L)
    checked, bad = 0, []
    for u, v in _principal_pairs(L):
        eps = C.theta(u, v)
        for size in range(1, MAX_FAMILY + 1):
            for fam in _families(C, eps, size):
                checked += 1
                split = orient_and_split(L, u, v, fam)
                if split is None:
                    bad.append({"u": u, "v": v, "family": fam, "reason": "no split in either orientation"})
                    continue
                X, xs = split
                try:
                    urp1_minus_witness_from_chain_splits(L, u, v, fam, X, xs)
                except WitnessCheckFailed as exc:
                    bad.append({"u": u, "v": v, "family": fam, "reason": str(exc)})
    return checked, bad


def _suite_e(L):
    return 1, ([] if is_distributive(con_lattice(L).lattice) else [{"size": len(con_lattice(L))}])


def _sublattices(L):
    n = L.size
    for r in range(1, n + 1):
        for S in itertools.combinations(range(n), r):
            s = set(S)
            if all(L.join[a][b] in s and L.meet[a][b] in s for a in S for b in S):
                yield list(S)


def _suite_f(L):
    checked, bad = 0, []
    for members in _sublattices(L):
        _, incl = induced_sublattice(L, members)
        cf = con_functor_map(incl).as_monotone()
        back = lower_adjoint(upper_adjoint(cf))
        checked += 1
        if tuple(back.map) != tuple(cf.map):
            bad.append({"sublattice": members})
    return checked, bad


_SUITE_FUNCS = {"a": _suite_a, "b": _suite_b, "c": _suite_c, "d": _suite_d, "e": _suite_e, "f": _suite_f}


def _suite_key(name: str) -> str:
    key = SUITE_ALIASES.get(name, name)
    if key not in _SUITE_FUNCS:
        raise ConlatError(f"unknown suite {name!r}; choose from {sorted(_SUITE_FUNCS)} or 'all'")
    return key


def _run_one(args):
    key, code, name = args
    L = lattice_from_leq(_decode(code), name=name)
    checked, bad = _SUITE_FUNCS[key](L)
    return checked, [{"lattice": name, **b} for b in bad]


def _code_of(L: FiniteLattice) -> Code:
    return getattr(L, "catalog_code", None) or tuple(int(x) for row in L.leq for x in row)


@dataclass
class SuiteOutcome:
    suite: str
    lattices: int
    checked: int
    counterexamples: list = field(default_factory=list)


def _sweep(key: str, lattices, jobs: int) -> SuiteOutcome:
    items = [(key, _code_of(L), L.name or f"#{k}") for k, L in enumerate(lattices)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, items, chunksize=4))
    else:
        results = [_run_one(it) for it in items]
    out = SuiteOutcome(key, len(items), 0)
    for checked, bad in results:
        out.checked += checked
        out.counterexamples.extend(bad)
    return out


def run_property_suite(suite: str, lattices, jobs: int = 1) -> Report:
    """Sweep one suite (``a``..``f``, an alias, or ``all``) over ``lattices``.

    ``lattices`` may be an int, meaning the catalog up to that size.
    """
    if isinstance(lattices, int):
        lattices = catalog(lattices)
    keys = sorted(_SUITE_FUNCS) if suite == "all" else [_suite_key(suite)]
    rep = Report(f"catalog suite {suite}")
    for key in keys:
        res = _sweep(key, lattices, jobs)
        rep.add(f"({key}) {SUITES[key]}", not res.counterexamples,
                {"lattices": res.lattices, "instances": res.checked,
                 "counterexamples": len(res.counterexamples), "first": res.counterexamples[:3]})
    return rep.finish()


def verify_counts(max_n: int = 6, jobs: int = 1) -> Report:
    """Compare generated counts against the brute-force oracle, size by size."""
    rep = Report("catalog counts")
    for n in range(1, max_n + 1):
        gen = enumerate_lattices(n, jobs=jobs)
        oracle = brute_force_lattices(n)
        gen_keys = sorted(canonical_code(L.leq) for L in gen)
        oracle_keys = sorted(canonical_code(R) for R in oracle)
        rep.add(f"size {n}: generator and oracle agree", gen_keys == oracle_keys,
                {"generated": len(gen), "oracle": len(oracle)})
    return rep.finish()


# lifting search


@dataclass
class NotFoundWithinBound:
    max_size: int
    assignments: int
    reason: str = "no lifting among catalog lattices within the bound"

    def __bool__(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"found": False, "max_size": self.max_size, "assignments": self.assignments, "reason": self.reason}


@dataclass
class LiftingFound:
    diagram: Diagram
    iso: DiagramIso
    assignments: int

    def to_json(self) -> dict:
        return {
            "found": True,
            "assignments": self.assignments,
            "objects": {o: {"name": L.name, "size": L.size, "covers": [list(c) for c in L.covers]}
                        for o, L in self.diagram.objects.items()},
            "arrows": {f"{p}->{q}": list(h.map) for (p, q), h in self.diagram.arrows.items()},
            "iso": self.iso.to_json(),
        }


def _con_matches(L: FiniteLattice, S: FiniteJoinSemilattice0) -> bool:
    C = con_lattice(L)
    if len(C) != S.size:
        return False
    return next(iter_order_isos(C.semilattice.leq, S.leq), None) is not None


def search_liftings(target: Diagram, max_size: int, iso_edges=(), bound: int = DEFAULT_BOUND,
                    allow_extended: bool = False):
    """Bounded search for a lattice diagram whose congruence image is ``target``.

    Objects range over catalog lattices with at most ``max_size`` elements
    whose congruence semilattice matches; arrows over all homomorphisms on
    the covers.  Edges in ``iso_edges`` must be sent to isomorphisms.  A
    found lifting is re-checked with :func:`verify_diagram_iso`.
    """
    limit = max(bound, EXTENDED_BOUND) if allow_extended else bound
    if max_size > limit:
        raise BoundExceeded(f"size {max_size} exceeds the catalog bound {limit}")
    pool = catalog(max_size, bound=limit)
    idx = target.index
    objs = idx.bottom_up()
    cands = {o: [L for L in pool if _con_matches(L, target.objects[o])] for o in objs}
    covers = list(idx.covers)
    iso_edges = [tuple(e) for e in iso_edges]
    tried = 0
    if any(not cands[o] for o in objs):
        return NotFoundWithinBound(max_size, 0, "some object has no lattice with matching congruences")
    for choice in itertools.product(*(cands[o] for o in objs)):
        objects = dict(zip(objs, choice))
        homs = [list(iter_homs(objects[p], objects[q])) for p, q in covers]
        for hs in itertools.product(*homs):
            tried += 1
            d = Diagram(idx, objects, dict(zip(covers, hs)))
            if not d.is_commutative():
                continue
            if any(not (d.arrow(p, q).is_injective() and d.arrow(p, q).is_surjective()) for p, q in iso_edges):
                continue
            img = con_image(d)
            iso = diagram_isomorphism(img, target)
            if iso is None:
                continue
            if not verify_diagram_iso(img, target, iso):
                raise WitnessCheckFailed("lifting search produced an isomorphism that does not verify")
            return LiftingFound(d, iso, tried)
    return NotFoundWithinBound(max_size, tried)
