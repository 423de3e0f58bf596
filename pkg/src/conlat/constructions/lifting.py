"""A finite lattice cube whose congruence image is the five-point cube.

Every lattice is realized as the sublattice of ``2⁴ × S`` generated by the
tuples of a generator subset, so all arrows are literal inclusions and the
congruences ``ρ_k`` are kernels of the coordinate projections.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..congruence import (
    Congruence,
    con_lattice,
    has_almost_permutable_congruences,
    has_permutable_congruences,
    is_simple,
    meet_cong,
    res_of,
)
from ..diagram import Diagram, DiagramIso, con_image, cube, diagram_isomorphism
from ..lattice import (
    FiniteLattice,
    LatticeHom,
    S_LABELS,
    boolean,
    chain,
    is_isomorphic,
    is_modular,
    product_many,
    s_lattice,
    sublattice_closure,
)
from ..report import Report
from .cube import CubeData, PSI_TABLE, build_dc

GENERATORS = ("a", "b", "c", "d", "e", "u", "v")
# generator -> (f_0, f_1, f_2, f_3, f_4); the last coordinate is a label of S
GENERATOR_TUPLES = {
    "a": (0, 0, 0, 0, "0"),
    "b": (1, 1, 1, 1, "1"),
    "c": (1, 0, 1, 0, "p"),
    "d": (1, 1, 0, 0, "q"),
    "e": (0, 1, 1, 0, "r"),
    "u": (1, 1, 1, 1, "p'"),
    "v": (1, 1, 1, 1, "r'"),
}
X_SETS = {0: "abce", 1: "abcd", 2: "abde"}
Y_SETS = {0: "abd", 1: "abe", 2: "abc"}
Y_SET = "ab"

# kernels on K_i that become the two coatoms: (ρ'_{i,k} equal to ᾱ_i, equal to β̄_i)
KI_COATOMS = {0: ((2, 3), (0, 1)), 1: ((1, 2), (0, 3)), 2: ((1, 3), (0, 2))}
# ρ_{j,4} as a meet of ρ_{j,k}
RHO4_MEETS = {0: (0, 1), 1: (0, 1, 3), 2: (0, 2)}


@dataclass
class LiftingData:
    ambient: FiniteLattice
    coords: list
    factors: list
    gen_index: dict
    P: tuple = None
    L: list = field(default_factory=list)
    K_i: list = field(default_factory=list)
    K: tuple = None
    diagram: Diagram | None = None

    def realized(self):
        """(name, lattice, inclusion into the ambient product) for all eight lattices."""
        out = [("K", *self.K)]
        out += [(f"K{i}", *self.K_i[i]) for i in range(3)]
        out += [(f"L{j}", *self.L[j]) for j in range(3)]
        out.append(("P", *self.P))
        return out


def _realize(ld: LiftingData, letters: str, name: str):
    gens = [ld.gen_index[g] for g in letters]
    return sublattice_closure(ld.ambient, gens, name=name)


def _inclusion(small, big) -> LatticeHom:
    pos = {m: k for k, m in enumerate(big[1].map)}
    return LatticeHom(small[0], big[0], [pos[m] for m in small[1].map])


def build_lifting() -> LiftingData:
    factors = [chain(2)] * 4 + [s_lattice()]
    amb, coords = product_many(factors)
    index = {c: i for i, c in enumerate(coords)}
    gen_index = {}
    for g, tup in GENERATOR_TUPLES.items():
        key = tuple(tup[:4]) + (S_LABELS.index(tup[4]),)
        gen_index[g] = index[key]
    ld = LiftingData(amb, coords, factors, gen_index)
    ld.P = _realize(ld, "".join(GENERATORS), "P")
    ld.L = [_realize(ld, X_SETS[j], f"L{j}") for j in range(3)]
    ld.K_i = [_realize(ld, Y_SETS[i], f"K{i}") for i in range(3)]
    ld.K = _realize(ld, Y_SET, "K")
    objects = {"bot": ld.K[0], "top": ld.P[0]}
    arrows = {}
    for i in range(3):
        objects[f"a{i}"] = ld.K_i[i][0]
        arrows[("bot", f"a{i}")] = _inclusion(ld.K, ld.K_i[i])
    for j in range(3):
        objects[f"c{j}"] = ld.L[j][0]
        arrows[(f"c{j}", "top")] = _inclusion(ld.L[j], ld.P)
        for i in range(3):
            if i != j:
                arrows[(f"a{i}", f"c{j}")] = _inclusion(ld.K_i[i], ld.L[j])
    ld.diagram = Diagram(cube(), objects, arrows)
    return ld


def projection_kernel(ld: LiftingData, realized, k: int) -> Congruence:
    """Kernel of the k-th coordinate projection restricted to a realized lattice."""
    R, incl = realized
    vals = [ld.coords[m][k] for m in incl.map]
    first = {}
    return Congruence(R, [first.setdefault(v, x) for x, v in enumerate(vals)])


def _coatom_set(C) -> set[int]:
    return set(C.lattice.coatoms)


def _boolean_of_rank(C, r: int) -> bool:
    return len(C) == 2 ** r and is_isomorphic(C.lattice, boolean(r)) is not None


def permutability_audit(ld: LiftingData | None = None) -> Report:
    ld = ld or build_lifting()
    rep = Report("permutability audit")
    for name, R, _ in ld.realized():
        perm = has_permutable_congruences(R)
        almost = has_almost_permutable_congruences(R)
        if name.startswith("K") and len(name) == 2:
            rep.add(f"{name} almost permutable, not permutable", bool(almost) and not perm,
                    {"permutable": perm.ok, "almost": almost.ok, "size": R.size})
        else:
            rep.add(f"{name} permutability recorded", "pass",
                    {"permutable": perm.ok, "almost": almost.ok, "size": R.size})
    rep.add("some K_i is not permutable", any(not has_permutable_congruences(ld.K_i[i][0]) for i in range(3)))
    return rep.finish()


def verify_lifting(ld: LiftingData | None = None, dc: CubeData | None = None) -> Report:
    ld = ld or build_lifting()
    dc = dc or build_dc()
    rep = Report("verify lifting")
    rep.add("sizes", "pass", {name: R.size for name, R, _ in ld.realized()})

    # realization soundness: projections of P onto each factor
    for k, A in enumerate(ld.factors):
        img = sorted({ld.coords[m][k] for m in ld.P[1].map})
        gens = sorted({ld.coords[ld.gen_index[g]][k] for g in GENERATORS})
        sub, incl = sublattice_closure(A, gens)
        rep.add(f"P projects onto the generated part of factor {k}", img == sorted(incl.map),
                {"image": [A.label(x) for x in img]})

    # K
    CK = con_lattice(ld.K[0])
    rep.add("|Con K| = 2", len(CK) == 2, {"size": len(CK)})

    # K_i
    for i in range(3):
        R = ld.K_i[i]
        C = con_lattice(R[0])
        rho = [projection_kernel(ld, R, k) for k in range(5)]
        to_a, to_b = KI_COATOMS[i]
        abar, bbar = rho[to_a[0]], rho[to_b[0]]
        same = rho[to_a[0]] == rho[to_a[1]] and rho[to_b[0]] == rho[to_b[1]]
        coat = _coatom_set(C)
        ok = (same and abar != bbar and C.index_of(abar) in coat and C.index_of(bbar) in coat
              and meet_cong(abar, bbar).is_identity)
        rep.add(f"|Con K{i}| = 4", len(C) == 4, {"size": len(C)})
        rep.add(f"K{i}: ρ'{i},{to_a[0]} = ρ'{i},{to_a[1]} and ρ'{i},{to_b[0]} = ρ'{i},{to_b[1]} are the coatoms",
                ok, {"alpha_bar": abar.blocks_str(), "beta_bar": bbar.blocks_str()})
        rep.add(f"K{i} is a 3-element chain", is_isomorphic(R[0], chain(3)) is not None, {"size": R[0].size})

    # L_j
    for j in range(3):
        R = ld.L[j]
        C = con_lattice(R[0])
        rho = [projection_kernel(ld, R, k) for k in range(5)]
        coat = _coatom_set(C)
        rep.add(f"|Con L{j}| = 16", len(C) == 16, {"size": len(C)})
        rep.add(f"Con L{j} ≅ 2^4", _boolean_of_rank(C, 4))
        rep.add(f"ρ{j},k (k<4) are the distinct coatoms of Con L{j}",
                {C.index_of(r) for r in rho[:4]} == coat and len(coat) == 4)
        m = rho[RHO4_MEETS[j][0]]
        for k in RHO4_MEETS[j][1:]:
            m = meet_cong(m, rho[k])
        text = "∧".join(f"ρ{j},{k}" for k in RHO4_MEETS[j])
        rep.add(f"ρ{j},4 = {text}", m == rho[4])
        img = sorted({ld.coords[x][4] for x in R[1].map})
        rep.add(f"range of f{j},4", "pass", {"range": [S_LABELS[x] for x in img]})

    # P
    CP = con_lattice(ld.P[0])
    rhoP = [projection_kernel(ld, ld.P, k) for k in range(5)]
    rep.add("|Con P| = 32", len(CP) == 32, {"size": len(CP)})
    rep.add("Con P ≅ 2^5", _boolean_of_rank(CP, 5))
    rep.add("ρk (k<5) are the distinct coatoms of Con P", {CP.index_of(r) for r in rhoP} == _coatom_set(CP)
            and len(_coatom_set(CP)) == 5)

    # restriction maps on coatoms
    d = ld.diagram
    for j in range(3):
        h = d.arrow(f"c{j}", "top")
        rhoL = [projection_kernel(ld, ld.L[j], k) for k in range(5)]
        ok = all(res_of(h, rhoP[k]) == rhoL[k] for k in range(5))
        rep.add(f"Res h{j}(ρk) = ρ{j},k for k < 5", ok)
    psi_ok, bad = True, []
    for (j, i), (to_a, to_b) in PSI_TABLE.items():
        g = d.arrow(f"a{i}", f"c{j}")
        rhoL = [projection_kernel(ld, ld.L[j], k) for k in range(4)]
        rhoK = [projection_kernel(ld, ld.K_i[i], k) for k in range(5)]
        abar, bbar = rhoK[KI_COATOMS[i][0][0]], rhoK[KI_COATOMS[i][1][0]]
        for k in range(4):
            want = abar if k in to_a else bbar
            if res_of(g, rhoL[k]) != want:
                psi_ok = False
                bad.append([j, i, k])
    rep.add("Res g_ij acts on coatoms as ψ_j,i", psi_ok, {"bad": bad} if bad else None)
    for i in range(3):
        f = d.arrow("bot", f"a{i}")
        rhoK = [projection_kernel(ld, ld.K_i[i], k) for k in range(5)]
        coats = [rhoK[KI_COATOMS[i][0][0]], rhoK[KI_COATOMS[i][1][0]]]
        rep.add(f"Res f{i} sends both coatoms of Con K{i} to the identity",
                all(res_of(f, c).is_identity for c in coats))

    comm = d.is_commutative()
    rep.add("lattice cube commutes", comm.ok, comm.witness)
    img = con_image(d)
    iso = diagram_isomorphism(img, dc.diagram)
    rep.add("Con image ≅ five-point cube", iso is not None, iso.to_json() if iso is not None else None)

    S = s_lattice()
    rep.add("S is simple", is_simple(S))
    rep.add("S is not modular", not is_modular(S))
    rep.extend(permutability_audit(ld))
    return rep.finish()


def lifting_iso(ld: LiftingData | None = None, dc: CubeData | None = None) -> DiagramIso | None:
    ld = ld or build_lifting()
    dc = dc or build_dc()
    return diagram_isomorphism(con_image(ld.diagram), dc.diagram)
