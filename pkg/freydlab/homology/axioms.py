"""
User relative homologies: data, axiom checks, and the universal category A(K).

A relative homology K assigns an R-module to every Nori vertex (X,Y)@i, a map
to every square in every degree and a boundary to every triple. Missing
values are zero modules; missing maps are identities on identity squares and
zero otherwise.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Set

from ..coeff import FPModule, Mat, ModuleMap, Ring, is_exact_at
from ..diagram import NoriDiagram, PairCat, nori_diagram, vertex_name
from ..errors import AxiomFailure, NoInitial
from ..freyd import AbMor, HomModule, Presentation
from ..quotient import Answer, ModuleRealization, QuotientHom, SerreQuotient, realization_quotient, realize
from .graded import realization_agrees
from .relative import RelUniversalCat

logger = logging.getLogger(__name__)

IDENTITY = "identity"
FUNCTORIALITY = "functoriality"
CHAIN = "chain"
EXACTNESS = "exactness"
NATURALITY = "naturality"
WELL_DEFINED = "well_defined"
SHAPE = "shape"

CONDITIONS = (SHAPE, WELL_DEFINED, IDENTITY, FUNCTORIALITY, CHAIN, EXACTNESS, NATURALITY)


@dataclass(frozen=True)
class RelHomologyData:
    """Modules per Nori vertex, maps per (square, degree) and per (triple, degree)."""

    nori: NoriDiagram
    ring: Ring
    values: Dict[str, FPModule] = field(default_factory=dict)
    gammas: Dict[str, ModuleMap] = field(default_factory=dict)
    boundaries: Dict[str, ModuleMap] = field(default_factory=dict)

    @property
    def pairs(self) -> PairCat:
        return self.nori.pairs

    def value(self, pair: str, degree: int) -> FPModule:
        return self.values.get(vertex_name(pair, degree), FPModule.zero(self.ring))

    def gamma(self, square: str, degree: int) -> ModuleMap:
        label = self.nori.gamma_label(square, degree)
        if label in self.gammas:
            return self.gammas[label]
        pm = self.pairs.morphism(square)
        src, dst = self.value(pm.source, degree), self.value(pm.target, degree)
        return src.identity() if self.pairs.is_identity(square) else src.zero_map(dst)

    def boundary(self, triple: str, degree: int) -> ModuleMap:
        label = self.nori.boundary_label(triple, degree)
        if label in self.boundaries:
            return self.boundaries[label]
        t = self.nori.triple(triple)
        return self.value(t.upper, degree).zero_map(self.value(t.lower, degree - 1))

    def vertex_values(self) -> Dict[str, FPModule]:
        return {v: self.values.get(v, FPModule.zero(self.ring)) for v in self.nori.vertices}

    def edge_maps(self) -> Dict[str, ModuleMap]:
        """Maps on the edges of the Nori quiver."""
        nori, pairs = self.nori, self.pairs
        a, b = nori.window
        edges = {}
        for i in nori.degrees:
            for pm in pairs.morphisms:
                if not pairs.is_identity(pm.name):
                    edges[nori.gamma_label(pm.name, i)] = self.gamma(pm.name, i)
        for i in range(a + 1, b + 1):
            for t in nori.triples:
                edges[nori.boundary_label(t.name, i)] = self.boundary(t.name, i)
        return edges

    # ------------------------------------------------------------------
    # edits
    # ------------------------------------------------------------------
    def _matrix(self, src: FPModule, dst: FPModule, rows: Sequence[Sequence[Any]]) -> ModuleMap:
        return ModuleMap(src, dst, Mat(self.ring, dst.generators, src.generators, rows))

    def with_value(self, pair: str, degree: int, module: FPModule) -> "RelHomologyData":
        self.nori.vertex(pair, degree)
        return replace(self, values={**self.values, vertex_name(pair, degree): module})

    def with_gamma(self, square: str, degree: int, rows: Sequence[Sequence[Any]]) -> "RelHomologyData":
        self.nori.check_degree(degree)
        pm = self.pairs.morphism(square)
        f = self._matrix(self.value(pm.source, degree), self.value(pm.target, degree), rows)
        return replace(self, gammas={**self.gammas, self.nori.gamma_label(square, degree): f})

    def with_boundary(self, triple: str, degree: int, rows: Sequence[Sequence[Any]]) -> "RelHomologyData":
        self.nori.boundary_morphism(triple, degree)
        t = self.nori.triple(triple)
        f = self._matrix(self.value(t.upper, degree), self.value(t.lower, degree - 1), rows)
        return replace(self, boundaries={**self.boundaries, self.nori.boundary_label(triple, degree): f})

    @classmethod
    def almost_trivial(cls, nori: NoriDiagram, ring: Ring, k: int) -> "RelHomologyData":
        """
        H_k(X, 0) = R for X not initial, every other value zero, with identity maps between the R's.

        Raises:
            NoInitial: When the base has no strictly initial object
        """
        nori.check_degree(k)
        pairs = nori.pairs
        C = pairs.base
        if not C.strictly_initial_objects():
            raise NoInitial(f"{C.name} has no strictly initial object")
        initials = set(C.initial_objects())
        R = FPModule.free(ring, 1)
        alive = {p.name for p in pairs.pairs if p.bottom in initials and p.top not in initials}
        values = {vertex_name(p, k): R for p in alive}
        gammas = {
            nori.gamma_label(pm.name, k): R.identity()
            for pm in pairs.morphisms
            if pm.source in alive and pm.target in alive and not pairs.is_identity(pm.name)
        }
        return cls(nori, ring, values, gammas)


def almost_trivial(pairs: PairCat, ring: Ring, window: Sequence[int], k: int) -> RelHomologyData:
    return RelHomologyData.almost_trivial(nori_diagram(pairs, (window[0], window[1])), ring, k)


# ----------------------------------------------------------------------
# the axioms
# ----------------------------------------------------------------------
@dataclass
class AxiomReport:
    violations: List[Dict[str, Any]] = field(default_factory=list)
    checked: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def conditions(self) -> Set[str]:
        return {v["condition"] for v in self.violations}

    def add(self, condition: str, degree: int, **where: Any) -> None:
        self.violations.append({"condition": condition, "degree": degree, **where})

    def count(self, condition: str) -> None:
        self.checked[condition] = self.checked.get(condition, 0) + 1

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": list(self.violations), "checked": dict(self.checked)}


def _shapes_fit(f: ModuleMap, src: FPModule, dst: FPModule) -> bool:
    return f.src == src and f.dst == dst


def check_axioms(K: RelHomologyData) -> AxiomReport:
    """
    Check that K is a relative homology on its window.

    Every violation names its condition, the degree, and the offending square,
    triple or cube; ``exactness`` violations also name the spot of the long sequence.
    """
    report = AxiomReport()
    nori, pairs = K.nori, K.pairs
    a, b = nori.window

    for i in nori.degrees:
        for pm in pairs.morphisms:
            f = K.gamma(pm.name, i)
            report.count(SHAPE)
            if not _shapes_fit(f, K.value(pm.source, i), K.value(pm.target, i)):
                report.add(SHAPE, i, square=pm.name)
                continue
            report.count(WELL_DEFINED)
            if not f.is_well_defined():
                report.add(WELL_DEFINED, i, square=pm.name)
    for i in range(a + 1, b + 1):
        for t in nori.triples:
            d = K.boundary(t.name, i)
            report.count(SHAPE)
            if not _shapes_fit(d, K.value(t.upper, i), K.value(t.lower, i - 1)):
                report.add(SHAPE, i, triple=t.name)
            elif not d.is_well_defined():
                report.add(WELL_DEFINED, i, triple=t.name)
    if report.violations:
        logger.info(f"Homology data is malformed: {len(report.violations)} violations")
        return report

    for i in nori.degrees:
        for p in pairs.pairs:
            report.count(IDENTITY)
            if not K.gamma(pairs.identity(p.name), i).equals(K.value(p.name, i).identity()):
                report.add(IDENTITY, i, square=pairs.identity(p.name))
        for f in pairs.morphisms:
            if pairs.is_identity(f.name):
                continue
            for g in pairs.category.outgoing(f.target):
                if pairs.is_identity(g):
                    continue
                report.count(FUNCTORIALITY)
                gf = pairs.compose(g, f.name)
                if not K.gamma(gf, i).equals(K.gamma(g, i).compose(K.gamma(f.name, i))):
                    report.add(FUNCTORIALITY, i, squares=[g, f.name])

    for t in nori.triples:
        for i in nori.degrees:
            alpha, beta = K.gamma(t.alpha, i), K.gamma(t.beta, i)
            report.count(CHAIN)
            if not beta.compose(alpha).is_zero():
                report.add(CHAIN, i, triple=t.name, composite="βα")
            report.count(EXACTNESS)
            if not is_exact_at(alpha, beta):
                report.add(EXACTNESS, i, triple=t.name, spot="middle")
        for i in range(a + 1, b + 1):
            d = K.boundary(t.name, i)
            beta, alpha_below = K.gamma(t.beta, i), K.gamma(t.alpha, i - 1)
            report.count(CHAIN)
            if not d.compose(beta).is_zero():
                report.add(CHAIN, i, triple=t.name, composite="∂β")
            report.count(CHAIN)
            if not alpha_below.compose(d).is_zero():
                report.add(CHAIN, i, triple=t.name, composite="α∂")
            report.count(EXACTNESS)
            if not is_exact_at(beta, d):
                report.add(EXACTNESS, i, triple=t.name, spot="upper")
            report.count(EXACTNESS)
            if not is_exact_at(d, alpha_below):
                report.add(EXACTNESS, i - 1, triple=t.name, spot="lower")

    for i in range(a + 1, b + 1):
        for cube in nori.cubes:
            report.count(NATURALITY)
            lhs = K.gamma(cube.gamma, i - 1).compose(K.boundary(cube.source, i))
            rhs = K.boundary(cube.target, i).compose(K.gamma(cube.delta, i))
            if not lhs.equals(rhs):
                report.add(NATURALITY, i, cube=[cube.source, cube.target], squares=[cube.gamma, cube.delta])

    if report.ok:
        logger.info(f"Homology data satisfies the axioms ({sum(report.checked.values())} checks)")
    else:
        logger.info(f"Homology data violates {', '.join(sorted(report.conditions()))}")
    return report


# ----------------------------------------------------------------------
# A(K)
# ----------------------------------------------------------------------
class UniversalFromData:
    """A(K) = Ab(Nori) / ker F_K with the universal relative homology projected into it."""

    def __init__(self, data: RelHomologyData, RU: RelUniversalCat, realization: ModuleRealization,
                 quotient: SerreQuotient):
        self.data = data
        self.RU = RU
        self.realization = realization
        self.quotient = quotient

    def H(self, pair: str, degree: int) -> Presentation:
        return self.RU.H(pair, degree)

    def is_zero(self, X: Presentation) -> Answer:
        return self.quotient.is_zero(X)

    def hom(self, X: Presentation, Y: Presentation, stages: Optional[int] = None) -> QuotientHom:
        return self.quotient.hom(X, Y, stages)

    def base_hom(self, X: Presentation, Y: Presentation) -> HomModule:
        return self.RU.base.hom(X, Y)

    def value(self, X: Presentation) -> FPModule:
        return self.realization.obj(X)

    def map_value(self, f: AbMor) -> ModuleMap:
        return self.realization.mor(f)

    def comparison_holds(self) -> bool:
        """F_K(H) equals K on every vertex and on every edge of the Nori diagram."""
        cat = self.RU.category
        maps = {cat.edge_morphism(label): f for label, f in self.data.edge_maps().items()}
        return realization_agrees(self.realization, maps)


def universal_from(K: RelHomologyData, RU: Optional[RelUniversalCat] = None) -> UniversalFromData:
    """
    The universal category generated by a relative homology K, in realization mode.

    Raises:
        AxiomFailure: When K is not a relative homology
    """
    report = check_axioms(K)
    if not report.ok:
        raise AxiomFailure(
            f"homology data violates {', '.join(sorted(report.conditions()))}", report.violations
        )
    RU = RU if RU is not None else RelUniversalCat(K.nori, K.ring)
    F = realize_homology(RU, K)
    return UniversalFromData(K, RU, F, realization_quotient(F, bounds=RU.quotient.bounds))


def realize_homology(RU: RelUniversalCat, K: RelHomologyData) -> ModuleRealization:
    """F_K on A_∂(C) (K must live on the same Nori diagram)."""
    return realize(RU.base, K.vertex_values(), edges=K.edge_maps(), name="K")
