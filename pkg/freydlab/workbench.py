"""Build targets over a session and answer queries about their objects.

Object and morphism expressions:

    H_i(x)          graded homology of an object (targets homology, point, kproj)
    H_i(m)          graded homology of a morphism
    H_i(X,Y)        relative homology of a pair, by label or by name (relative, add, from-K)
    gamma_i(s)      a square of pairs in degree i
    d_i(<f,g>)      the boundary of a triple out of degree i
    H^i(X,Y)        cohomology (dual), with gamma^i and d^i
"""

import logging
import re
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .coeff.ring import INTEGERS
from .codec import encode_abmor, encode_answer, encode_hom, encode_presentation
from .config import Bounds, get_config
from .errors import (
    CertificateError,
    FormalModeUnsupported,
    FreydLabError,
    NotACoproduct,
    NotSubcategory,
    SessionError,
)
from .freyd import AbCat, AbMor, HomModule, Presentation, base_change_to_rationals, evaluate_at_ring
from .freyd.point import is_point
from .homology import (
    GradedAbCat,
    GradedKProjection,
    GradedMorphism,
    GradedObject,
    GradedQuotient,
    RelCohomology,
    RelUniversalCat,
    UniversalFromData,
    additive_quotient,
    check_axioms,
    coproduct_row,
    graded_k_projection,
    point_quotient,
    universal_cohomology,
    universal_from,
    universal_homology,
)
from .quotient import NO, UNKNOWN, YES, Answer, Certificate, SerreQuotient
from .session import Session

logger = logging.getLogger(__name__)

_EXPR = re.compile(r"^\s*(H|gamma|d)\s*([_^])\s*\{?\s*(-?\d+)\s*\}?\s*\((.*)\)\s*$")


def parse_expression(text: str) -> Tuple[str, str, int, str]:
    """
    Split an expression into (head, variance, degree, argument).

    Raises:
        SessionError: When the text is not an expression
    """
    m = _EXPR.match(text)
    if m is None:
        raise SessionError(f"cannot read expression '{text}'")
    head, mark, degree, arg = m.groups()
    return head, "lower" if mark == "_" else "upper", int(degree), arg.strip()


def _pair_key(arg: str) -> str:
    """``1,0`` and ``(1,0)`` are labels; anything else is a pair name."""
    key = arg.replace(" ", "")
    if key.startswith("(") or "," not in key:
        return key
    return f"({key})"


def _parallel(fn: Callable[[Any], Any], items: Sequence[Any], workers: int) -> List[Any]:
    """``fn`` over ``items`` in input order."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))


class Target(ABC):
    """A built universal category that can resolve expressions and answer queries."""

    name: str = ""
    variance: str = "lower"

    def __init__(self, workers: int = 1):
        self.workers = workers

    @property
    @abstractmethod
    def ab(self) -> AbCat:
        """The abelian category certificates are checked in."""

    @abstractmethod
    def obj(self, expr: str) -> Any:
        pass

    @abstractmethod
    def mor(self, expr: str) -> Any:
        pass

    @abstractmethod
    def is_zero(self, X: Any) -> Answer:
        pass

    @abstractmethod
    def hom(self, X: Any, Y: Any) -> Dict[str, Any]:
        pass

    @abstractmethod
    def kernel(self, f: Any) -> Dict[str, Any]:
        pass

    @abstractmethod
    def dump(self) -> Dict[str, Any]:
        pass

    def generators(self, degree: Optional[int] = None) -> List[Presentation]:
        raise FreydLabError(f"target '{self.name}' has no certificates")

    def evaluate(self, X: Any) -> Dict[str, Any]:
        raise FreydLabError(f"target '{self.name}' has no realizations to evaluate")

    def _parse(self, expr: str, heads: Sequence[str]) -> Tuple[str, int, str]:
        head, variance, degree, arg = parse_expression(expr)
        if head not in heads or variance != self.variance:
            raise SessionError(f"'{expr}' is not an expression for target '{self.name}'")
        return head, degree, arg


# ----------------------------------------------------------------------
# graded targets
# ----------------------------------------------------------------------
class GradedTarget(Target):
    """A(C), optionally with a per-degree quotient."""

    def __init__(self, graded: GradedAbCat, quotient: Optional[GradedQuotient] = None, name: str = "homology",
                 realizations: Sequence[Any] = (), workers: int = 1):
        super().__init__(workers)
        self.graded = graded
        self.quotient = quotient
        self.name = name
        self.realizations = list(realizations)

    @property
    def ab(self) -> AbCat:
        return self.graded.component

    def obj(self, expr: str) -> GradedObject:
        _, degree, x = self._parse(expr, ("H",))
        if x not in self.graded.category.objects:
            raise SessionError(f"'{x}' is not an object of {self.graded.category.name}")
        return self.graded.H(x, degree)

    def mor(self, expr: str) -> GradedMorphism:
        _, degree, m = self._parse(expr, ("H",))
        if not self.graded.category.has_morphism(m):
            raise SessionError(f"'{m}' is not a morphism of {self.graded.category.name}")
        return self.graded.H_morphism(m, degree)

    def is_zero(self, X: GradedObject) -> Answer:
        if self.quotient is not None:
            return self.quotient.is_zero(X)
        if self.graded.is_zero(X):
            return Answer(YES, Certificate.zero(X.obj))
        return Answer(NO, evidence={"separator": "identity"})

    def hom(self, X: GradedObject, Y: GradedObject) -> Dict[str, Any]:
        H = (self.quotient or self.graded).hom(X, Y)
        return encode_hom(H) if isinstance(H, HomModule) else {"description": H.describe()}

    def kernel(self, f: GradedMorphism) -> Dict[str, Any]:
        K, k = self.graded.kernel(f)
        return {
            "degree": K.degree,
            "object": encode_presentation(K.obj),
            "inclusion": encode_abmor(k.mor),
            "zero": self.graded.is_zero(K),
        }

    def generators(self, degree: Optional[int] = None) -> List[Presentation]:
        if self.quotient is None:
            return []
        if degree is None:
            raise FreydLabError("graded certificates need the degree they were issued in")
        return self.quotient.at(degree).gens.objects()

    def evaluate(self, X: GradedObject) -> Dict[str, Any]:
        ab = self.ab
        values = [{"realization": F.name, "degree": X.degree, "value": F.obj(X.obj).summary().describe()}
                  for F in self.realizations]
        out: Dict[str, Any] = {"realizations": values}
        if is_point(ab):
            out["at_ring"] = evaluate_at_ring(ab, X.obj).summary().describe()
            if ab.ring.kind == INTEGERS:
                target, Y = base_change_to_rationals(ab, X.obj)
                out["over_rationals"] = evaluate_at_ring(target, Y).summary().describe()
        return out

    def _objects(self) -> List[Tuple[str, GradedObject]]:
        G = self.graded
        return [(f"H_{i}({x})", G.H(x, i)) for i in G.degrees for x in G.category.objects]

    def _endomorphisms(self, X: GradedObject) -> Optional[str]:
        try:
            return self.hom(X, X)["description"]
        except FormalModeUnsupported:
            return None

    def dump(self) -> Dict[str, Any]:
        G = self.graded
        objects = self._objects()
        ends = _parallel(lambda item: self._endomorphisms(item[1]), objects, self.workers)
        table = []
        for (name, X), end in zip(objects, ends):
            row: Dict[str, Any] = {"name": name, "degree": X.degree, "zero": self.is_zero(X).status}
            if end is not None:
                row["endomorphisms"] = end
            table.append(row)
        out: Dict[str, Any] = {
            "target": self.name,
            "category": G.category.name,
            "ring": str(G.ring),
            "window": list(G.window),
            "objects": table,
        }
        if self.quotient is not None:
            out["generators"] = {str(i): self.quotient.at(i).gens.names() for i in G.degrees}
        return out


class KProjectionTarget(GradedTarget):
    """π_k: A(C) → Ab_R with its section."""

    def __init__(self, projection: GradedKProjection, workers: int = 1):
        super().__init__(projection.graded, name=f"kproj:{projection.k}", workers=workers)
        self.projection = projection

    def is_zero(self, X: GradedObject) -> Answer:
        return self.projection.is_zero(X)

    def hom(self, X: GradedObject, Y: GradedObject) -> Dict[str, Any]:
        k = self.projection.k
        if X.degree != k or Y.degree != k:
            return {"description": "0"}
        H = self.projection.quotient.hom(X.obj, Y.obj)
        return {"description": H.describe(), "stage": H.stage}

    def generators(self, degree: Optional[int] = None) -> List[Presentation]:
        return Target.generators(self, degree)

    def dump(self) -> Dict[str, Any]:
        P = self.projection
        out = super().dump()
        out["section_is_iso"] = P.check_section()
        for row, (_, X) in zip(out["objects"], self._objects()):
            row["projection"] = evaluate_at_ring(P.point, P.project(X)).summary().describe()
        return out


# ----------------------------------------------------------------------
# relative targets
# ----------------------------------------------------------------------
class RelativeTarget(Target):
    """A_∂(C) with its formal quotient (``relative``) or the additive one (``add``)."""

    def __init__(self, RU: RelUniversalCat, quotient: Optional[SerreQuotient] = None, name: str = "relative",
                 workers: int = 1):
        super().__init__(workers)
        self.RU = RU
        self.quotient = quotient if quotient is not None else RU.quotient
        self.name = name

    @property
    def ab(self) -> AbCat:
        return self.RU.base

    def _pair(self, arg: str) -> str:
        try:
            return self.RU.pair_name(_pair_key(arg))
        except KeyError as e:
            raise SessionError(str(e.args[0])) from None

    def obj(self, expr: str) -> Presentation:
        _, degree, arg = self._parse(expr, ("H",))
        return self.RU.H(self._pair(arg), degree)

    def mor(self, expr: str) -> AbMor:
        head, degree, arg = self._parse(expr, ("gamma", "d"))
        try:
            if head == "gamma":
                return self.RU.gamma(arg.replace(" ", ""), degree)
            return self.RU.boundary(arg.replace(" ", ""), degree)
        except KeyError as e:
            raise SessionError(f"unknown {'square' if head == 'gamma' else 'triple'} {e}") from None

    def is_zero(self, X: Presentation) -> Answer:
        return self.quotient.is_zero(X)

    def hom(self, X: Presentation, Y: Presentation) -> Dict[str, Any]:
        try:
            H = self.quotient.hom(X, Y)
            return {"description": H.describe(), "stage": H.stage}
        except FormalModeUnsupported:
            out = encode_hom(self.RU.base.hom(X, Y))
            out["scope"] = "base"
            return out

    def kernel(self, f: AbMor) -> Dict[str, Any]:
        K, k = self.RU.base.kernel(f)
        return {"object": encode_presentation(K), "inclusion": encode_abmor(k), "zero": self.RU.base.is_zero(K)}

    def generators(self, degree: Optional[int] = None) -> List[Presentation]:
        return self.quotient.gens.objects()

    def _objects(self) -> List[Tuple[str, Presentation]]:
        RU = self.RU
        return [(f"H_{i}{p.label}", RU.H(p.name, i)) for i in RU.degrees for p in RU.pairs.pairs]

    def _settled(self, X: Presentation) -> Answer:
        answer = self.quotient.settled(X)
        return answer if answer is not None else Answer(UNKNOWN)

    def dump(self) -> Dict[str, Any]:
        """Structure of A_∂(C); an object is "unknown" here until ``iszero`` searches for it."""
        RU = self.RU
        nori = RU.nori
        objects = self._objects()
        answers = _parallel(lambda item: self._settled(item[1]), objects, self.workers)
        kinds: Dict[str, List[str]] = {}
        for g in self.quotient.gens:
            kinds.setdefault(g.kind, []).append(g.name)
        return {
            "target": self.name,
            "category": RU.pairs.base.name,
            "ring": str(RU.ring),
            "window": list(RU.window),
            "vertices": len(nori.vertices),
            "edges": len(nori.quiver.edges),
            "triples": [t.name for t in nori.triples],
            "cubes": len(nori.cubes),
            "generators": kinds,
            "objects": [{"name": name, "zero": a.status, **({"certificate": repr(a.certificate)} if a.certificate else {})}
                        for (name, _), a in zip(objects, answers)],
        }


class CohomologyTarget(RelativeTarget):
    """The opposite of A_∂(C); zero questions are answered on the homology side."""

    variance = "upper"

    def __init__(self, RC: RelCohomology, workers: int = 1):
        super().__init__(RC.RU, name="dual", workers=workers)
        self.RC = RC
        self._origin: Dict[Presentation, Presentation] = {}

    @property
    def ab(self) -> AbCat:
        return self.RC.category

    def obj(self, expr: str) -> Presentation:
        _, degree, arg = self._parse(expr, ("H",))
        pair = self._pair(arg)
        X = self.RC.H(pair, degree)
        self._origin[X] = self.RU.H(pair, degree)
        return X

    def mor(self, expr: str) -> AbMor:
        head, degree, arg = self._parse(expr, ("gamma", "d"))
        if head == "gamma":
            return self.RC.gamma(arg.replace(" ", ""), degree)
        return self.RC.boundary(arg.replace(" ", ""), degree)

    def is_zero(self, X: Presentation) -> Answer:
        origin = self._origin.get(X)
        if origin is None:
            zero = self.RC.category.is_zero(X)
            return Answer(YES if zero else NO, evidence={"separator": "identity"})
        answer = self.quotient.is_zero(origin)
        return Answer(answer.status, evidence={**answer.evidence, "via": "homology"})

    def hom(self, X: Presentation, Y: Presentation) -> Dict[str, Any]:
        out = encode_hom(self.RC.category.hom(X, Y))
        out["scope"] = "base"
        return out

    def kernel(self, f: AbMor) -> Dict[str, Any]:
        K, k = self.RC.category.kernel(f)
        return {"object": encode_presentation(K), "inclusion": encode_abmor(k), "zero": self.RC.category.is_zero(K)}

    def generators(self, degree: Optional[int] = None) -> List[Presentation]:
        return Target.generators(self, degree)

    def dump(self) -> Dict[str, Any]:
        RU = self.RU
        out = super().dump()
        out["target"] = self.name
        for row in out["objects"]:
            row["name"] = row["name"].replace("H_", "H^", 1)
        out["coboundaries"] = len(RU.nori.triples) * (RU.window[1] - RU.window[0])
        return out


class FromDataTarget(RelativeTarget):
    """A(K) in realization mode."""

    def __init__(self, A: UniversalFromData, workers: int = 1):
        super().__init__(A.RU, quotient=A.quotient, name="from-K", workers=workers)
        self.A = A

    def hom(self, X: Presentation, Y: Presentation) -> Dict[str, Any]:
        H = self.A.hom(X, Y)
        return {"description": H.describe(), "stage": H.stage}

    def generators(self, degree: Optional[int] = None) -> List[Presentation]:
        return Target.generators(self, degree)

    def evaluate(self, X: Presentation) -> Dict[str, Any]:
        return {"realizations": [{"realization": "K", "value": self.A.value(X).summary().describe()}]}

    def dump(self) -> Dict[str, Any]:
        A = self.A
        objects = self._objects()
        answers = _parallel(lambda item: self.is_zero(item[1]), objects, self.workers)
        return {
            "target": self.name,
            "category": self.RU.pairs.base.name,
            "ring": str(self.RU.ring),
            "window": list(self.RU.window),
            "comparison": A.comparison_holds(),
            "objects": [
                {"name": name, "value": A.value(X).summary().describe(), "zero": a.status}
                for (name, X), a in zip(objects, answers)
            ],
        }


# ----------------------------------------------------------------------
# the workbench
# ----------------------------------------------------------------------
class Workbench:
    """Builds targets for one session; each universal category is built once."""

    def __init__(self, session: Session, bounds: Optional[Bounds] = None, workers: Optional[int] = None):
        self.session = session
        self.bounds = bounds or session.bounds
        self.workers = workers if workers is not None else get_config().get("runtime.workers", 1)

    @cached_property
    def graded(self) -> GradedAbCat:
        s = self.session
        return universal_homology(s.category, s.ring, s.window)

    @cached_property
    def relative(self) -> RelUniversalCat:
        return RelUniversalCat(self.session.nori, self.session.ring, bounds=self.bounds)

    def target(self, spec: str) -> Target:
        """
        Build a target: homology, point, kproj[:k], relative, add, dual or from-K.

        Raises:
            SessionError: On an unknown target or a session lacking what the target needs
            NoFinalObject, NoInitial, NotACoproduct, AxiomFailure: When a prerequisite fails
        """
        kind, _, arg = spec.partition(":")
        s = self.session
        logger.info(f"Building target {spec} for {s.path}")
        if kind == "homology":
            return GradedTarget(self.graded, realizations=s.realizations(self.graded.component), workers=self.workers)
        if kind == "point":
            if not s.points:
                raise SessionError("target 'point' needs a 'points' entry")
            Q = point_quotient(self.graded, s.points, bounds=self.bounds)
            for F in s.realizations(self.graded.component):
                for i in self.graded.degrees:
                    try:
                        Q.at(i).register_realization(F)
                    except CertificateError:
                        logger.debug(f"Realization {F.name} does not separate in degree {i}")
            return GradedTarget(self.graded, Q, name="point",
                                realizations=s.realizations(self.graded.component), workers=self.workers)
        if kind == "kproj":
            k = int(arg) if arg else 0
            return KProjectionTarget(graded_k_projection(self.graded, k), workers=self.workers)
        if kind == "relative":
            return RelativeTarget(self.relative, workers=self.workers)
        if kind == "add":
            Q = additive_quotient(self.relative, s.coproduct_rows(), bounds=self.bounds)
            return RelativeTarget(self.relative, Q, name="add", workers=self.workers)
        if kind == "dual":
            return CohomologyTarget(universal_cohomology(self.relative), workers=self.workers)
        if kind == "from-K":
            if not s.has_homology:
                raise SessionError("target 'from-K' needs a 'homology' block")
            return FromDataTarget(universal_from(s.homology_data(), RU=self.relative), workers=self.workers)
        raise SessionError(f"unknown target '{spec}'")

    def default_targets(self) -> List[str]:
        s = self.session
        targets = list(s.targets) or ["homology", "relative"]
        if not s.targets:
            if s.points:
                targets.append("point")
            if s.source.get("coproducts"):
                targets.append("add")
            if s.has_homology:
                targets.append("from-K")
        return targets

    def check(self) -> Dict[str, Any]:
        """Well-formedness of the base, closure of the distinguished set, coproduct rows and the axioms."""
        s = self.session
        C = s.category
        out: Dict[str, Any] = {
            "category": {"name": C.name, "objects": len(C.objects), "morphisms": len(C.morphisms), "ok": True},
        }
        ok = True
        try:
            pairs = s.pairs
            out["distinguished"] = {"ok": True, "pairs": len(pairs.pairs), "squares": len(pairs.morphisms)}
        except NotSubcategory as e:
            out["distinguished"] = {"ok": False, "missing": list(e.missing), "message": str(e)}
            return {**out, "ok": False}
        rows = []
        for entry in s.source.get("coproducts", []) or []:
            summands = [str(x) for x in entry.get("summands", [])]
            name = f"{entry.get('object')} = {' + '.join(summands) or '0'}"
            try:
                coproduct_row(C, str(entry["object"]), summands, entry.get("injections"))
                rows.append({"row": name, "ok": True})
            except NotACoproduct as e:
                rows.append({"row": name, "ok": False, "message": str(e)})
                ok = False
        if rows:
            out["coproducts"] = rows
        if s.has_homology:
            report = check_axioms(s.homology_data())
            out["axioms"] = report.to_dict()
            ok = ok and report.ok
        out["ok"] = ok
        return out

    def report(self) -> Dict[str, Any]:
        """``check`` plus a dump of every target the session asks for (or every target it supports)."""
        check = self.check()
        dumps: Dict[str, Any] = {}
        if check["ok"]:
            for spec in self.default_targets():
                try:
                    dumps[spec] = self.target(spec).dump()
                except FreydLabError as e:
                    logger.warning(f"Target {spec} failed: {e}")
                    dumps[spec] = {"error": type(e).__name__, "message": str(e)}
        return {"session": self.session.path, "check": check, "targets": dumps}


def answer_document(target: Target, expr: str, X: Any, with_certificate: bool = True) -> Dict[str, Any]:
    """The ``iszero`` output; ``certify`` reads it back."""
    out = {"target": target.name, "query": expr, "answer": encode_answer(target.is_zero(X), with_certificate)}
    if isinstance(X, GradedObject):
        out["degree"] = X.degree
    return out
