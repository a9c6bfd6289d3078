"""Serre quotients of Ab(A).

A quotient is described either by an exact realization F (the kernel of F is
the thick subcategory, and membership is decidable), or formally by a list of
generators, in which case membership is answered with checkable certificates,
refuted with registered separating realizations, or left unknown.
"""

import itertools
import logging
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from ..additive import AddObj
from ..config import Bounds, get_config
from ..errors import CertificateError, FormalModeUnsupported, NonStabilized, ShapeMismatch, UnsupportedBase
from ..freyd import AbCat, AbMor, HomModule, Presentation
from .certificate import GEN, Certificate, verify_certificate
from .realization import Realization, TargetHom

logger = logging.getLogger(__name__)

REALIZATION = "realization"
FORMAL = "formal"

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass
class Generator:
    """A named generator of a thick subcategory, built on first use."""

    name: str
    kind: str = "object"
    degree: Optional[int] = None
    detail: Dict[str, Any] = field(default_factory=dict)
    trivially_zero: bool = False
    factory: Optional[Callable[[], Presentation]] = field(default=None, repr=False)
    _obj: Optional[Presentation] = field(default=None, repr=False)

    @classmethod
    def of(cls, obj: Presentation, name: str, **kwargs: Any) -> "Generator":
        return cls(name, _obj=obj, **kwargs)

    @property
    def built(self) -> bool:
        return self._obj is not None

    @property
    def obj(self) -> Presentation:
        if self._obj is None:
            if self.factory is None:
                raise CertificateError(f"generator '{self.name}' has no object")
            self._obj = self.factory()
        return self._obj


class ThickGens:
    """Generators of a thick subcategory of ``base``."""

    def __init__(self, base: AbCat, generators: Iterable[Generator] = ()):
        self.base = base
        self.generators: List[Generator] = list(generators)
        for g in self.generators:
            if g.built:
                self._check(g)

    @classmethod
    def of(cls, base: AbCat, objects: Sequence[Presentation], names: Optional[Sequence[str]] = None) -> "ThickGens":
        names = list(names) if names is not None else [f"g{k}" for k in range(len(objects))]
        return cls(base, [Generator.of(X, n) for X, n in zip(objects, names)])

    def _check(self, g: Generator) -> None:
        if g.obj.cat != self.base.envelope:
            raise ShapeMismatch(f"generator '{g.name}' does not live in {self.base.name}")

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __getitem__(self, k: int) -> Generator:
        return self.generators[k]

    def objects(self) -> List[Presentation]:
        out = []
        for g in self.generators:
            if not g.built:
                self._check(g)
            out.append(g.obj)
        return out

    def extend(self, more: Iterable[Union[Generator, Presentation]]) -> "ThickGens":
        extra = [m if isinstance(m, Generator) else Generator.of(m, f"g{len(self) + k}") for k, m in enumerate(more)]
        return ThickGens(self.base, self.generators + extra)

    def names(self) -> List[str]:
        return [g.name for g in self.generators]


@dataclass(frozen=True)
class Answer:
    status: str
    certificate: Optional[Certificate] = None
    evidence: Dict[str, Any] = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.status == YES

    @property
    def no(self) -> bool:
        return self.status == NO


class _OutOfTime(Exception):
    pass


@dataclass(frozen=True)
class QuotientHom:
    """Hom in the quotient, as the submodule of Hom(F X, F Y) reached by roofs."""

    module: Any
    stage: int
    maps: Tuple[Any, ...]
    space: TargetHom

    def describe(self) -> str:
        return self.module.summary().describe()

    def contains(self, value: Any) -> bool:
        return self.space.contains([self.space.vector(m) for m in self.maps], [self.space.vector(value)])


def _stage_morphisms(H: HomModule, stage: int, limit: int = 4) -> List[AbMor]:
    """Combinations of the generators of H whose largest coefficient has absolute value ``stage``."""
    gens = H.generators
    if stage == 0:
        return list(gens)
    if not gens or len(gens) > limit:
        return []
    ring = H.ab.ring
    out = []
    for combo in itertools.product(range(-stage, stage + 1), repeat=len(gens)):
        if max(abs(c) for c in combo) != stage:
            continue
        if stage == 1 and sorted(combo)[-1] == 1 and sum(abs(c) for c in combo) == 1:
            continue
        out.append(H.element([ring.element(c) for c in combo]))
    return out


class SerreQuotient:
    """Ab(A) modulo a thick subcategory, in realization or formal mode."""

    def __init__(
        self,
        base: AbCat,
        realization: Optional[Realization] = None,
        gens: Optional[ThickGens] = None,
        bounds: Optional[Bounds] = None,
    ):
        if realization is not None and gens is not None:
            raise ValueError("a quotient is given by a realization or by generators, not both")
        self.base = base
        self.realization = realization
        self.gens = gens if gens is not None else ThickGens(base)
        self.bounds = bounds or get_config().bounds()
        self.mode = REALIZATION if realization is not None else FORMAL
        self._separators: List[Realization] = []
        self._certificates: Dict[Presentation, Certificate] = {}
        self._lock = threading.Lock()
        self._vertex_gens: Optional[Dict[str, int]] = None

    def __repr__(self) -> str:
        if self.mode == REALIZATION:
            return f"SerreQuotient({self.base.name} / ker {self.realization.name or 'F'})"
        return f"SerreQuotient({self.base.name} / <{len(self.gens)} generators>)"

    # ------------------------------------------------------------------
    # certificate database
    # ------------------------------------------------------------------
    def record(self, cert: Certificate) -> bool:
        """Verify ``cert`` and add it to the database; False when it does not verify."""
        if not verify_certificate(self.base, cert, self.gens.objects()):
            return False
        with self._lock:
            self._certificates.setdefault(cert.obj, cert)
        self._check_consistency(cert.obj)
        return True

    def certificate_for(self, X: Presentation) -> Optional[Certificate]:
        with self._lock:
            return self._certificates.get(X)

    def certificates(self) -> List[Certificate]:
        with self._lock:
            return list(self._certificates.values())

    def register_realization(self, F: Realization) -> None:
        """
        Register an exact functor that kills every generator, used to refute membership.

        Raises:
            CertificateError: When F does not vanish on some generator
        """
        if self.mode != FORMAL:
            raise ValueError("separating realizations belong to formal quotients")
        if F.source is not self.base and F.source.envelope != self.base.envelope:
            raise ShapeMismatch("realization starts from another category")
        for g in self.gens:
            if not g.trivially_zero and not F.kills(g.obj):
                raise CertificateError(f"realization '{F.name}' does not kill generator '{g.name}'")
        self._separators.append(F)
        logger.info(f"Registered separating realization '{F.name}'")

    def _check_consistency(self, X: Presentation) -> None:
        for F in self._separators:
            if not F.kills(X):
                logger.error(f"Certified object is not killed by '{F.name}'")

    # ------------------------------------------------------------------
    # membership
    # ------------------------------------------------------------------
    def settled(self, X: Presentation) -> Optional[Answer]:
        """The answer when it needs no search: realization mode, X zero in the base, or a recorded certificate."""
        if self.mode == REALIZATION:
            F = self.realization
            value = F.obj(X)
            evidence = {"realization": F.name, "value": F.describe(value)}
            return Answer(YES if F.value_is_zero(value) else NO, evidence=evidence)
        if self.base.is_zero(X):
            return Answer(YES, Certificate.zero(X))
        cached = self.certificate_for(X)
        if cached is not None:
            return Answer(YES, cached)
        return None

    def is_zero(self, X: Presentation, seconds: Optional[float] = None) -> Answer:
        """
        Decide membership, searching for a certificate in formal mode.

        Args:
            X: The object
            seconds: Wall-clock limit on the certificate search (default ``search.seconds``)
        """
        answer = self.settled(X)
        if answer is not None:
            return answer

        separation = self._separate(X)
        if separation is not None:
            return Answer(NO, evidence=separation)

        if seconds is None:
            seconds = float(get_config().get("search.seconds", 60))
        try:
            cert = self._certify(X, self.bounds.cert, time.monotonic() + seconds)
        except _OutOfTime:
            logger.info(f"Certificate search for {X!r} stopped after {seconds}s")
            return Answer(UNKNOWN, evidence={"depth": self.bounds.cert, "seconds": seconds})
        if cert is not None and self.record(cert):
            logger.debug(f"Certified {X!r} by {cert!r}")
            return Answer(YES, cert)
        return Answer(UNKNOWN, evidence={"depth": self.bounds.cert})

    def _separate(self, X: Presentation) -> Optional[Dict[str, Any]]:
        if all(g.trivially_zero or self.base.is_zero(g.obj) for g in self.gens):
            return {"separator": "identity"}
        for F in self._separators:
            value = F.obj(X)
            if not F.value_is_zero(value):
                return {"separator": F.name, "value": F.describe(value)}
        return None

    def _generator_index(self, X: Presentation) -> Optional[int]:
        for k, g in enumerate(self.gens):
            if not g.trivially_zero and g.obj == X:
                return k
        return None

    def _vertex_generators(self) -> Dict[str, int]:
        if self._vertex_gens is None:
            found = {}
            for v in self.base.base.objects:
                k = self._generator_index(self.base.delta(v))
                if k is not None:
                    found[v] = k
            self._vertex_gens = found
        return self._vertex_gens

    def _delta_certificate(self, obj: AddObj) -> Optional[Certificate]:
        """Δ of a sum of vertices, as an iterated extension of generators Δ(v)."""
        ab, E = self.base, self.base.envelope
        vertex_gens = self._vertex_generators()
        if any(v not in vertex_gens for v in obj):
            return None
        X = ab.delta_object(obj)
        if not obj:
            return Certificate.zero(X)
        if len(obj) == 1:
            return Certificate.gen(vertex_gens[obj[0]], X)
        head, rest = tuple(obj[:1]), tuple(obj[1:])
        A, B = ab.delta_object(head), ab.delta_object(rest)
        none = E.zero((), ())
        i = AbMor(A, X, E.injection([head, rest], 0), none)
        p = AbMor(X, B, E.projection([head, rest], 1), none)
        return Certificate.ext_of(X, i, p, Certificate.gen(vertex_gens[head[0]], A), self._delta_certificate(rest))

    def generation_certificate(self, X: Presentation) -> Optional[Certificate]:
        """
        X ⊆ coker(r_P), a quotient of Δ(G_P), when every vertex of G_P has Δ(v) among the generators.
        """
        ab, E = self.base, self.base.envelope
        cover = self._delta_certificate(X.p.generators)
        if cover is None:
            return None
        gp = X.p.generators
        layer = ab.cokernel_object(X.p.matrix)
        onto = AbMor(cover.obj, layer, E.identity(gp), E.zero((), ()))
        into = AbMor(X, layer, E.identity(gp), E.zero(X.q.generators, ()))
        return Certificate.sub_of(X, into, Certificate.quot_of(layer, onto, cover))

    def _known(self) -> List[Tuple[Presentation, Certificate]]:
        known = [(g.obj, Certificate.gen(k, g.obj)) for k, g in enumerate(self.gens) if not g.trivially_zero]
        known += [(c.obj, c) for c in self.certificates() if c.kind != GEN]
        return known

    @staticmethod
    def _tick(deadline: Optional[float]) -> None:
        if deadline is not None and time.monotonic() >= deadline:
            raise _OutOfTime()

    def _certify(self, X: Presentation, depth: int, deadline: Optional[float] = None) -> Optional[Certificate]:
        ab = self.base
        if ab.is_zero(X):
            return Certificate.zero(X)
        cached = self.certificate_for(X)
        if cached is not None:
            return cached
        k = self._generator_index(X)
        if k is not None:
            return Certificate.gen(k, X)
        cert = self.generation_certificate(X)
        if cert is not None or depth < 1:
            return cert
        try:
            return self._search(X, depth, deadline)
        except UnsupportedBase:
            logger.debug("Certificate search needs finite hom-sets")
            return None

    def _search(self, X: Presentation, depth: int, deadline: Optional[float] = None) -> Optional[Certificate]:
        ab = self.base
        known = self._known()
        for G, cG in known:
            self._tick(deadline)
            f = ab.iso_search(X, G)
            if f is not None:
                return Certificate.iso_to(X, f, cG)
        for G, cG in known:
            for f in ab.hom(X, G).candidates():
                self._tick(deadline)
                if ab.is_mono(f):
                    return Certificate.sub_of(X, f, cG)
            for f in ab.hom(G, X).candidates():
                self._tick(deadline)
                if ab.is_epi(f):
                    return Certificate.quot_of(X, f, cG)
        if depth < 2:
            return None
        for G, cG in known:
            for f in ab.hom(G, X).generators:
                self._tick(deadline)
                if ab.is_zero_morphism(f):
                    continue
                image = ab.image(f)
                C, c = ab.cokernel(f)
                rest = self._certify(C, depth - 1, deadline)
                if rest is not None:
                    return Certificate.ext_of(X, image.inclusion, c, Certificate.quot_of(image.obj, image.factor, cG), rest)
            for f in ab.hom(X, G).generators:
                self._tick(deadline)
                if ab.is_zero_morphism(f):
                    continue
                image = ab.image(f)
                K, k = ab.kernel(f)
                rest = self._certify(K, depth - 1, deadline)
                if rest is not None:
                    return Certificate.ext_of(X, k, image.factor, rest, Certificate.sub_of(image.obj, image.inclusion, cG))
        return None

    # ------------------------------------------------------------------
    # hom in the quotient
    # ------------------------------------------------------------------
    def _roofs(self, obj: Presentation, stage: int, side: str) -> List[Tuple[Presentation, Any]]:
        """Subobjects (side "src") or quotients (side "dst") of ``obj`` that F sees as isomorphic."""
        ab, F = self.base, self.realization
        out = []
        for w in _stage_morphisms(ab.hom(obj, obj), stage):
            image = ab.image(w)
            leg = image.inclusion if side == "src" else image.factor
            inv = F.map_inverse(F.mor(leg))
            if inv is not None:
                out.append((image.obj, inv))
        return out

    def hom(self, X: Presentation, Y: Presentation, stages: Optional[int] = None) -> QuotientHom:
        """
        Hom(X, Y) in the quotient by saturating roofs X ⊇ X' -> Y'' ↞ Y.

        Stage 0 uses Hom(X, Y); stage s adds subobjects and quotients cut out by endomorphisms
        whose coefficients reach s. The reported stage is the first one whose span equals the last.

        Raises:
            FormalModeUnsupported: In formal mode
            NonStabilized: When the last two stages still differ
        """
        if self.mode != REALIZATION:
            raise FormalModeUnsupported("hom in the quotient needs a realization")
        ab, F = self.base, self.realization
        stages = self.bounds.sat if stages is None else stages
        space = F.target_hom(F.obj(X), F.obj(Y))

        sources: List[Tuple[Presentation, Any]] = [(X, None)]
        targets: List[Tuple[Presentation, Any]] = [(Y, None)]
        maps: List[Any] = []
        spans: List[List[List[Any]]] = []
        for stage in range(stages + 1):
            old_s, old_t = (len(sources), len(targets)) if stage else (0, 0)
            if stage:
                sources = sources + self._roofs(X, stage, "src")
                targets = targets + self._roofs(Y, stage, "dst")
            pairs = [(sources[i], targets[j]) for i in range(len(sources)) for j in range(len(targets))
                     if i >= old_s or j >= old_t]
            for (Xs, e_inv), (Yt, q_inv) in pairs:
                for g in ab.hom(Xs, Yt).generators:
                    value = F.mor(g)
                    if e_inv is not None:
                        value = F.map_compose(value, e_inv)
                    if q_inv is not None:
                        value = F.map_compose(q_inv, value)
                    maps.append(value)
            spans.append([space.vector(m) for m in maps])

        final = spans[-1]
        if len(spans) > 1 and not space.same_span(spans[-2], final):
            raise NonStabilized(f"hom still growing after {stages} stages", stage=stages)
        stage = next(s for s, vectors in enumerate(spans) if space.same_span(vectors, final))
        logger.info(f"Quotient hom stabilized at stage {stage}")
        return QuotientHom(space.submodule(final), stage, tuple(maps), space)


def is_zero_in_quotient(Q: SerreQuotient, X: Presentation) -> Answer:
    """Yes/No in realization mode; Yes with a certificate, No with a separator, or Unknown in formal mode."""
    return Q.is_zero(X)


def quotient_by_gens(
    base: AbCat,
    gens: Union[ThickGens, Sequence[Union[Generator, Presentation]]],
    bounds: Optional[Bounds] = None,
) -> SerreQuotient:
    """The formal quotient by the thick subcategory generated by ``gens``."""
    if not isinstance(gens, ThickGens):
        gens = ThickGens(base).extend(gens)
    Q = SerreQuotient(base, gens=gens, bounds=bounds)
    logger.info(f"Formal quotient of {base.name} by {len(gens)} generators")
    return Q


def realization_quotient(F: Realization, bounds: Optional[Bounds] = None) -> SerreQuotient:
    """The quotient of F's source by ker F."""
    return SerreQuotient(F.source, realization=F, bounds=bounds)


def quotient_hom(Q: SerreQuotient, X: Presentation, Y: Presentation, stages: Optional[int] = None) -> QuotientHom:
    return Q.hom(X, Y, stages)
