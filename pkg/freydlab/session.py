"""Session files: one YAML document describing a base category and what to build over it.

Example::

    ring: Z
    category:
      kind: ordinal
      n: 2
    distinguished: all
    window: [0, 1]
    points: ["1"]
    homology:
      almost_trivial: 0

Every mapping remembers where its keys were written, so unknown keys and
unresolved references are reported with their line and column.
"""

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import yaml

from .coeff import FPModule, Mat, ModuleMap, Ring
from .config import Bounds, get_config
from .diagram import Decoration, FinCat, NoriDiagram, PairCat, Quiver, fincat_from_decoration, nori_diagram, pairs_category
from .errors import FreydLabError, SessionError
from .freyd import AbCat
from .homology import CoproductRow, RelHomologyData, coproduct_row
from .quotient import ModuleRealization, realize

logger = logging.getLogger(__name__)

TOP_KEYS = ("ring", "category", "distinguished", "window", "points", "coproducts", "homology", "realizations",
            "targets")
CATEGORY_KEYS = {
    "point": (),
    "ordinal": ("n",),
    "discrete": ("objects",),
    "poset": ("elements", "covers"),
    "monoid": ("elements", "product", "unit"),
    "cyclic": ("order",),
    "quiver": ("vertices", "edges", "relations"),
}
TARGETS = ("homology", "relative", "point", "add", "kproj", "dual", "from-K")

_MODULE = re.compile(r"^(?:R|Z|Q|F)(?:\^(\d+))?(?:/(-?\d+))?$")


class LocatedDict(dict):
    """A mapping that remembers the line and column of itself and of each key (1-based)."""

    def __init__(self, *args: Any, **kwargs: Any):
        super().__init__(*args, **kwargs)
        self.mark: Tuple[int, int] = (1, 1)
        self.marks: Dict[Any, Tuple[int, int]] = {}

    def where(self, key: Any = None) -> Tuple[int, int]:
        return self.marks.get(key, self.mark)


class _LocatingLoader(yaml.SafeLoader):
    pass


def _construct_mapping(loader: yaml.SafeLoader, node: yaml.MappingNode) -> LocatedDict:
    loader.flatten_mapping(node)
    mapping = LocatedDict()
    mapping.mark = (node.start_mark.line + 1, node.start_mark.column + 1)
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=True)
        mapping[key] = loader.construct_object(value_node, deep=True)
        mapping.marks[key] = (key_node.start_mark.line + 1, key_node.start_mark.column + 1)
    return mapping


_LocatingLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_mapping)


def load_yaml(text: str) -> LocatedDict:
    """
    Parse YAML into LocatedDicts.

    Raises:
        SessionError: On YAML syntax errors or when the document is not a mapping
    """
    try:
        data = yaml.load(text, Loader=_LocatingLoader)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        if mark is not None:
            raise SessionError(str(getattr(e, "problem", e)), mark.line + 1, mark.column + 1) from None
        raise SessionError(str(e)) from None
    if not isinstance(data, LocatedDict):
        raise SessionError("a session must be a mapping", 1, 1)
    return data


def _fail(block: LocatedDict, key: Any, message: str) -> SessionError:
    line, column = block.where(key)
    return SessionError(message, line, column)


def _check_keys(block: Any, allowed: Sequence[str], what: str, parent: Optional[LocatedDict] = None,
                key: Any = None) -> LocatedDict:
    if not isinstance(block, LocatedDict):
        if parent is not None:
            raise _fail(parent, key, f"{what} must be a mapping")
        raise SessionError(f"{what} must be a mapping")
    for k in block:
        if k not in allowed:
            raise _fail(block, k, f"unknown key '{k}' in {what} (expected one of {', '.join(allowed)})")
    return block


def parse_module(ring: Ring, value: Any) -> FPModule:
    """
    A module from ``0``, a rank, a shorthand (``R``, ``R^2``, ``R/3``; ``Z``, ``Q`` and ``F`` read as ``R``)
    or a ``{generators, relations}`` mapping.
    """
    if isinstance(value, int) and not isinstance(value, bool):
        return FPModule.free(ring, value)
    if isinstance(value, str):
        text = value.replace(" ", "")
        if text == "0":
            return FPModule.zero(ring)
        m = _MODULE.match(text)
        if m is None:
            raise FreydLabError(f"cannot read module '{value}'")
        n = int(m.group(1) or 1)
        if m.group(2) is None:
            return FPModule.free(ring, n)
        return FPModule.direct_sum(ring, [FPModule.cyclic(ring, int(m.group(2)))] * n)
    if isinstance(value, Mapping):
        n = int(value.get("generators", 0))
        rels = value.get("relations", [])
        return FPModule(ring, Mat(ring, n, len(rels[0]) if rels else 0, rels))
    raise FreydLabError(f"cannot read module {value!r}")


def parse_map(src: FPModule, dst: FPModule, rows: Any) -> ModuleMap:
    """A module map from its matrix; a bare number is a multiple of the identity."""
    ring = src.ring
    if isinstance(rows, (int, str)) and not isinstance(rows, bool):
        rows = [[rows if i == j else 0 for i in range(src.generators)] for j in range(dst.generators)]
    return ModuleMap(src, dst, Mat(ring, dst.generators, src.generators, rows))


@dataclass
class Session:
    """A parsed session; derived structures are built on first use."""

    source: LocatedDict
    ring: Ring
    category: FinCat
    distinguished: Union[str, List[str]] = "all"
    window: Tuple[int, int] = (0, 0)
    points: List[str] = field(default_factory=list)
    targets: List[str] = field(default_factory=list)
    bounds: Bounds = field(default_factory=Bounds)
    path: str = "<session>"

    @cached_property
    def pairs(self) -> PairCat:
        return pairs_category(self.category, self.distinguished)

    @cached_property
    def nori(self) -> NoriDiagram:
        return nori_diagram(self.pairs, self.window)

    @property
    def has_homology(self) -> bool:
        return "homology" in self.source

    def coproduct_rows(self) -> List[CoproductRow]:
        """
        Coproduct table rows, checked against the universal property.

        Raises:
            NotACoproduct: When a row is not a coproduct in the base
        """
        rows = []
        for entry in self.source.get("coproducts", []) or []:
            entry = _check_keys(entry, ("object", "summands", "injections"), "coproduct row")
            rows.append(coproduct_row(self.category, str(entry["object"]),
                                      [str(s) for s in entry.get("summands", [])],
                                      entry.get("injections")))
        return rows

    def homology_data(self) -> RelHomologyData:
        """
        The homology data block over the session's Nori diagram.

        ``almost_trivial: k`` gives the almost-trivial homology concentrated in degree k; otherwise
        ``values`` maps ``pair@degree`` to modules and ``gammas`` / ``boundaries`` list matrices.
        """
        block = _check_keys(self.source.get("homology"), ("almost_trivial", "values", "gammas", "boundaries"),
                            "homology", self.source, "homology")
        ring = self.ring
        if "almost_trivial" in block:
            K = RelHomologyData.almost_trivial(self.nori, ring, int(block["almost_trivial"]))
        else:
            K = RelHomologyData(self.nori, ring)
        try:
            for vertex, module in (block.get("values") or {}).items():
                pair, _, degree = str(vertex).rpartition("@")
                K = K.with_value(self.pairs.pair_name(pair), int(degree), parse_module(ring, module))
            for entry in block.get("gammas") or []:
                entry = _check_keys(entry, ("square", "degree", "matrix"), "gamma entry")
                K = K.with_gamma(str(entry["square"]), int(entry["degree"]), entry["matrix"])
            for entry in block.get("boundaries") or []:
                entry = _check_keys(entry, ("triple", "degree", "matrix"), "boundary entry")
                K = K.with_boundary(str(entry["triple"]), int(entry["degree"]), entry["matrix"])
        except (KeyError, ValueError) as e:
            if isinstance(e, SessionError):
                raise
            raise _fail(block, None, f"homology data: {e}") from None
        return K

    def realizations(self, ab: AbCat) -> List[ModuleRealization]:
        """Module-valued representations of the base, as exact functors out of ``ab``."""
        found = []
        for k, entry in enumerate(self.source.get("realizations", []) or []):
            entry = _check_keys(entry, ("name", "values", "morphisms"), "realization")
            values = {str(x): parse_module(self.ring, v) for x, v in (entry.get("values") or {}).items()}
            for x in self.category.objects:
                values.setdefault(x, FPModule.zero(self.ring))
            morphisms = {}
            for m, rows in (entry.get("morphisms") or {}).items():
                s, t = self.category.source(str(m)), self.category.target(str(m))
                morphisms[str(m)] = parse_map(values[s], values[t], rows)
            found.append(realize(ab, values, morphisms=morphisms, name=str(entry.get("name", f"M{k}"))))
        return found


def _category(block: LocatedDict, bounds: Bounds) -> FinCat:
    kind = block.get("kind")
    if kind not in CATEGORY_KEYS:
        raise _fail(block, "kind", f"unknown category kind '{kind}' (expected one of {', '.join(CATEGORY_KEYS)})")
    _check_keys(block, ("kind", "name") + CATEGORY_KEYS[kind], f"{kind} category")
    name = str(block.get("name", ""))
    if kind == "point":
        return FinCat.point()
    if kind == "ordinal":
        return FinCat.ordinal(int(block.get("n", 1)))
    if kind == "discrete":
        return FinCat.discrete([str(x) for x in block.get("objects", [])])
    if kind == "poset":
        return FinCat.poset(block.get("elements", []), [tuple(c) for c in block.get("covers", [])], name=name)
    if kind == "monoid":
        product = {str(g): {str(f): str(h) for f, h in row.items()} for g, row in block["product"].items()}
        return FinCat.from_monoid(block["elements"], product, str(block["unit"]), name=name)
    if kind == "cyclic":
        return FinCat.cyclic_group(int(block["order"]))
    quiver = Quiver([str(v) for v in block.get("vertices", [])],
                    [tuple(str(x) for x in e) for e in block.get("edges", [])])
    relations = []
    for rel in block.get("relations", []) or []:
        rel = _check_keys(rel, ("source", "lhs", "rhs"), "relation")
        s = str(rel["source"])
        relations.append((quiver.path(s, rel.get("lhs", [])), quiver.path(s, rel.get("rhs", []))))
    return fincat_from_decoration(quiver, Decoration(tuple(relations)), bound=bounds.rewrite, name=name or "quiver")


def parse_session(text: str, path: str = "<session>", bounds: Optional[Bounds] = None) -> Session:
    """
    Parse a session document.

    Args:
        text: YAML source
        path: Name used in messages
        bounds: Bounds to close decorated quivers with (defaults to the configured bounds)

    Raises:
        SessionError: On syntax errors, unknown keys or unresolved names, with line and column
    """
    data = _check_keys(load_yaml(text), TOP_KEYS, "session")
    bounds = bounds or get_config().bounds()
    if "ring" not in data or "category" not in data:
        raise SessionError("a session needs 'ring' and 'category'", 1, 1)
    try:
        ring = Ring.parse(str(data["ring"]))
    except FreydLabError as e:
        raise _fail(data, "ring", str(e)) from None
    cat_block = _check_keys(data["category"], ("kind", "name") + tuple(k for ks in CATEGORY_KEYS.values() for k in ks),
                            "category", data, "category")
    try:
        category = _category(cat_block, bounds)
    except SessionError:
        raise
    except (FreydLabError, KeyError, TypeError, ValueError) as e:
        raise _fail(data, "category", f"invalid category: {e}") from None

    distinguished = data.get("distinguished", "all")
    if not isinstance(distinguished, str):
        distinguished = [str(m) for m in distinguished]
        unknown = [m for m in distinguished if not category.has_morphism(m)]
        if unknown:
            raise _fail(data, "distinguished", f"unknown morphisms: {', '.join(unknown)}")
    elif distinguished not in ("all", "monos"):
        raise _fail(data, "distinguished", f"expected 'all', 'monos' or a list, got '{distinguished}'")

    window = data.get("window", [0, 0])
    if not isinstance(window, list) or len(window) != 2:
        raise _fail(data, "window", "window must be [a, b]")
    window = (int(window[0]), int(window[1]))
    if window[0] > window[1]:
        raise _fail(data, "window", f"empty degree window [{window[0]}, {window[1]}]")

    points = [str(p) for p in data.get("points", []) or []]
    unknown = [p for p in points if p not in category.objects]
    if unknown:
        raise _fail(data, "points", f"points are not objects: {', '.join(unknown)}")

    targets = [str(t) for t in data.get("targets", []) or []]
    bad = [t for t in targets if t.split(":")[0] not in TARGETS]
    if bad:
        raise _fail(data, "targets", f"unknown targets: {', '.join(bad)}")

    for entry in data.get("coproducts", []) or []:
        entry = _check_keys(entry, ("object", "summands", "injections"), "coproduct row")
        names = [str(entry.get("object"))] + [str(s) for s in entry.get("summands", [])]
        missing = [x for x in names if x not in category.objects]
        if missing:
            raise _fail(entry, "object", f"unknown objects: {', '.join(missing)}")

    session = Session(data, ring, category, distinguished, window, points, targets, bounds, path)
    logger.info(f"Session {path}: {category.name} over {ring}, window [{window[0]}, {window[1]}]")
    return session


def load_session(path: str, bounds: Optional[Bounds] = None) -> Session:
    with open(path, "r", encoding="utf-8") as f:
        return parse_session(f.read(), path=path, bounds=bounds)
