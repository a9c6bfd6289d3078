"""JSON encoding of morphisms, presentations, certificates and homology data.

Every document carries ``"schema": 1``. Ring elements are written as their
canonical strings and matrices as nested arrays, so identical inputs give
byte-identical output.
"""

import json
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence

from .additive import AddCat, AddMor, Combination
from .coeff import FPModule, Mat, Ring
from .diagram import NoriDiagram, Path
from .errors import CertificateError, FreydLabError, MalformedPresentation
from .freyd import AbCat, AbMor, HomModule, Presentation
from .homology import AxiomReport, RelHomologyData
from .quotient import Answer, Certificate
from .quotient.certificate import KINDS

logger = logging.getLogger(__name__)

SCHEMA = 1


def dumps(payload: Mapping[str, Any]) -> str:
    """Deterministic JSON text with the schema header."""
    return json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2, ensure_ascii=False)


def loads(text: str) -> Dict[str, Any]:
    """
    Parse a JSON document written by ``dumps``.

    Raises:
        MalformedPresentation: When the text is not JSON or the schema is not supported
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedPresentation(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise MalformedPresentation(f"expected a schema {SCHEMA} document")
    return data


def _expect(data: Any, keys: Sequence[str], what: str) -> Mapping[str, Any]:
    if not isinstance(data, Mapping):
        raise MalformedPresentation(f"{what} must be an object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise MalformedPresentation(f"{what} is missing {', '.join(missing)}")
    return data


# ----------------------------------------------------------------------
# coefficients
# ----------------------------------------------------------------------
def encode_matrix(m: Mat) -> List[List[str]]:
    return m.to_strings()


def decode_matrix(ring: Ring, rows: int, cols: int, data: Any) -> Mat:
    if not isinstance(data, list):
        raise MalformedPresentation("matrix must be a list of rows")
    return Mat(ring, rows, cols, data)


def encode_module(M: FPModule) -> Dict[str, Any]:
    return {"generators": M.generators, "relations": encode_matrix(M.relations)}


def decode_module(ring: Ring, data: Any) -> FPModule:
    data = _expect(data, ("generators", "relations"), "module")
    n = int(data["generators"])
    rels = data["relations"]
    cols = len(rels[0]) if rels else 0
    return FPModule(ring, decode_matrix(ring, n, cols, rels))


# ----------------------------------------------------------------------
# additive envelope
# ----------------------------------------------------------------------
def encode_base_morphism(m: Any) -> Any:
    if isinstance(m, Path):
        return {"source": m.source, "edges": list(m.edges)}
    return str(m)


def decode_base_morphism(base: Any, data: Any) -> Any:
    if isinstance(data, Mapping):
        try:
            return base.quiver.path(data["source"], data["edges"])
        except (AttributeError, KeyError, ValueError) as e:
            raise MalformedPresentation(f"cannot read path {data!r}: {e}") from None
    return str(data)


def _encode_combination(E: AddCat, c: Combination) -> List[List[Any]]:
    return [[encode_base_morphism(m), E.ring.format(k)] for m, k in c]


def encode_addmor(f: AddMor) -> Dict[str, Any]:
    E = f.cat
    return {
        "src": list(f.src),
        "dst": list(f.dst),
        "entries": [[_encode_combination(E, f[j, i]) for i in range(len(f.src))] for j in range(len(f.dst))],
    }


def decode_addmor(E: AddCat, data: Any) -> AddMor:
    """
    Rebuild an envelope morphism; every term is re-checked against the base.

    Raises:
        MalformedPresentation: On missing fields or terms that are not morphisms
        ShapeMismatch: When the entries do not fit ``src`` and ``dst``
    """
    data = _expect(data, ("src", "dst", "entries"), "morphism")
    rows = []
    for row in data["entries"]:
        cells = []
        for cell in row:
            terms: Dict[Any, Any] = {}
            for term in cell:
                if not isinstance(term, list) or len(term) != 2:
                    raise MalformedPresentation(f"term {term!r} is not a [morphism, coefficient] pair")
                terms[decode_base_morphism(E.base, term[0])] = str(term[1])
            cells.append(terms)
        rows.append(cells)
    try:
        return E.morphism(data["src"], data["dst"], rows)
    except KeyError as e:
        raise MalformedPresentation(f"unknown base morphism {e}") from None


# ----------------------------------------------------------------------
# free abelian category
# ----------------------------------------------------------------------
def encode_presentation(X: Presentation) -> Dict[str, Any]:
    return {"p": encode_addmor(X.p.matrix), "q": encode_addmor(X.q.matrix), "phi": encode_addmor(X.phi)}


def decode_presentation(ab: AbCat, data: Any) -> Presentation:
    data = _expect(data, ("p", "q", "phi"), "presentation")
    E = ab.envelope
    p = ab.one_layer(decode_addmor(E, data["p"]))
    q = ab.one_layer(decode_addmor(E, data["q"]))
    return ab.presentation(p, q, decode_addmor(E, data["phi"]))


def encode_abmor(f: AbMor) -> Dict[str, Any]:
    return {
        "src": encode_presentation(f.src),
        "dst": encode_presentation(f.dst),
        "a": encode_addmor(f.a),
        "g": encode_addmor(f.g),
    }


def decode_abmor(ab: AbCat, data: Any) -> AbMor:
    data = _expect(data, ("src", "dst", "a", "g"), "abelian morphism")
    E = ab.envelope
    src = decode_presentation(ab, data["src"])
    dst = decode_presentation(ab, data["dst"])
    return ab.morphism(src, dst, decode_addmor(E, data["a"]), decode_addmor(E, data["g"]))


def encode_hom(H: HomModule, with_generators: bool = False) -> Dict[str, Any]:
    out: Dict[str, Any] = {"description": H.describe(), "summary": H.summary.to_dict()}
    if with_generators:
        out["generators"] = [encode_abmor(f) for f in H.generators]
    return out


# ----------------------------------------------------------------------
# certificates and answers
# ----------------------------------------------------------------------
def encode_certificate(cert: Certificate) -> Dict[str, Any]:
    out: Dict[str, Any] = {"kind": cert.kind, "obj": encode_presentation(cert.obj)}
    if cert.index is not None:
        out["index"] = cert.index
    if cert.witnesses:
        out["witnesses"] = [encode_abmor(w) for w in cert.witnesses]
    if cert.children:
        out["children"] = [encode_certificate(c) for c in cert.children]
    return out


def decode_certificate(ab: AbCat, data: Any) -> Certificate:
    """
    Rebuild a proof tree; the tree is not verified here.

    Raises:
        CertificateError: On an unknown node kind or a malformed node
    """
    try:
        data = _expect(data, ("kind", "obj"), "certificate node")
    except MalformedPresentation as e:
        raise CertificateError(str(e)) from None
    kind = data["kind"]
    if kind not in KINDS:
        raise CertificateError(f"unknown certificate node '{kind}'")
    index = data.get("index")
    return Certificate(
        kind,
        decode_presentation(ab, data["obj"]),
        index=None if index is None else int(index),
        witnesses=tuple(decode_abmor(ab, w) for w in data.get("witnesses", [])),
        children=tuple(decode_certificate(ab, c) for c in data.get("children", [])),
    )


def _plain(value: Any) -> Any:
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def encode_answer(answer: Answer, with_certificate: bool = True) -> Dict[str, Any]:
    out: Dict[str, Any] = {"status": answer.status, "evidence": _plain(answer.evidence)}
    if answer.certificate is not None:
        out["certificate_shape"] = repr(answer.certificate)
        if with_certificate:
            out["certificate"] = encode_certificate(answer.certificate)
    return out


# ----------------------------------------------------------------------
# relative homology data
# ----------------------------------------------------------------------
def _split_label(label: str, prefix: str) -> Any:
    body, _, degree = label[len(prefix):].rpartition("@")
    return body, int(degree)


def encode_homology_data(K: RelHomologyData) -> Dict[str, Any]:
    gammas = []
    for label in sorted(K.gammas):
        square, degree = _split_label(label, "γ")
        gammas.append({"square": square, "degree": degree, "matrix": encode_matrix(K.gammas[label].matrix)})
    boundaries = []
    for label in sorted(K.boundaries):
        triple, degree = _split_label(label, "∂")
        boundaries.append({"triple": triple, "degree": degree, "matrix": encode_matrix(K.boundaries[label].matrix)})
    return {
        "ring": str(K.ring),
        "window": list(K.nori.window),
        "values": {v: encode_module(M) for v, M in sorted(K.values.items())},
        "gammas": gammas,
        "boundaries": boundaries,
    }


def decode_homology_data(nori: NoriDiagram, data: Any, ring: Optional[Ring] = None) -> RelHomologyData:
    """
    Read homology data over an existing Nori diagram.

    Values are set first so that every map is checked against its modules.

    Raises:
        MalformedPresentation: On missing fields
        ShapeMismatch: When a map does not fit its modules
        OutOfWindow: When a degree lies outside the diagram's window
    """
    data = _expect(data, ("ring",), "homology data")
    ring = ring or Ring.parse(data["ring"])
    K = RelHomologyData(nori, ring)
    for vertex, module in data.get("values", {}).items():
        pair, _, degree = vertex.rpartition("@")
        K = K.with_value(pair, int(degree), decode_module(ring, module))
    for entry in data.get("gammas", []):
        entry = _expect(entry, ("square", "degree", "matrix"), "gamma entry")
        K = K.with_gamma(entry["square"], int(entry["degree"]), entry["matrix"])
    for entry in data.get("boundaries", []):
        entry = _expect(entry, ("triple", "degree", "matrix"), "boundary entry")
        K = K.with_boundary(entry["triple"], int(entry["degree"]), entry["matrix"])
    logger.debug(f"Decoded homology data with {len(K.values)} nonzero values")
    return K


def encode_report(report: AxiomReport) -> Dict[str, Any]:
    return report.to_dict()


def encode_error(e: FreydLabError) -> Dict[str, Any]:
    out: Dict[str, Any] = {"error": type(e).__name__, "message": str(e)}
    for attr in ("line", "column", "missing", "growing", "stage", "violations", "relation"):
        value = getattr(e, attr, None)
        if value is not None:
            out[attr] = str(value) if attr == "relation" else value
    return out
