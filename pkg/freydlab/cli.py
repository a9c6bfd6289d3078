"""Command-line front end.

Usage:
    python -m freydlab check sessions/two.yaml
    python -m freydlab build sessions/two.yaml relative
    python -m freydlab hom sessions/almost_trivial.yaml from-K "H_0(1,0)" "H_0(1,0)"
    python -m freydlab kernel sessions/two.yaml homology "H_0(0->1)"
    python -m freydlab iszero sessions/two.yaml relative "H_0(1,1)" --output answer.json
    python -m freydlab certify sessions/two.yaml relative answer.json
    python -m freydlab eval sessions/point.yaml "H_0(*)"
    python -m freydlab report sessions/two.yaml

JSON goes to stdout (or --output), diagnostics to stderr.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from .codec import decode_certificate, dumps, encode_error, loads
from .config import get_config
from .errors import CertificateError, FreydLabError
from .quotient import explain_certificate, verify_certificate
from .session import load_session
from .workbench import Workbench, answer_document

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freydlab",
        description="Universal abelian categories of homology theories on finite categories.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Targets:
  homology   A(C), the graded free abelian category
  point      A(C) modulo the point axiom at the session's points
  kproj[:k]  the k-projection onto Ab_R (default k = 0)
  relative   A_∂(C) with its relative homology generators
  add        A_∂(C) modulo the coproduct table as well
  dual       the universal relative cohomology
  from-K     A(K) for the session's homology data
        """,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    parser.add_argument("--output", "-o", type=str, help="Write JSON to this file instead of stdout")
    parser.add_argument("--workers", type=int, help="Threads for independent hom computations")
    for key, default in (("rewrite", 1000), ("cert", 4), ("sat", 3), ("size", 2)):
        parser.add_argument(f"--bound-{key}", type=int, dest=f"bound_{key}",
                            help=f"Override the {key} bound (default {default}, or FREYDLAB_BOUNDS)")

    verbs = parser.add_subparsers(dest="verb", required=True)
    check = verbs.add_parser("check", help="Check the session: base, distinguished set, coproducts, axioms")
    check.add_argument("session")

    build = verbs.add_parser("build", help="Build a target and dump its tables")
    build.add_argument("session")
    build.add_argument("target")

    hom = verbs.add_parser("hom", help="Hom module between two objects")
    hom.add_argument("session")
    hom.add_argument("target")
    hom.add_argument("source")
    hom.add_argument("dest")

    kernel = verbs.add_parser("kernel", help="Kernel of a morphism")
    kernel.add_argument("session")
    kernel.add_argument("target")
    kernel.add_argument("morphism")

    iszero = verbs.add_parser("iszero", help="Is an object zero in the target?")
    iszero.add_argument("session")
    iszero.add_argument("target")
    iszero.add_argument("object")
    iszero.add_argument("--no-certificate", action="store_true", help="Omit the certificate tree")

    certify = verbs.add_parser("certify", help="Replay a certificate written by iszero")
    certify.add_argument("session")
    certify.add_argument("target")
    certify.add_argument("certificate")

    evaluate = verbs.add_parser("eval", help="Evaluate an object through the session's realizations")
    evaluate.add_argument("session")
    evaluate.add_argument("object")
    evaluate.add_argument("--target", default="homology")

    report = verbs.add_parser("report", help="check plus every buildable target")
    report.add_argument("session")
    return parser


def _certify(bench: Workbench, target_spec: str, path: str) -> Dict[str, Any]:
    target = bench.target(target_spec)
    with open(path, "r", encoding="utf-8") as f:
        document = loads(f.read())
    node = document.get("answer", {}).get("certificate", document.get("certificate"))
    if node is None:
        raise CertificateError(f"{path} carries no certificate")
    cert = decode_certificate(target.ab, node)
    gens = target.generators(document.get("degree"))
    ok = verify_certificate(target.ab, cert, gens)
    out: Dict[str, Any] = {"target": target.name, "certificate": path, "valid": ok, "shape": repr(cert)}
    if not ok:
        out["reason"] = explain_certificate(target.ab, cert, gens)
    return out


def run(args: argparse.Namespace) -> int:
    """Execute one verb and write its JSON; the exit code is 0 iff the verb succeeded."""
    bounds = get_config().bounds(
        rewrite=args.bound_rewrite, cert=args.bound_cert, sat=args.bound_sat, size=args.bound_size
    )
    session = load_session(args.session, bounds=bounds)
    bench = Workbench(session, bounds=bounds, workers=args.workers)
    code = 0

    if args.verb == "check":
        result = bench.check()
        code = 0 if result["ok"] else 1
    elif args.verb == "build":
        result = bench.target(args.target).dump()
    elif args.verb == "hom":
        target = bench.target(args.target)
        result = {"target": target.name, "source": args.source, "dest": args.dest,
                  "hom": target.hom(target.obj(args.source), target.obj(args.dest))}
    elif args.verb == "kernel":
        target = bench.target(args.target)
        result = {"target": target.name, "morphism": args.morphism, "kernel": target.kernel(target.mor(args.morphism))}
    elif args.verb == "iszero":
        target = bench.target(args.target)
        result = answer_document(target, args.object, target.obj(args.object), not args.no_certificate)
    elif args.verb == "certify":
        result = _certify(bench, args.target, args.certificate)
        code = 0 if result["valid"] else 1
    elif args.verb == "eval":
        target = bench.target(args.target)
        result = {"target": target.name, "object": args.object, **target.evaluate(target.obj(args.object))}
    else:
        result = bench.report()
        code = 0 if result["check"]["ok"] else 1

    text = dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"Wrote {args.verb} result to {args.output}")
    else:
        print(text)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """Main function for command-line usage."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        return run(args)
    except FreydLabError as e:
        logger.error(f"Error: {e}")
        print(dumps(encode_error(e)))
        return 1
    except OSError as e:
        logger.error(f"Error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
