#!/usr/bin/env python3
"""
Tests for the command-line verbs and the batch report script.
"""

import json
import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.path.insert(0, ROOT)
SESSIONS = os.path.join(ROOT, "sessions")
GOLDEN = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")

import batch_report
from freydlab.cli import main
from freydlab.quotient import SerreQuotient

TWO = """\
ring: Z
category:
  kind: ordinal
  n: 2
window: [0, 1]
"""

ALMOST = """\
ring: Z
category:
  kind: ordinal
  n: 2
window: [0, 0]
homology:
  almost_trivial: 0
"""

NOT_CLOSED = """\
ring: Z
category:
  kind: ordinal
  n: 3
distinguished: [id_0, id_1, id_2, "0->1", "1->2"]
"""

POINT = """\
ring: Z
category:
  kind: point
window: [0, 1]
points: ["*"]
realizations:
  - name: Z
    values: {"*": R}
"""


@pytest.fixture
def session(tmp_path):
    """Write a session file and return its path."""

    def write(text, name="session.yaml"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


def load_golden(name):
    """Parse a recorded JSON output."""
    with open(os.path.join(GOLDEN, f"{name}.json"), "r", encoding="utf-8") as f:
        return json.load(f)


def run(capsys, *argv):
    """Run the CLI and return (exit code, parsed stdout)."""
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestCheck:
    """Tests for the check verb."""

    def test_valid_session(self, session, capsys):
        """Test a well-formed C = 2 session passes."""
        code, out = run(capsys, "check", session(TWO))
        assert code == 0
        assert out["schema"] == 1
        assert out["ok"] is True
        assert out["distinguished"]["pairs"] == 3

    def test_not_closed(self, session, capsys):
        """Test a distinguished set missing a composite fails and names it."""
        code, out = run(capsys, "check", session(NOT_CLOSED))
        assert code == 1
        assert out["ok"] is False
        assert out["distinguished"]["missing"] == ["0->2"]

    def test_almost_trivial_axioms(self, session, capsys):
        """Test almost-trivial homology data passes the axiom check."""
        code, out = run(capsys, "check", session(ALMOST))
        assert code == 0
        assert out["axioms"]["ok"] is True

    def test_session_error(self, session, capsys):
        """Test an unknown key is reported with its line and exit code 1."""
        code, out = run(capsys, "check", session(TWO + "colour: red\n"))
        assert code == 1
        assert out["error"] == "SessionError"
        assert out["line"] == 6

    def test_missing_file(self, tmp_path, capsys):
        """Test a missing session file exits 1."""
        assert main(["check", str(tmp_path / "absent.yaml")]) == 1


class TestBuild:
    """Tests for the build verb."""

    def test_relative_counts(self, session, capsys):
        """Test C = 2 in window [-1, 1] has nine Nori vertices and lists its triples."""
        code, out = run(capsys, "build", session(TWO.replace("[0, 1]", "[-1, 1]")), "relative")
        assert code == 0
        assert out["vertices"] == 9
        assert "<0->1,id_1>" in out["triples"]
        assert "<id_0,0->1>" in out["triples"]
        assert set(out["generators"]) == {"functoriality", "naturality", "chain", "exactness"}

    def test_relative_dump_does_not_search(self, session, capsys, monkeypatch):
        """Test build relative reports structure and leaves membership to iszero."""

        def refuse(*args, **kwargs):
            raise AssertionError("build must not search for certificates")

        monkeypatch.setattr(SerreQuotient, "_certify", refuse)
        code, out = run(capsys, "build", session(TWO.replace("[0, 1]", "[-1, 1]")), "relative")
        assert code == 0
        assert len(out["objects"]) == 3 * 3
        assert {r["zero"] for r in out["objects"]} <= {"yes", "unknown"}

    def test_point_endomorphisms(self, session, capsys):
        """Test End(H_0(*)) is free of rank one."""
        code, out = run(capsys, "build", session(POINT), "homology")
        assert code == 0
        row = next(r for r in out["objects"] if r["name"] == "H_0(*)")
        assert row["endomorphisms"] == "Z"

    def test_zero_homology_data(self, session, capsys):
        """Test A(0) reports every object zero."""
        text = ALMOST.replace("  almost_trivial: 0\n", "  values: {}\n")
        code, out = run(capsys, "build", session(text), "from-K")
        assert code == 0
        assert out["comparison"] is True
        assert {r["zero"] for r in out["objects"]} == {"yes"}
        assert {r["value"] for r in out["objects"]} == {"0"}

    def test_unknown_target(self, session, capsys):
        """Test an unknown target is a session error."""
        code, out = run(capsys, "build", session(TWO), "motives")
        assert code == 1
        assert out["error"] == "SessionError"

    def test_kproj_needs_final_object(self, session, capsys):
        """Test kproj on a discrete category names the missing final object."""
        text = "ring: Z\ncategory:\n  kind: discrete\n  objects: [a, b]\n"
        code, out = run(capsys, "build", session(text), "kproj")
        assert code == 1
        assert out["error"] == "NoFinalObject"

    def test_deterministic(self, session, capsys):
        """Test two runs with different worker counts print identical JSON."""
        path = session(TWO)
        main(["--workers", "1", "build", path, "homology"])
        first = capsys.readouterr().out
        main(["--workers", "2", "build", path, "homology"])
        second = capsys.readouterr().out
        assert first == second


class TestQueries:
    """Tests for hom, kernel, iszero, certify and eval."""

    def test_hom_in_from_k(self, session, capsys):
        """Test Hom(H_0(1,0), H_0(1,0)) ≅ Z in A(K) at stage 0."""
        code, out = run(capsys, "hom", session(ALMOST), "from-K", "H_0(1,0)", "H_0(1,0)")
        assert code == 0
        assert out["hom"]["description"] == "Z"
        assert out["hom"]["stage"] == 0

    def test_hom_across_degrees(self, session, capsys):
        """Test graded hom between different degrees is zero."""
        code, out = run(capsys, "hom", session(TWO), "homology", "H_0(0)", "H_1(0)")
        assert code == 0
        assert out["hom"]["description"] == "0"

    def test_kernel(self, session, capsys):
        """Test the kernel verb returns a presentation and its inclusion."""
        code, out = run(capsys, "kernel", session(TWO), "homology", "H_0(0->1)")
        assert code == 0
        assert out["kernel"]["degree"] == 0
        assert {"object", "inclusion", "zero"} <= set(out["kernel"])

    def test_bad_expression(self, session, capsys):
        """Test an unreadable expression is a session error."""
        code, out = run(capsys, "iszero", session(TWO), "relative", "H(1,1)")
        assert code == 1
        assert out["error"] == "SessionError"

    def test_iszero_and_certify(self, session, tmp_path, capsys):
        """Test H_0(1,1) is certified zero and the certificate replays."""
        path = session(TWO)
        answer = tmp_path / "answer.json"
        assert main(["--output", str(answer), "iszero", path, "relative", "H_0(1,1)"]) == 0
        document = json.loads(answer.read_text(encoding="utf-8"))
        assert document["answer"]["status"] == "yes"
        assert "certificate" in document["answer"]

        code, out = run(capsys, "certify", path, "relative", str(answer))
        assert code == 0
        assert out["valid"] is True

    def test_certify_rejects_unknown_node(self, session, tmp_path, capsys):
        """Test a certificate with an unknown node kind is refused."""
        path = session(TWO)
        answer = tmp_path / "answer.json"
        main(["--output", str(answer), "iszero", path, "relative", "H_0(0,0)"])
        document = json.loads(answer.read_text(encoding="utf-8"))
        document["answer"]["certificate"]["kind"] = "magic"
        answer.write_text(json.dumps(document), encoding="utf-8")

        code, out = run(capsys, "certify", path, "relative", str(answer))
        assert code == 1
        assert out["error"] == "CertificateError"

    def test_iszero_without_certificate(self, session, capsys):
        """Test --no-certificate keeps the shape but drops the tree."""
        code, out = run(capsys, "iszero", session(TWO), "relative", "H_1(1,1)", "--no-certificate")
        assert code == 0
        assert out["answer"]["status"] == "yes"
        assert "certificate" not in out["answer"]
        assert "certificate_shape" in out["answer"]

    def test_eval_on_the_point(self, session, capsys):
        """Test r_Z(H_0(*)) = Z, also after base change to Q."""
        code, out = run(capsys, "eval", session(POINT), "H_0(*)")
        assert code == 0
        assert out["realizations"][0]["value"] == "Z"
        assert out["at_ring"] == "Z"
        assert out["over_rationals"] == "Q"


class TestGolden:
    """The sample sessions against their recorded outputs."""

    @pytest.mark.parametrize(
        "golden, argv",
        [
            ("check_two", ["check", "two.yaml"]),
            ("check_not_closed", ["check", "not_closed.yaml"]),
            ("build_almost_trivial_from_k", ["build", "almost_trivial.yaml", "from-K"]),
            ("iszero_almost_trivial_from_k", ["iszero", "almost_trivial.yaml", "from-K", "H_0(1,0)"]),
            ("iszero_almost_trivial_relative",
             ["iszero", "almost_trivial.yaml", "relative", "H_0(0,0)", "--no-certificate"]),
        ],
    )
    def test_verb_output(self, capsys, golden, argv):
        """Test a verb on a sample session prints its recorded document."""
        verb, name, *rest = argv
        main([verb, os.path.join(SESSIONS, name), *rest])
        assert json.loads(capsys.readouterr().out) == load_golden(golden)

    def test_certify_output(self, tmp_path, capsys):
        """Test replaying the certificate of H_0(0,0) in the almost-trivial session."""
        path = os.path.join(SESSIONS, "almost_trivial.yaml")
        answer = tmp_path / "answer.json"
        assert main(["--output", str(answer), "iszero", path, "relative", "H_0(0,0)"]) == 0
        code, out = run(capsys, "certify", path, "relative", str(answer))
        assert code == 0
        out["certificate"] = os.path.basename(out["certificate"])
        assert out == load_golden("certify_almost_trivial_relative")


class TestReport:
    """Tests for the report verb and batch reporting."""

    def test_report(self, session, capsys):
        """Test report includes check and the default targets."""
        code, out = run(capsys, "report", session(ALMOST))
        assert code == 0
        assert out["check"]["ok"] is True
        assert set(out["targets"]) == {"homology", "relative", "from-K"}

    def test_report_stops_on_failed_check(self, session, capsys):
        """Test no targets are built when the check fails."""
        code, out = run(capsys, "report", session(NOT_CLOSED))
        assert code == 1
        assert out["targets"] == {}

    def test_batch_keeps_input_order(self, session, tmp_path, capsys):
        """Test one JSON per session and a failure exit code when any session fails."""
        paths = [session(ALMOST, "almost.yaml"), session(NOT_CLOSED, "open.yaml"), session(POINT, "point.yaml")]
        out_dir = tmp_path / "reports"
        code = batch_report.main(paths + ["--output-dir", str(out_dir), "--jobs", "2"])
        printed = capsys.readouterr().out
        assert code == 1
        assert sorted(p.name for p in out_dir.iterdir()) == ["almost.json", "open.json", "point.json"]
        assert printed.index("almost.yaml") < printed.index("open.yaml") < printed.index("point.yaml")
        assert json.loads((out_dir / "open.json").read_text(encoding="utf-8"))["check"]["ok"] is False


if __name__ == "__main__":
    pytest.main([__file__])
