#!/usr/bin/env python3
"""
Tests for session files, bounds and the JSON codec.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from freydlab.codec import decode_homology_data, dumps, encode_error, encode_homology_data, loads
from freydlab.coeff import Ring
from freydlab.config import Bounds, parse_bounds
from freydlab.errors import FreydLabError, MalformedPresentation, SessionError
from freydlab.homology import check_axioms, universal_homology
from freydlab.session import load_session, parse_module, parse_session

Z = Ring.integers()
SESSIONS = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))), "sessions")

HEADER = """\
ring: Z
category:
  kind: ordinal
  n: 2
"""


class TestParseSession:
    """Tests for reading session documents."""

    def test_defaults(self):
        """Test a minimal session gets every morphism distinguished and window [0, 0]."""
        s = parse_session(HEADER)
        assert s.window == (0, 0)
        assert s.distinguished == "all"
        assert len(s.pairs.pairs) == 3
        assert not s.has_homology

    @pytest.mark.parametrize("name", sorted(os.listdir(SESSIONS)))
    def test_sample_sessions_are_yaml(self, name):
        """Test every sample session is a YAML document that loads."""
        assert name.endswith(".yaml")
        s = load_session(os.path.join(SESSIONS, name))
        assert s.category.objects

    def test_unknown_top_level_key(self):
        """Test an unknown key is rejected at its line and column."""
        with pytest.raises(SessionError) as info:
            parse_session(HEADER + "window: [0, 1]\ncolour: red\n")
        assert (info.value.line, info.value.column) == (6, 1)

    def test_unknown_category_key(self):
        """Test keys inside the category block are checked too."""
        with pytest.raises(SessionError) as info:
            parse_session(HEADER + "  size: 3\n")
        assert info.value.line == 5
        assert "size" in str(info.value)

    def test_unknown_morphism(self):
        """Test distinguished morphisms must exist."""
        with pytest.raises(SessionError) as info:
            parse_session(HEADER + "distinguished: [id_0, \"1->0\"]\n")
        assert info.value.line == 5
        assert "1->0" in str(info.value)

    def test_yaml_syntax_error(self):
        """Test YAML syntax errors carry a position."""
        with pytest.raises(SessionError) as info:
            parse_session("ring: Z\ncategory: [point\n")
        assert info.value.line is not None

    @pytest.mark.parametrize("text", ["window: [1, 0]", "window: 3", "points: [\"7\"]", "targets: [motives]"])
    def test_rejected_fields(self, text):
        """Test malformed windows, points and targets."""
        with pytest.raises(SessionError):
            parse_session(HEADER + text + "\n")

    def test_decorated_quiver(self):
        """Test a quiver with a loop e, e² = e closes to a two-morphism category."""
        text = (
            "ring: Z\n"
            "category:\n"
            "  kind: quiver\n"
            "  vertices: [x]\n"
            "  edges: [[e, x, x]]\n"
            "  relations:\n"
            "    - {source: x, lhs: [e, e], rhs: [e]}\n"
        )
        s = parse_session(text)
        assert len(s.category.morphisms) == 2

    def test_coproduct_objects_must_exist(self):
        """Test coproduct rows are checked against the objects."""
        with pytest.raises(SessionError):
            parse_session(HEADER + "coproducts:\n  - {object: \"1\", summands: [q]}\n")


class TestSessionData:
    """Tests for homology data and realization blocks."""

    def test_explicit_values(self):
        """Test a hand-written almost-trivial block satisfies the axioms."""
        s = parse_session(HEADER + "homology:\n  values:\n    \"(1,0)@0\": 1\n")
        K = s.homology_data()
        assert K.value("0->1", 0).summary().describe() == "Z"
        assert K.value("id_1", 0).summary().describe() == "0"
        assert check_axioms(K).ok

    def test_unknown_pair(self):
        """Test values keyed by an unknown pair are rejected."""
        s = parse_session(HEADER + "homology:\n  values:\n    \"(0,1)@0\": 1\n")
        with pytest.raises(SessionError):
            s.homology_data()

    def test_realization(self):
        """Test a realization block becomes an exact functor."""
        s = parse_session(HEADER + "realizations:\n  - name: M\n    values: {\"0\": R, \"1\": R}\n"
                          "    morphisms: {\"0->1\": 2}\n")
        G = universal_homology(s.category, s.ring, s.window)
        (F,) = s.realizations(G.component)
        assert F.name == "M"
        assert F.obj(G.H("1", 0).obj).summary().describe() == "Z"

    @pytest.mark.parametrize(
        "value, expected",
        [(0, "0"), ("0", "0"), (2, "Z^2"), ("R^2", "Z^2"), ("R/3", "Z/3"), ("Z^2/2", "Z/2^2"),
         ({"generators": 1, "relations": [[4]]}, "Z/4")],
    )
    def test_parse_module(self, value, expected):
        """Test module shorthands."""
        assert parse_module(Z, value).summary().describe() == expected

    def test_parse_module_rejects_garbage(self):
        """Test an unreadable module is an error."""
        with pytest.raises(FreydLabError):
            parse_module(Z, "Z[x]")


class TestBounds:
    """Tests for bound parsing and overrides."""

    def test_parse(self):
        """Test override strings update only the named bounds."""
        b = parse_bounds("cert=2, sat=5")
        assert (b.rewrite, b.cert, b.sat, b.size) == (1000, 2, 5, 2)
        assert parse_bounds("") == Bounds()

    @pytest.mark.parametrize("text", ["depth=3", "cert", "cert=x", "cert=-1"])
    def test_invalid(self, text):
        """Test unknown keys, missing values and negative bounds are refused."""
        with pytest.raises(FreydLabError):
            parse_bounds(text)

    def test_flags_win(self):
        """Test explicit overrides take precedence and None keeps the base."""
        base = parse_bounds("cert=2")
        assert base.merged(cert=7, sat=None) == Bounds(cert=7)


class TestCodec:
    """Tests for JSON documents."""

    def test_dumps_is_canonical(self):
        """Test key order does not change the text."""
        assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
        assert loads(dumps({"a": 1})) == {"schema": 1, "a": 1}

    @pytest.mark.parametrize("text", ["{", "[]", "{\"schema\": 2}"])
    def test_loads_rejects(self, text):
        """Test invalid JSON and unsupported schemas."""
        with pytest.raises(MalformedPresentation):
            loads(text)

    def test_homology_data_document(self):
        """Test homology data survives encoding over the same Nori diagram."""
        s = parse_session(HEADER + "homology:\n  almost_trivial: 0\n")
        K = s.homology_data()
        data = encode_homology_data(K)
        assert list(data["values"]) == ["0->1@0"]
        assert data["values"]["0->1@0"]["generators"] == 1
        again = decode_homology_data(s.nori, data)
        assert encode_homology_data(again) == data

    def test_error_document(self):
        """Test session errors keep their position."""
        out = encode_error(SessionError("bad", 3, 4))
        assert out == {"error": "SessionError", "message": "line 3, column 4: bad", "line": 3, "column": 4}


if __name__ == "__main__":
    pytest.main([__file__])
