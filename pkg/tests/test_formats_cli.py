import json

import pytest

from ihcyc import cli, cyclic
from ihcyc.formats import (
    FormatError,
    parse_algebra,
    parse_complex,
    parse_rational,
    serialize_algebra,
    serialize_complex,
)

CONE_HEX = """\
# cone over a hexagon, apex 6
dimension 2
facets
0 1 6
1 2 6
2 3 6
3 4 6
4 5 6
0 5 6
filtration
skeleton 0
6
"""

TRIANGLE = "dimension 1\nfacets\n0 1\n1 2\n0 2\n"

DUAL = """\
dimension 2
name Q[x]/(x^2)
basis 1 x
product 1 1 = 1 0
product 1 x = 0 1
product x 1 = 0 1
product x x = 0 0
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {"cone": CONE_HEX, "tri": TRIANGLE, "dual": DUAL,
                       "field": serialize_algebra(cyclic.ground_field())}.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    rc = cli.main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def records(text):
    return [json.loads(line) for line in text.splitlines()]


# parsing -----------------------------------------------------------------


def test_parse_rational():
    assert str(parse_rational("-3/4")) == "-3/4"
    for bad in ("1.5", "1e3", "x", "1/0"):
        with pytest.raises(FormatError):
            parse_rational(bad)


def test_complex_roundtrip():
    doc = parse_complex(CONE_HEX)
    text = serialize_complex(doc.complex, doc.filtration)
    again = parse_complex(text)
    assert serialize_complex(again.complex, again.filtration) == text
    assert again.complex.simplices() == doc.complex.simplices()


def test_algebra_roundtrip():
    for A in cyclic.bundled_algebras().values():
        text = serialize_algebra(A)
        assert serialize_algebra(parse_algebra(text)) == text


@pytest.mark.parametrize(
    "text,msg",
    [
        ("", "empty complex"),
        ("dimension 1\nfacets\n", "empty complex"),
        ("dimension 2\nfacets\n0 1\n", "declared dimension"),
        ("dimension 1\nfacets\n0 0\n", "line 3: repeated vertex"),
        (TRIANGLE + "filtration\nskeleton 0\n7\n", "line 8: simplex [7] in skeleton 0 is not a face"),
        ("dimension 1\nfacets\n0 1\nskeleton 0\n0\n", "line 4: 'skeleton' outside"),
        ("facets\n0 1\n", "missing 'dimension'"),
    ],
)
def test_complex_errors(text, msg):
    with pytest.raises(FormatError) as exc:
        parse_complex(text)
    assert msg in str(exc.value)


def test_algebra_errors():
    with pytest.raises(FormatError, match="missing product"):
        parse_algebra(DUAL.replace("product x x = 0 0\n", ""))
    with pytest.raises(FormatError, match="line 7"):
        parse_algebra(DUAL.replace("x x = 0 0", "x x = 0.5 0"))
    with pytest.raises(FormatError, match="not associative"):
        parse_algebra("dimension 3\nbasis 1 a b\n" + "".join(
            f"product {x} {y} = {v}\n" for x, y, v in [
                ("1", "1", "1 0 0"), ("1", "a", "0 1 0"), ("1", "b", "0 0 1"),
                ("a", "1", "0 1 0"), ("a", "a", "0 0 1"), ("a", "b", "0 0 0"),
                ("b", "1", "0 0 1"), ("b", "a", "0 0 0"), ("b", "b", "0 1 0")]))


# commands ----------------------------------------------------------------


def test_betti_hollow_triangle(files, capsys):
    rc, out, _ = run(capsys, "betti", files["tri"], "--format", "records")
    assert rc == 0
    recs = records(out)
    assert recs[0]["record"] == "header" and len(recs[0]["input_sha256"]) == 64
    assert {r["degree"]: r["rank"] for r in recs[1:]} == {0: 1, 1: 1}


def test_ih_cone_over_hexagon(files, capsys):
    rc, out, _ = run(capsys, "ih", files["cone"], "--perversity", "0,0,0", "--format", "records")
    assert rc == 0
    assert {r["degree"]: r["rank"] for r in records(out)[1:]} == {0: 1, 1: 0, 2: 0}


def test_ih_from_control_echoes_derivation(files, capsys):
    _, plain, _ = run(capsys, "ih", files["cone"], "--format", "records")
    rc, out, _ = run(capsys, "ih", files["cone"], "--alpha", "2=1", "--beta", "2=1/2", "--format", "records")
    assert rc == 0
    head, body = records(out)[0], records(out)[1:]
    assert head["perversity"] == [0, 0, 0] and head["perversity_source"] == "control"
    assert head["pole_exponents"] == {"2": 0} and head["beta"] == {"2": "1/2"}
    assert body == records(plain)[1:]


def test_ih_requires_filtration(files, capsys):
    rc, _, err = run(capsys, "ih", files["tri"])
    assert rc == 2 and "filtration required for ih" in err


def test_ih_rejects_bad_control(files, capsys):
    rc, _, err = run(capsys, "ih", files["cone"], "--alpha", "2=1", "--beta", "2=2")
    assert rc == 2 and "integer" in err
    rc, _, err = run(capsys, "ih", files["cone"], "--alpha", "2=1", "--beta", "2=0.5")
    assert rc == 2


def test_cyclic_commands(files, capsys):
    rc, out, _ = run(capsys, "cyclic", files["field"], "hh", "--format", "records")
    assert rc == 0
    hh = {r["degree"]: r["rank"] for r in records(out)[1:]}
    assert hh[0] == 1 and all(v == 0 for k, v in hh.items() if k)
    rc, out, _ = run(capsys, "cyclic", files["dual"], "hh", "--max-degree", "5", "--format", "records")
    assert {r["degree"]: r["rank"] for r in records(out)[1:]} == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}
    rc, out, _ = run(capsys, "cyclic", files["dual"], "sbi", "--format", "records")
    assert rc == 0 and all(r["exact"] for r in records(out)[1:])
    rc, out, _ = run(capsys, "cyclic", files["field"], "hp", "--max-degree", "6")
    assert rc == 0 and "periodic" in out


def test_verify_suites(capsys):
    rc, out, _ = run(capsys, "verify", "cone", "--format", "records")
    assert rc == 0 and all(r["passed"] for r in records(out)[1:])
    rc, out, _ = run(capsys, "verify", "mixed", "--format", "records")
    assert rc == 0 and all(r["passed"] for r in records(out)[1:])
    rc, _, err = run(capsys, "verify", "nope")
    assert rc == 2 and "available" in err and "theorem0" in err


def test_verify_failures_still_exit_zero(capsys):
    rc, out, _ = run(capsys, "verify", "theorem0", "--format", "records")
    assert rc == 0
    assert any(not r["passed"] for r in records(out)[1:])


def test_perversity_command(capsys):
    rc, out, _ = run(capsys, "perversity", "--dimension", "4", "--alpha", "4=1", "--beta", "4=3/2",
                     "--format", "records")
    assert rc == 0
    assert [r["p"] for r in records(out)[1:]] == [0, 0, 0, 0, 1]


def test_missing_file(capsys):
    rc, _, err = run(capsys, "betti", "/nonexistent/file")
    assert rc == 2 and "cannot read" in err


def test_table_format(files, capsys):
    rc, out, _ = run(capsys, "betti", files["tri"])
    assert rc == 0 and out.startswith("ihcyc ")
