"""Line-oriented text formats for complexes and algebras.

Complex file::

    # comment
    dimension 2
    facets
    0 1 6
    1 2 6
    filtration
    skeleton 0
    6

Algebra file (the first basis label is the unit)::

    dimension 2
    basis 1 x
    product 1 1 = 1 0
    product 1 x = 0 1
    product x 1 = 0 1
    product x x = 0 0

Coefficients are integers or fractions ``p/q``; decimals are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cyclic import AlgebraError, FiniteAlgebra
from .simplicial import SimplicialComplex, SimplicialError
from .stratified import FilteredComplex, FiltrationError

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_rational(tok: str, line: Optional[int] = None) -> Fraction:
    if not _RATIONAL.match(tok):
        raise FormatError(f"{tok!r} is not an exact rational (use integers or p/q)", line)
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {tok!r}", line) from None


def _vertex_parser(tokens: List[str]):
    if all(re.fullmatch(r"[+-]?\d+", t) for t in tokens):
        return int
    return str


@dataclass
class ComplexDocument:
    complex: SimplicialComplex
    filtration: Optional[FilteredComplex]


def parse_complex(text: str) -> ComplexDocument:
    dimension: Optional[int] = None
    section = None
    skeleton: Optional[int] = None
    facets: List[Tuple[int, List[str]]] = []
    strata: Dict[int, List[Tuple[int, List[str]]]] = {}
    has_filtration = False
    for no, line in _lines(text):
        head, *rest = line.split()
        if head == "dimension":
            if dimension is not None:
                raise FormatError("dimension given twice", no)
            if len(rest) != 1 or not re.fullmatch(r"\d+", rest[0]):
                raise FormatError("expected 'dimension <n>'", no)
            dimension = int(rest[0])
        elif head == "facets":
            section = "facets"
        elif head == "filtration":
            has_filtration = True
            section = "filtration"
            skeleton = None
        elif head == "skeleton":
            if section not in ("filtration", "skeleton"):
                raise FormatError("'skeleton' outside a filtration section", no)
            if len(rest) != 1 or not re.fullmatch(r"\d+", rest[0]):
                raise FormatError("expected 'skeleton <i>'", no)
            skeleton = int(rest[0])
            if skeleton in strata:
                raise FormatError(f"skeleton {skeleton} given twice", no)
            strata[skeleton] = []
            section = "skeleton"
        elif section == "facets":
            facets.append((no, line.split()))
        elif section == "skeleton":
            strata[skeleton].append((no, line.split()))
        else:
            raise FormatError(f"unexpected line {line!r}", no)
    if not facets:
        raise FormatError("empty complex")
    if dimension is None:
        raise FormatError("missing 'dimension' line")
    conv = _vertex_parser([t for _, toks in facets for t in toks] +
                          [t for rows in strata.values() for _, toks in rows for t in toks])
    simplices = []
    for no, toks in facets:
        vs = [conv(t) for t in toks]
        if len(set(vs)) != len(vs):
            raise FormatError(f"repeated vertex in simplex {toks}", no)
        if len(vs) - 1 > dimension:
            raise FormatError(f"simplex {toks} has dimension {len(vs) - 1} > {dimension}", no)
        simplices.append(vs)
    K = SimplicialComplex(simplices)
    if K.dimension != dimension:
        raise FormatError(f"declared dimension {dimension} but the facets span dimension {K.dimension}")
    F = None
    if has_filtration:
        listed = {}
        for i, rows in strata.items():
            if not 0 <= i < dimension:
                raise FormatError(f"skeleton index {i} outside 0..{dimension - 1}", rows[0][0] if rows else None)
            listed[i] = []
            for no, toks in rows:
                vs = tuple(sorted(conv(t) for t in toks))
                if len(set(vs)) != len(vs):
                    raise FormatError(f"repeated vertex in simplex {toks}", no)
                if vs not in K:
                    raise FormatError(f"simplex {list(vs)} in skeleton {i} is not a face of the complex", no)
                if len(vs) - 1 > i:
                    raise FormatError(f"simplex {list(vs)} has dimension {len(vs) - 1} > {i} in skeleton {i}", no)
                listed[i].append(vs)
        try:
            F = FilteredComplex.from_strata(K, listed)
        except (FiltrationError, SimplicialError) as exc:
            raise FormatError(str(exc)) from None
    return ComplexDocument(K, F)


def _fmt_simplex(s) -> str:
    return " ".join(str(v) for v in s)


def serialize_complex(K: SimplicialComplex, F: Optional[FilteredComplex] = None) -> str:
    out = [f"dimension {K.dimension}", "facets"]
    out += [_fmt_simplex(s) for s in K.facets()]
    if F is not None:
        out.append("filtration")
        for i, facets in F.listed_strata().items():
            out.append(f"skeleton {i}")
            out += [_fmt_simplex(s) for s in facets]
    return "\n".join(out) + "\n"


def parse_algebra(text: str) -> FiniteAlgebra:
    dimension = None
    labels: Optional[List[str]] = None
    name = ""
    products: Dict[Tuple[str, str], Tuple[int, List[Fraction]]] = {}
    for no, line in _lines(text):
        head, *rest = line.split()
        if head == "dimension":
            if len(rest) != 1 or not re.fullmatch(r"\d+", rest[0]) or int(rest[0]) < 1:
                raise FormatError("expected 'dimension <d>' with d >= 1", no)
            dimension = int(rest[0])
        elif head == "name":
            name = " ".join(rest)
        elif head == "basis":
            if dimension is None:
                raise FormatError("'basis' before 'dimension'", no)
            if len(rest) != dimension:
                raise FormatError(f"expected {dimension} basis labels, got {len(rest)}", no)
            if len(set(rest)) != len(rest):
                raise FormatError("repeated basis label", no)
            labels = rest
        elif head == "product":
            if labels is None:
                raise FormatError("'product' before 'basis'", no)
            if len(rest) < 3 or rest[2] != "=":
                raise FormatError("expected 'product <a> <b> = <c_1> ... <c_d>'", no)
            a, b, coeffs = rest[0], rest[1], rest[3:]
            for x in (a, b):
                if x not in labels:
                    raise FormatError(f"unknown basis label {x!r}", no)
            if len(coeffs) != dimension:
                raise FormatError(f"expected {dimension} coefficients, got {len(coeffs)}", no)
            if (a, b) in products:
                raise FormatError(f"product {a}*{b} given twice", no)
            products[(a, b)] = (no, [parse_rational(c, no) for c in coeffs])
        else:
            raise FormatError(f"unexpected line {line!r}", no)
    if dimension is None or labels is None:
        raise FormatError("missing 'dimension' or 'basis' line")
    table = []
    for a in labels:
        row = []
        for b in labels:
            if (a, b) not in products:
                raise FormatError(f"missing product {a}*{b}")
            row.append(products[(a, b)][1])
        table.append(row)
    try:
        return FiniteAlgebra(table, labels, unit=0, name=name)
    except AlgebraError as exc:
        raise FormatError(str(exc)) from None


def serialize_algebra(A: FiniteAlgebra) -> str:
    out = [f"dimension {A.dim}"]
    if A.name:
        out.append(f"name {A.name}")
    out.append("basis " + " ".join(A.labels))
    table = A.structure_table()
    for i, a in enumerate(A.labels):
        for j, b in enumerate(A.labels):
            out.append(f"product {a} {b} = " + " ".join(str(c) for c in table[i][j]))
    return "\n".join(out) + "\n"
