"""Plain-text file formats.

Lattice::

    lattice <n>
    <n rows of n rationals: the Gram matrix>
    parent <m>                 # optional block
    <m rows of m rationals: the parent Gram matrix>
    coords
    <n rows of m rationals: basis in parent coordinates>

Code::

    code <p> <n> <k>
    <k rows of n residues in 0..p-1>

Matrix::

    matrix <rows> <cols>
    <rows of rationals>

Ideal (in Q[zeta_m], power basis coordinates)::

    ideal <m>
    denominator <d>
    <phi(m) rows of phi(m) integers: Z-basis of d*J>

Rationals are written ``a`` or ``a/b``. Blank lines and ``#`` comments are
ignored. Serialisation is canonical (lowest terms, single spaces), so
``format(parse(text))`` is stable.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import InputError, ParseError
from .exact import ExactMatrix


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_rational(tok: str) -> Fraction:
    try:
        if "." in tok or "e" in tok.lower():
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {tok!r}") from None


def _int(tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}") from None


def _rows(lines: list[str], start: int, count: int, width: int, what: str):
    if start + count > len(lines):
        raise ParseError(f"{what}: expected {count} rows, file ended early")
    rows = []
    for i in range(count):
        toks = lines[start + i].split()
        if len(toks) != width:
            raise ParseError(f"{what}: row {i + 1} has {len(toks)} entries, expected {width}")
        rows.append([parse_rational(t) for t in toks])
    return rows


def _fmt_rows(m: ExactMatrix) -> str:
    return "".join(" ".join(str(x) for x in r) + "\n" for r in m.rows)


# lattices -----------------------------------------------------------------


def parse_lattice(text: str):
    from .lattice import Lattice

    lines = _lines(text)
    if not lines:
        raise ParseError("empty lattice file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "lattice":
        raise ParseError("lattice file must start with 'lattice <n>'")
    n = _int(head[1], "dimension")
    gram = ExactMatrix(_rows(lines, 1, n, n, "gram"), ncols=n)
    pos = 1 + n
    coords = parent = None
    if pos < len(lines):
        ph = lines[pos].split()
        if len(ph) != 2 or ph[0] != "parent":
            raise ParseError(f"unexpected line after Gram matrix: {lines[pos]!r}")
        m = _int(ph[1], "parent dimension")
        pgram = ExactMatrix(_rows(lines, pos + 1, m, m, "parent gram"), ncols=m)
        pos += 1 + m
        if pos >= len(lines) or lines[pos] != "coords":
            raise ParseError("parent block needs a 'coords' section")
        coords = ExactMatrix(_rows(lines, pos + 1, n, m, "coords"), ncols=m)
        pos += 1 + n
        if pos != len(lines):
            raise ParseError("trailing content after coords")
        try:
            parent = Lattice(pgram)
        except InputError as exc:
            raise ParseError(f"parent: {exc}") from None
    try:
        return Lattice(gram, coords, parent)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def format_lattice(lat) -> str:
    out = f"lattice {lat.dim}\n" + _fmt_rows(lat.gram)
    if lat.coords is not None:
        out += f"parent {lat.parent.dim}\n" + _fmt_rows(lat.parent.gram)
        out += "coords\n" + _fmt_rows(lat.coords)
    return out


# codes --------------------------------------------------------------------


def parse_code(text: str):
    from .codes import LinearCode

    lines = _lines(text)
    if not lines:
        raise ParseError("empty code file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "code":
        raise ParseError("code file must start with 'code <p> <n> <k>'")
    p, n, k = (_int(t, "code header") for t in head[1:])
    rows = _rows(lines, 1, k, n, "generator")
    if len(lines) != 1 + k:
        raise ParseError("trailing content after generator rows")
    ints = []
    for r in rows:
        if any(x.denominator != 1 or not 0 <= x < p for x in r):
            raise ParseError(f"generator entries must be residues in 0..{p - 1}")
        ints.append([int(x) for x in r])
    try:
        code = LinearCode(p, ints, n)
    except InputError as exc:
        raise ParseError(str(exc)) from None
    if code.k != k:
        raise ParseError(f"generator rows have rank {code.k} over F_{p}, header says {k}")
    return code


def format_code(code) -> str:
    out = f"code {code.p} {code.n} {code.k}\n"
    return out + "".join(" ".join(str(x) for x in r) + "\n" for r in code.generator)


# matrices -----------------------------------------------------------------


def parse_matrix(text: str) -> ExactMatrix:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "matrix":
        raise ParseError("matrix file must start with 'matrix <rows> <cols>'")
    r, c = _int(head[1], "rows"), _int(head[2], "cols")
    rows = _rows(lines, 1, r, c, "matrix")
    if len(lines) != 1 + r:
        raise ParseError("trailing content after matrix rows")
    return ExactMatrix(rows, ncols=c)


def format_matrix(m: ExactMatrix) -> str:
    return f"matrix {m.nrows} {m.ncols}\n" + _fmt_rows(m)


# ideals -------------------------------------------------------------------


def parse_ideal(text: str, m: int | None = None):
    from .cyclotomic import CycloField, FractionalIdeal

    lines = _lines(text)
    if len(lines) < 2:
        raise ParseError("ideal file needs 'ideal <m>' and 'denominator <d>' lines")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "ideal":
        raise ParseError("ideal file must start with 'ideal <m>'")
    fm = _int(head[1], "m")
    if m is not None and CycloField(m).m != CycloField(fm).m:
        raise ParseError(f"ideal file is for m = {fm}, command asked for m = {m}")
    dh = lines[1].split()
    if len(dh) != 2 or dh[0] != "denominator":
        raise ParseError("second line must be 'denominator <d>'")
    den = _int(dh[1], "denominator")
    field = CycloField(fm)
    phi = field.degree
    rows = _rows(lines, 2, phi, phi, "ideal basis")
    if len(lines) != 2 + phi:
        raise ParseError("trailing content after ideal basis")
    if any(x.denominator != 1 for r in rows for x in r):
        raise ParseError("ideal basis rows must be integers (scale by the denominator)")
    try:
        return FractionalIdeal.from_generators(field, [[x / den for x in r] for r in rows], z_basis=True)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def format_ideal(ideal) -> str:
    out = f"ideal {ideal.field.m}\ndenominator {ideal.denominator}\n"
    return out + "".join(" ".join(str(x) for x in r) + "\n" for r in ideal.numerator_basis)


def read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
