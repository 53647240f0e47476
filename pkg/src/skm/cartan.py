"""Super Cartan matrix data model.

A ``Diagram`` is a normalized n x n scalar matrix A (a_ij = alpha_j(h_i))
together with a parity vector.  Normalization scales each row so that the
diagonal entry is 0 or 2, and a row with zero diagonal has its first nonzero
entry equal to 1.  Zero rows are kept as-is and can be inspected with
``Diagram.zero_rows``.

Vertices are indexed from 0 throughout the library; the CLI presents them
1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .scalars import (
    ONE,
    Scalar,
    ZERO,
    format_scalar,
    is_in_even_nonpositive_integers,
    is_nonpositive_integer,
    parse_scalar,
    rational,
    scalar,
)


class VertexKind(Enum):
    EVEN_SL2 = "even"  # a_ii = 2, p = 0, drawn as a circle
    ODD_OSP = "odd"  # a_ii = 2, p = 1, drawn as a filled dot
    ISOTROPIC = "isotropic"  # a_ii = 0, p = 1, drawn as a crossed circle
    HEISENBERG = "heisenberg"  # a_ii = 0, p = 0, drawn as a box


@dataclass(frozen=True)
class Diagram:
    entries: tuple  # tuple[tuple[Scalar, ...], ...]
    parity: tuple  # tuple[int, ...]
    name: Optional[str] = None

    @property
    def n(self) -> int:
        return len(self.parity)

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def kind(self, i: int) -> VertexKind:
        diag = self.entries[i][i]
        if diag.is_zero():
            return VertexKind.ISOTROPIC if self.parity[i] else VertexKind.HEISENBERG
        return VertexKind.ODD_OSP if self.parity[i] else VertexKind.EVEN_SL2

    def is_isotropic(self, i: int) -> bool:
        return self.kind(i) is VertexKind.ISOTROPIC

    def isotropic_vertices(self) -> list:
        return [i for i in range(self.n) if self.is_isotropic(i)]

    def is_regular_vertex(self, i: int) -> bool:
        """a_ij = 0 iff a_ji = 0 against every other vertex."""
        return all(
            self.entries[i][j].is_zero() == self.entries[j][i].is_zero()
            for j in range(self.n)
        )

    def neighbors(self, i: int) -> list:
        return [
            j
            for j in range(self.n)
            if j != i
            and (not self.entries[i][j].is_zero() or not self.entries[j][i].is_zero())
        ]

    def zero_rows(self) -> list:
        return [
            i
            for i in range(self.n)
            if all(e.is_zero() for e in self.entries[i])
        ]

    def with_name(self, name: Optional[str]) -> "Diagram":
        return Diagram(self.entries, self.parity, name)

    def key(self) -> tuple:
        """Hashable identity ignoring the name."""
        return (
            self.parity,
            tuple(tuple(format_scalar(e) for e in row) for row in self.entries),
        )

    def __repr__(self) -> str:
        rows = "; ".join(
            ",".join(format_scalar(e) for e in row) for row in self.entries
        )
        return f"<Diagram n={self.n} parity={list(self.parity)} [{rows}]>"


def normalize_with_scales(matrix, parity, name=None):
    """Normalize rows; return the Diagram and the applied row scale factors.

    Scaling row i by s corresponds to replacing the coroot h_i by s * h_i, so
    callers that carry coroot-dependent data (weights) can convert with the
    returned scales.
    """
    rows = [list(map(scalar, row)) for row in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    parity = tuple(int(b) for b in parity)
    if len(parity) != n:
        raise ValueError("parity length must match matrix size")
    if any(b not in (0, 1) for b in parity):
        raise ValueError("parity entries must be 0 or 1")
    scales = []
    for i in range(n):
        diag = rows[i][i]
        if not diag.is_zero():
            s = rational(2) / diag
        else:
            lead = next((e for e in rows[i] if not e.is_zero()), None)
            s = ONE if lead is None else ONE / lead
        scales.append(s)
        if s != ONE:
            rows[i] = [e * s for e in rows[i]]
    d = Diagram(tuple(tuple(r) for r in rows), parity, name)
    return d, tuple(scales)


def normalize(matrix, parity, name=None) -> Diagram:
    """Normalize a scalar matrix + parity vector into a Diagram."""
    return normalize_with_scales(matrix, parity, name)[0]


def diagram(matrix, parity, name=None) -> Diagram:
    """Build a normalized Diagram from scalar-expression strings or Scalars."""
    return normalize(matrix, parity, name)


# ---------------------------------------------------------------------------
# generalized Cartan matrix conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GcmViolation:
    rule: str  # "1", "2" or "3'"
    i: int
    j: int

    def describe(self) -> str:
        if self.rule == "1":
            return f"row {self.i}: zero diagonal with even parity but entry ({self.i},{self.j}) is nonzero"
        if self.rule == "2":
            return f"entry ({self.i},{self.j}) is not in 2^p(i) * Z_<=0"
        return f"entry ({self.i},{self.j}) is zero but ({self.j},{self.i}) is not"


@dataclass(frozen=True)
class GcmVerdict:
    ok: bool
    violations: tuple

    def __bool__(self) -> bool:
        return self.ok


def is_generalized_cartan(d: Diagram) -> GcmVerdict:
    """Check the three generalized-Cartan-matrix row conditions.

    1. a_ii = 0 with even parity forces the whole row to vanish.
    2. a_ii = 2 forces off-diagonal entries into 2^p(i) * Z_<=0.
    3'. a_ij = 0 forces a_ji = 0.
    """
    bad = []
    for i in range(d.n):
        diag = d.entries[i][i]
        if diag.is_zero() and d.parity[i] == 0:
            for j in range(d.n):
                if not d.entries[i][j].is_zero():
                    bad.append(GcmViolation("1", i, j))
        elif not diag.is_zero():
            ok_entry = (
                is_in_even_nonpositive_integers
                if d.parity[i]
                else is_nonpositive_integer
            )
            for j in range(d.n):
                if j != i and not d.entries[i][j].is_zero() and not ok_entry(d.entries[i][j]):
                    bad.append(GcmViolation("2", i, j))
        for j in range(d.n):
            if d.entries[i][j].is_zero() and not d.entries[j][i].is_zero():
                bad.append(GcmViolation("3'", i, j))
    return GcmVerdict(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# symmetrizability: propagate d_i a_ij = d_j a_ji along a spanning tree and
# check every remaining edge exactly
# ---------------------------------------------------------------------------


def is_symmetrizable(d: Diagram):
    """Decide existence of invertible diagonal D with D*A symmetric.

    Returns (True, witness) with a tuple of nonzero Scalars, or (False, None).
    """
    n = d.n
    for i in range(n):
        for j in range(n):
            if d.entries[i][j].is_zero() != d.entries[j][i].is_zero():
                return False, None
    diag: list = [None] * n
    for start in range(n):
        if diag[start] is not None:
            continue
        diag[start] = ONE
        queue = [start]
        while queue:
            i = queue.pop()
            for j in d.neighbors(i):
                if d.entries[i][j].is_zero():
                    continue
                want = diag[i] * d.entries[i][j] / d.entries[j][i]
                if diag[j] is None:
                    diag[j] = want
                    queue.append(j)
                elif diag[j] != want:
                    return False, None
    witness = tuple(diag)
    for i in range(n):
        for j in range(n):
            if witness[i] * d.entries[i][j] != witness[j] * d.entries[j][i]:
                return False, None
    return True, witness


def components(d: Diagram) -> list:
    """Connected components of the nonzero-pattern graph, as sorted lists."""
    seen = [False] * d.n
    out = []
    for s in range(d.n):
        if seen[s]:
            continue
        comp, queue = [], [s]
        seen[s] = True
        while queue:
            i = queue.pop()
            comp.append(i)
            for j in d.neighbors(i):
                if not seen[j]:
                    seen[j] = True
                    queue.append(j)
        out.append(sorted(comp))
    return out


def is_connected(d: Diagram) -> bool:
    return len(components(d)) == 1


def subdiagram(d: Diagram, vertices: Iterable) -> Diagram:
    """Full subdiagram on the given vertices, re-normalized."""
    vs = sorted(set(vertices))
    if not vs:
        raise ValueError("subdiagram needs a nonempty vertex set")
    if vs[0] < 0 or vs[-1] >= d.n:
        raise ValueError(f"vertex out of range in {vs}")
    rows = [[d.entries[i][j] for j in vs] for i in vs]
    return normalize(rows, [d.parity[i] for i in vs], d.name)


def isotropic_ratios(d: Diagram, j: int) -> list:
    """Both ratios a_ji/a_jk and a_jk/a_ji over unordered neighbor pairs of j."""
    if not d.is_isotropic(j):
        raise ValueError(f"vertex {j} is not isotropic")
    nbrs = [i for i in d.neighbors(j) if not d.entries[j][i].is_zero()]
    out = []
    for x in range(len(nbrs)):
        for y in range(x + 1, len(nbrs)):
            i, k = nbrs[x], nbrs[y]
            out.append(d.entries[j][i] / d.entries[j][k])
            out.append(d.entries[j][k] / d.entries[j][i])
    return out


# ---------------------------------------------------------------------------
# the diagram file format:
#   { "name": "<optional>", "parity": [1,0,...], "matrix": [["0","1"],["-1","2"]] }
# ---------------------------------------------------------------------------


def diagram_to_dict(d: Diagram) -> dict:
    out: dict = {}
    if d.name:
        out["name"] = d.name
    out["parity"] = list(d.parity)
    out["matrix"] = [[format_scalar(e) for e in row] for row in d.entries]
    return out


def diagram_from_dict(data: dict) -> Diagram:
    if "parity" not in data or "matrix" not in data:
        raise ValueError("diagram file needs 'parity' and 'matrix' fields")
    matrix = [[parse_scalar(cell) for cell in row] for row in data["matrix"]]
    return normalize(matrix, data["parity"], data.get("name"))


def dumps_diagram(d: Diagram) -> str:
    return json.dumps(diagram_to_dict(d), ensure_ascii=False) + "\n"


def loads_diagram(text: str) -> Diagram:
    return diagram_from_dict(json.loads(text))


def load_diagram(path) -> Diagram:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_diagram(fh.read())


def save_diagram(d: Diagram, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_diagram(d))
