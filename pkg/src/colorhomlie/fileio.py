"""Algebra description files and related bundles.

An algebra file is a JSON document::

    {
      "schema": 1,
      "name": "sl2c_z2z2",
      "group": {"orders": [2, 2]},
      "root_order": 2,
      "epsilon": {"exponents": [[0, 1], [1, 0]]},
      "basis": [{"name": "e1", "degree": [1, 0]}, ...],
      "bracket": {"e1,e2": {"e3": "1"}, ...},
      "alpha": [["-1", "0", "0"], ...]
    }

Scalars use the literal grammar `p`, `p/q`, or `[c0;c1;...]` and round-trip
bit-exactly.  Matrices are row-major and act in the column convention.
root_order defaults to the exponent of the grading group.
"""
from __future__ import annotations

import json

from .algebra_core import BracketTable, ColorHomAlgebra, GradedBasis
from .representations import Representation
from .scalars_grading import (BiCharacter, CycloScalar, FiniteAbelianGroup,
                              ScalarError, format_scalar, parse_scalar)


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


def _locate(text: str, needle: str):
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def _parse_scalar_located(text_value: str, m: int, source: str) -> CycloScalar:
    try:
        return parse_scalar(text_value, m)
    except ScalarError as exc:
        line, column = _locate(source, text_value)
        raise ParseError(str(exc), line, column) from exc


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc


def parse_matrix(rows, m: int, source: str = ""):
    return [[_parse_scalar_located(str(v), m, source) for v in row] for row in rows]


def serialize_matrix(matrix):
    return [[format_scalar(c) for c in row] for row in matrix]


def parse_algebra_document(text: str) -> ColorHomAlgebra:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be a JSON object")
    for key in ("group", "basis"):
        if key not in doc:
            raise ParseError(f"missing required section {key!r}")
    group = FiniteAbelianGroup(tuple(int(n) for n in doc["group"]["orders"]))
    m = int(doc.get("root_order", max(group.exponent, 1)))
    exponents = doc.get("epsilon", {}).get("exponents")
    if exponents is None:
        exponents = [[0] * group.rank for _ in range(group.rank)]
    eps = BiCharacter(group, exponents, m)
    names, degrees = [], []
    for entry in doc["basis"]:
        names.append(str(entry["name"]))
        degrees.append(group.element(tuple(int(c) for c in entry["degree"])))
    basis = GradedBasis(tuple(names), tuple(degrees), group)
    dim = basis.dim
    entries = {}
    for pair_key, value in doc.get("bracket", {}).items():
        parts = [p.strip() for p in pair_key.split(",")]
        if len(parts) != 2 or parts[0] not in names or parts[1] not in names:
            raise ParseError(f"bad bracket pair key {pair_key!r}")
        i, j = names.index(parts[0]), names.index(parts[1])
        vec = [CycloScalar.zero(m)] * dim
        for out_name, literal in value.items():
            if out_name not in names:
                raise ParseError(f"unknown basis name {out_name!r} in bracket value")
            vec[names.index(out_name)] = _parse_scalar_located(str(literal), m, text)
        entries[(i, j)] = vec  # redundant (j,i) input is validated by the table
    bracket = BracketTable(basis, eps, entries, m)
    if "alpha" in doc:
        alpha = parse_matrix(doc["alpha"], m, text)
        if len(alpha) != dim or any(len(r) != dim for r in alpha):
            raise ParseError(f"alpha must be a {dim}x{dim} matrix")
    else:
        from . import linalg
        alpha = linalg.identity(dim, m)
    return ColorHomAlgebra(basis, eps, bracket, alpha, m,
                           name=str(doc.get("name", "")))


def parse_algebra_file(path: str) -> ColorHomAlgebra:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra_document(fh.read())


def serialize_algebra(A: ColorHomAlgebra) -> str:
    doc = {
        "schema": 1,
        "name": A.name,
        "group": {"orders": list(A.basis.group.orders)},
        "root_order": A.m,
        "epsilon": {"exponents": [list(row) for row in A.eps.exponent_matrix]},
        "basis": [{"name": n, "degree": list(d.components)}
                  for n, d in zip(A.basis.names, A.basis.degrees)],
        "bracket": {},
        "alpha": serialize_matrix(A.alpha),
    }
    for (i, j) in sorted(A.bracket.pairs):
        vec = A.bracket.pairs[(i, j)]
        if all(c.is_zero() for c in vec):
            continue
        key = f"{A.basis.names[i]},{A.basis.names[j]}"
        doc["bracket"][key] = {A.basis.names[k]: format_scalar(c)
                               for k, c in enumerate(vec) if not c.is_zero()}
    return json.dumps(doc, indent=2) + "\n"


def parse_commutative_algebra_document(text: str):
    """Commutative associative algebra: same layout, with a "product" section
    of ordered-pair entries completed by the eps-commutativity rule."""
    from .hls_bracket import CommutativeColorAlgebra
    doc = _load_json(text)
    group = FiniteAbelianGroup(tuple(int(n) for n in doc["group"]["orders"]))
    m = int(doc.get("root_order", max(group.exponent, 1)))
    exponents = doc.get("epsilon", {}).get("exponents")
    if exponents is None:
        exponents = [[0] * group.rank for _ in range(group.rank)]
    eps = BiCharacter(group, exponents, m)
    names, degrees = [], []
    for entry in doc["basis"]:
        names.append(str(entry["name"]))
        degrees.append(group.element(tuple(int(c) for c in entry["degree"])))
    basis = GradedBasis(tuple(names), tuple(degrees), group)
    dim = basis.dim
    if "product" not in doc:
        raise ParseError("commutative algebra file needs a \"product\" section")
    mu = [[None] * dim for _ in range(dim)]
    for pair_key, value in doc["product"].items():
        parts = [p.strip() for p in pair_key.split(",")]
        i, j = names.index(parts[0]), names.index(parts[1])
        vec = [CycloScalar.zero(m)] * dim
        for out_name, literal in value.items():
            vec[names.index(out_name)] = _parse_scalar_located(str(literal), m, text)
        mu[i][j] = vec
    for i in range(dim):
        for j in range(dim):
            if mu[i][j] is None:
                if mu[j][i] is not None:
                    e = eps(degrees[j], degrees[i])
                    mu[i][j] = [e * c for c in mu[j][i]]
                else:
                    mu[i][j] = [CycloScalar.zero(m)] * dim
    return CommutativeColorAlgebra(basis, eps, mu, m)


def parse_commutative_algebra_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_commutative_algebra_document(fh.read())


def parse_matrix_bundle(text: str, m: int) -> dict:
    """Named matrices: {"matrices": {"alpha_1": [[...], ...], ...}}."""
    doc = _load_json(text)
    matrices = doc.get("matrices", doc if isinstance(doc, dict) else None)
    if not isinstance(matrices, dict):
        raise ParseError("matrix bundle must map names to matrices")
    out = {}
    for name, rows in matrices.items():
        if name == "schema":
            continue
        out[str(name)] = parse_matrix(rows, m, text)
    return out


def parse_representation_document(text: str, A: ColorHomAlgebra) -> Representation:
    doc = _load_json(text)
    group = A.basis.group
    names, degrees = [], []
    for entry in doc["carrier"]:
        names.append(str(entry["name"]))
        degrees.append(group.element(tuple(int(c) for c in entry["degree"])))
    carrier = GradedBasis(tuple(names), tuple(degrees), group)
    rho = []
    for an in A.basis.names:
        if an not in doc["rho"]:
            raise ParseError(f"representation misses rho[{an!r}]")
        rho.append(parse_matrix(doc["rho"][an], A.m, text))
    beta = parse_matrix(doc["beta"], A.m, text)
    return Representation(carrier, rho, beta, A.m)


def parse_bracket_terms(text: str, A: ColorHomAlgebra):
    """Deformation term file: {"terms": [{<bracket dict>}, ...]}."""
    doc = _load_json(text)
    tables = []
    for term in doc["terms"]:
        entries = {}
        for pair_key, value in term.items():
            parts = [p.strip() for p in pair_key.split(",")]
            i, j = A.basis.names.index(parts[0]), A.basis.names.index(parts[1])
            vec = [CycloScalar.zero(A.m)] * A.dim
            for out_name, literal in value.items():
                vec[A.basis.names.index(out_name)] = \
                    _parse_scalar_located(str(literal), A.m, text)
            entries[(i, j)] = vec
        tables.append(BracketTable(A.basis, A.eps, entries, A.m))
    return tables


def parse_alpha_terms(text: str, A: ColorHomAlgebra):
    doc = _load_json(text)
    return [parse_matrix(rows, A.m, text) for rows in doc["terms"]]
