"""Render certificates, intersection matrices and eigenmatrices as text through Jinja2 templates."""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from typing import TYPE_CHECKING

from jinja2 import Environment, PackageLoader, StrictUndefined, select_autoescape

if TYPE_CHECKING:
    from disjoint_weighing.matcore import Matrix
    from disjoint_weighing.quadratic import QuadraticScalar
    from disjoint_weighing.scheme import IntersectionTensor
    from disjoint_weighing.spectra import Eigenmatrices
    from disjoint_weighing.verify import Certificate


def cells(row: Iterable[QuadraticScalar | int]) -> str:
    """Space-separated entries; quadratic scalars render as a+b*sqrt(-m)."""
    return " ".join(str(value) for value in row)


environment: Environment = Environment(
    loader=PackageLoader("disjoint_weighing", "templates"),
    autoescape=select_autoescape(["html"]),
    undefined=StrictUndefined,
)

# Filters usable in the templates, e.g. {{ row | cells }}.
environment.filters["cells"] = cells


def render_certificate(certificate: Certificate, *, with_subject: bool = True) -> str:
    """One line per check: "PASS <name>" or "FAIL <name> <witness>", after an optional "# subject" line."""
    template = environment.get_template("certificate.txt.j2")
    return template.render(subject=certificate.subject if with_subject else "", checks=certificate.checks)


def render_certificates(certificates: Sequence[Certificate]) -> str:
    return "".join(render_certificate(certificate) for certificate in certificates)


def render_eigenmatrices(eig: Eigenmatrices, label: str) -> str:
    return environment.get_template("eigenmatrices.txt.j2").render(eig=eig, label=label)


def render_intersection_matrix(matrix: Matrix, d: int, index: int = 1) -> str:
    return environment.get_template("intersection.txt.j2").render(matrix=matrix.tolist(), d=d, index=index)


def render_tensor_json(tensor: IntersectionTensor) -> str:
    """p[i][j][k] = p_{ij}^k as nested JSON lists."""
    return json.dumps({"classes": tensor.d, "p": tensor.tolist()}, indent=2) + "\n"
