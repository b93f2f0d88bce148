import json

import numpy as np

from disjoint_weighing.matcore import IntMatrix
from disjoint_weighing.quadratic import QuadraticScalar
from disjoint_weighing.report import (
    cells,
    render_certificate,
    render_certificates,
    render_eigenmatrices,
    render_intersection_matrix,
    render_tensor_json,
)
from disjoint_weighing.scheme import IntersectionTensor
from disjoint_weighing.spectra import closed_form_P
from disjoint_weighing.verify import Certificate, Check, Witness


def test_render_certificate() -> None:
    """Test one PASS and one FAIL line under the subject."""
    certificate = Certificate(
        subject="abc",
        checks=(
            Check(name="weighing", passed=True),
            Check(name="skew", passed=False, witness=Witness((0, 0), "1", "0"), detail="W0"),
        ),
    )
    expected: str = "# subject abc\nPASS weighing\nFAIL skew at=(0,0) found=1 expected=0 (W0)\n"
    assert render_certificate(certificate) == expected
    assert render_certificate(certificate, with_subject=False).startswith("PASS weighing\n")


def test_render_certificates_concatenates() -> None:
    """Test that several certificates are written one after another."""
    certificate = Certificate(subject="s", checks=(Check(name="a", passed=True),))
    assert render_certificates([certificate, certificate]) == "# subject s\nPASS a\n" * 2


def test_cells_filter() -> None:
    """Test that quadratic scalars are written as a+b*sqrt(-m)."""
    assert cells([1, QuadraticScalar.root(3), -QuadraticScalar.root(3)]) == "1 sqrt(-3) -sqrt(-3)"


def test_render_eigenmatrices() -> None:
    """Test the label line and the P and Q sections."""
    text: str = render_eigenmatrices(closed_form_P(1, 1, 1), "closed form")
    lines: list[str] = text.splitlines()
    assert lines[0] == "# closed form: 3-class scheme on 4 vertices, sqrt(-1)"
    assert lines[1] == "# eigenspaces trivial,complex+,complex-,real"
    assert lines[2] == "P"
    assert lines[3] == "1 1 1 1"
    assert lines[4] == "1 -sqrt(-1) sqrt(-1) -1"
    assert lines[7] == "Q"
    assert "" not in lines
    assert len(lines) == 12


def test_render_intersection_matrix() -> None:
    """Test the header and rows of L1."""
    text: str = render_intersection_matrix(IntMatrix([[0, 1], [1, 0]]), d=1)
    assert text.splitlines() == ["# L1 of a 1-class scheme: row j, column k holds p[1][j][k]", "0 1", "1 0"]


def test_render_tensor_json() -> None:
    """Test that the tensor is written as nested lists."""
    tensor = IntersectionTensor(d=1, p=np.array([[[1, 0], [0, 1]], [[0, 1], [3, 2]]]))
    document = json.loads(render_tensor_json(tensor))
    assert document == {"classes": 1, "p": [[[1, 0], [0, 1]], [[0, 1], [3, 2]]]}
