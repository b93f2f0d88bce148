from disjoint_weighing.construct import PairFamily, PairKind, base_pair, builtin_seed_dw, pair_family
from disjoint_weighing.matcore import TernaryMatrix, identity
from disjoint_weighing.verify import (
    Certificate,
    Witness,
    certify_dw,
    check_pair_conditions,
    combine,
    is_antiamicable_family,
    is_disjoint_family,
    is_hadamard,
    is_orthogonal_design,
    is_signed_permutation,
    is_skew,
    is_weighing,
)

K = TernaryMatrix([[0, 1], [-1, 0]])


def test_weighing_of_base_matrix() -> None:
    """Test that K = [[0, 1], [-1, 0]] is a skew W(2, 1)."""
    assert is_weighing(K, 1).passed
    assert is_skew(K).passed
    assert not is_weighing(K, 2).passed


def test_weighing_witness_is_first_bad_entry() -> None:
    """Test that a failed weighing check points at the first wrong entry of W Wᵀ."""
    W = TernaryMatrix([[1, 1], [1, 1]])
    check = is_weighing(W, 2).check("weighing")
    assert not check.passed
    assert check.witness == Witness(location=(0, 1), found="2", expected="0")


def test_identity_is_not_skew() -> None:
    """Test that the identity fails the skew check at (0, 0)."""
    check = is_skew(identity(3)).check("skew")
    assert not check.passed
    assert check.witness is not None
    assert check.witness.location == (0, 0)


def test_disjoint_family_overlap() -> None:
    """Test that two matrices sharing a support position are reported with that position."""
    certificate: Certificate = is_disjoint_family([K, K])
    assert not certificate.check("disjoint").passed
    assert certificate.check("disjoint").witness.location == (0, 1)  # type: ignore[union-attr]


def test_complete_cover() -> None:
    """Test that K alone covers J - I of order 2 but the identity does not."""
    assert is_disjoint_family([K]).check("complete_cover").passed
    assert not is_disjoint_family([identity(2)]).check("complete_cover").passed


def test_builtin_dw28_certifies() -> None:
    """Test the full certificate of the built-in DW(28;[9]^3)."""
    dw = builtin_seed_dw("dw28")
    certificate: Certificate = certify_dw(list(dw.matrices), list(dw.weights))
    assert certificate.passed
    assert certificate.names() == ["weighing", "skew", "disjoint", "complete_cover"]


def test_orthogonal_design_of_order_two() -> None:
    """Test that I and K form an orthogonal design and K with itself does not."""
    assert is_orthogonal_design([identity(2), K], [1, 1]).passed
    assert not is_orthogonal_design([K, K], [1, 1]).check("disjoint").passed


def test_antiamicable_pair() -> None:
    """Test that I and K are antiamicable: I Kᵀ + K Iᵀ = 0."""
    assert is_antiamicable_family([identity(2), K]).passed


def test_hadamard_rejects_zero_entries() -> None:
    """Test that a zero entry fails the plus/minus one check."""
    certificate = is_hadamard(K)
    assert not certificate.check("plus_minus_one").passed


def test_signed_permutation() -> None:
    """Test signed permutations and a row with two non-zero entries."""
    assert is_signed_permutation(K).passed
    assert not is_signed_permutation(TernaryMatrix([[1, 1], [0, 1]])).passed


def test_pair_conditions_for_small_orders() -> None:
    """Test that HK and LM families of orders 2 to 16 pass every condition."""
    for m in range(1, 5):
        hk, lm = pair_family(m)
        assert check_pair_conditions(hk).passed, m
        assert check_pair_conditions(lm).passed, m


def test_pair_conditions_report_pair_index() -> None:
    """Test that a broken pair is reported with its index."""
    H, _ = base_pair()
    broken = PairFamily(m=1, kind=PairKind.HK, pairs=((H, identity(2)),))
    certificate = check_pair_conditions(broken)
    skew = certificate.check("skew_partner")
    assert not skew.passed
    assert skew.witness is not None
    assert skew.witness.location[0] == 0


def test_combine_prefixes_names() -> None:
    """Test that combined certificates keep every check, prefixed."""
    combined = combine("both", [is_skew(K), is_weighing(K, 1)], ["first", "second"])
    assert combined.names() == ["first.skew", "second.weighing"]
    assert combined.passed
