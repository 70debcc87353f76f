import itertools
import random

import pytest
from hypothesis import given, strategies as st

from spreadcodes import kernels
from spreadcodes.decoder import (
    ALREADY_CODEWORD,
    COMPLETED_R1,
    FAST_PATH,
    GCD_PATH,
    LOW_RANK_R1,
    SubstitutedMatrix,
    classify_and_complete,
    decode,
    fast_path,
    recover_f_lambda,
)
from spreadcodes.errors import (
    AmbientMismatch,
    DecodeFailure,
    DimensionMismatch,
    InvalidParams,
    UnsupportedParams,
)
from spreadcodes.harness import ChannelConfig, channel_transmit, trial_rng
from spreadcodes.matrices import Matrix, minor_det
from spreadcodes.spreadcode import (
    Subspace,
    build_code,
    encode,
    enumerate_codewords,
    enumerate_grassmannian,
    intersection_dim,
    is_codeword,
    subspace_distance,
)


def _nearest(words, R, k):
    hits = [C for C in words if intersection_dim(C, R) >= (k + 1) // 2]
    assert len(hits) <= 1
    return hits[0] if hits else None


def _Y(code, R):
    k = code.k
    B = R.basis.columns(0, k).inverse() @ R.basis.columns(k, 2 * k)
    d = code.diag
    return d.S @ B.lift(code.ext) @ d.S_inv


def test_low_rank_r1(code23):
    F = code23.base
    R = Subspace.from_rows(F, [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 0, 1]])
    out = decode(code23, R)
    assert out.case_tag == LOW_RANK_R1
    assert out.codeword == Subspace(Matrix.zeros(F, 3, 3).hstack(Matrix.identity(F, 3)))
    assert out.message.block_index == 2
    # rank(R1) = 1 <= (k-1)/2 also lands here
    R = Subspace.from_rows(F, [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    assert decode(code23, R).case_tag == LOW_RANK_R1


def test_completion_instance(code23):
    F = code23.base
    R = Subspace.from_rows(F, [[1, 0, 1, 1, 0, 0], [0, 1, 1, 0, 1, 0], [0, 0, 0, 1, 1, 1]])
    R1, R2 = R.basis.columns(0, 3), R.basis.columns(3, 6)
    assert R1.rank() == 2
    cls = classify_and_complete(R1, R2)
    assert cls.kind == "Completed" and cls.rank_r1 == 2
    assert cls.R1.rank() == 3
    Rt = Subspace.from_matrix(cls.R1.hstack(cls.R2))
    assert Rt.dim == 3 and intersection_dim(R, Rt) == 2


def test_completion_can_leave_radius_but_decode_recovers(code23):
    # the completed space meets the true codeword in only one dimension here
    F = code23.base
    R = Subspace.from_rows(F, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 1], [0, 0, 0, 1, 0, 1]])
    C = Subspace.from_rows(F, [[1, 0, 0, 1, 0, 1], [0, 1, 0, 1, 0, 0], [0, 0, 1, 0, 1, 0]])
    assert is_codeword(code23, C) and intersection_dim(C, R) == 2
    cls = classify_and_complete(R.basis.columns(0, 3), R.basis.columns(3, 6))
    Rt = Subspace.from_matrix(cls.R1.hstack(cls.R2))
    assert intersection_dim(C, Rt) == 1
    out = decode(code23, R)
    assert out.codeword == C and out.case_tag == COMPLETED_R1
    assert out.diagnostics["completion"] == "shear"


def test_classify_rejects_rank_deficient(F2):
    Z = Matrix.zeros(F2, 3, 3)
    with pytest.raises(DimensionMismatch):
        classify_and_complete(Z, Z)


def test_already_codeword(code23):
    for C in enumerate_codewords(code23):
        out = decode(code23, C)
        assert out.codeword == C and out.error_rank == 0
        assert out.case_tag in (ALREADY_CODEWORD, LOW_RANK_R1)


def test_recover_rank_one_perturbation(code23):
    ext, S = code23.ext, code23.diag
    rng = random.Random(3)
    for c in ext.elements():
        # rank-1 error over F_q, conjugated like a real received word
        while True:
            u = [rng.randrange(2) for _ in range(3)]
            v = [rng.randrange(2) for _ in range(3)]
            N = Matrix(code23.base, [[a * b for b in v] for a in u])
            Np = S.S @ N.lift(ext) @ S.S_inv
            if N.rank() == 1 and not Np.is_diagonal():
                break
        Y = Matrix.diag(ext, [c, c.frobenius(1), c.frobenius(2)]) + Np
        for mode in ("auto", "gcd"):
            assert recover_f_lambda(Y, mode=mode) == c


def test_recover_generic_extension_perturbation(code23):
    ext = code23.ext
    rng = random.Random(5)
    for _ in range(30):
        c = ext.element(rng.randrange(8))
        u = [rng.randrange(8) for _ in range(3)]
        v = [rng.randrange(8) for _ in range(3)]
        Np = Matrix(ext, [[ext.mul(a, b) for b in v] for a in u])
        if Np.is_diagonal() or Np.rank() != 1:
            continue
        Y = Matrix.diag(ext, [c, c.frobenius(1), c.frobenius(2)]) + Np
        if Y.is_diagonal():
            continue
        assert recover_f_lambda(Y, mode="gcd") == c


def test_recover_rejects_diagonal(code23):
    with pytest.raises(InvalidParams):
        recover_f_lambda(Matrix.identity(code23.ext, 3))


def _far_invertible(code):
    """Received spaces with invertible R1 and no codeword within distance k - 1."""
    words = list(enumerate_codewords(code))
    k = code.k
    for U in enumerate_grassmannian(code.base, k, 2 * k):
        if U.basis.columns(0, k).rank() == k and min(subspace_distance(C, U) for C in words) >= k + 1:
            yield U


def test_far_word_fails(code23):
    far = list(itertools.islice(_far_invertible(code23), 40))
    assert far
    for U in far:
        Y = _Y(code23, U)
        assert not Y.is_diagonal()
        with pytest.raises(DecodeFailure):
            recover_f_lambda(Y)
        with pytest.raises(DecodeFailure) as exc:
            decode(code23, U)
        assert "rank_r1" in exc.value.diagnostics
        # the fast path never hands back an unvalidated candidate
        X = SubstitutedMatrix(Y)
        size, rs, cs, _ = kernels.offdiag_minor_search(Y.rows, 1, code23.ext)
        assert fast_path(X, (rs, cs)) is None


def test_fast_path_rank_one_k3(code23):
    ext = code23.ext
    c = ext.gen ** 5
    N = Matrix(code23.base, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    d = code23.diag
    Np = d.S @ N.lift(ext) @ d.S_inv
    Y = Matrix.diag(ext, [c, c.frobenius(1), c.frobenius(2)]) + Np
    X = SubstitutedMatrix(Y)
    size, rs, cs, _ = kernels.offdiag_minor_search(Y.rows, 1, ext)
    assert size == 1 and Y.rows[rs[0]][cs[0]] != 0
    assert fast_path(X, (rs, cs)) == c


def test_fast_path_degenerate_returns_none(code23):
    ext = code23.ext
    # zero "minor": the x^(q^j) coefficient vanishes, no division happens
    Y = Matrix.diag(ext, [1, 1, 1]) + Matrix(ext, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert fast_path(SubstitutedMatrix(Y), ([1], [0])) is None


@given(data=st.data())
def test_det_poly_matches_evaluation(code35, data):
    ext = code35.ext
    rows = data.draw(st.lists(st.lists(st.integers(0, ext.order - 1), min_size=5, max_size=5), min_size=5, max_size=5))
    X = SubstitutedMatrix(Matrix(ext, rows))
    t = data.draw(st.integers(1, 4))
    rs = sorted(data.draw(st.lists(st.integers(0, 4), min_size=t, max_size=t, unique=True)))
    cs = sorted(data.draw(st.lists(st.integers(0, 4), min_size=t, max_size=t, unique=True)))
    x0 = ext.element(data.draw(st.integers(0, ext.order - 1)))
    m = X.det_poly(rs, cs)
    assert m(x0) == minor_det(X.evaluate(x0), rs, cs)


def test_unsupported_parameters():
    with pytest.raises(UnsupportedParams):
        decode(build_code(2, 2, 2), Subspace.from_rows(build_code(2, 2, 2).base, [[1, 0, 0, 0], [0, 1, 0, 0]]))
    c3 = build_code(2, 3, 3)
    with pytest.raises(UnsupportedParams):
        decode(c3, encode(c3, 0))


def test_shape_errors(code23):
    F = code23.base
    with pytest.raises(DimensionMismatch):
        decode(code23, Subspace.from_rows(F, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]))
    with pytest.raises(AmbientMismatch):
        decode(code23, Subspace.from_rows(F, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]))
    with pytest.raises(InvalidParams):
        decode(code23, encode(code23, 1), mode="fastest")


def test_accepts_matrix_input(code23):
    C = encode(code23, 4)
    M = Matrix(code23.base, [list(r) for r in reversed(C.basis.rows)])
    assert decode(code23, M).codeword == C


@pytest.mark.parametrize("mode", ["auto", "gcd", "both"])
def test_exhaustive_q2_k3(code23, mode):
    words = list(enumerate_codewords(code23))
    for U in enumerate_grassmannian(code23.base, 3, 6):
        want = _nearest(words, U, 3)
        if want is None:
            with pytest.raises(DecodeFailure):
                decode(code23, U, mode=mode)
        else:
            out = decode(code23, U, mode=mode)
            assert out.codeword == want
            assert code23.message_of(want) == out.message
            if mode == "both":
                assert out.diagnostics.get("paths_agree", True)


CODES = {(2, 3): build_code(2, 3, 2), (3, 3): build_code(3, 3, 2), (2, 5): build_code(2, 5, 2),
         (3, 5): build_code(3, 5, 2), (2, 7): build_code(2, 7, 2)}


@given(key=st.sampled_from(sorted(CODES)), seed=st.integers(0, 2**32), data=st.data())
def test_random_decode_within_radius(key, seed, data):
    code = CODES[key]
    k = code.k
    t = data.draw(st.integers(0, (k - 1) // 2))
    rng = trial_rng(seed, 0)
    C = encode(code, int(rng.integers(code.cardinality)))
    R = channel_transmit(code, C, ChannelConfig(t, t, seed), rng)
    assert intersection_dim(C, R) == k - t
    out = decode(code, R, mode="both")
    assert out.codeword == C
    assert is_codeword(code, out.codeword)
    d = out.diagnostics
    assert d.get("paths_agree", True)
    inner = d.get("inner_case", out.case_tag)
    if inner in (FAST_PATH, GCD_PATH):
        # decomposition R1^-1 R2 = A + N with A in F_q[P] and rank N small
        assert out.error_rank <= (k - 1) // 2
        a = code.ext(d["f_lambda"])
        A = code.phi(a)
        assert A @ code.P == code.P @ A
        if out.case_tag != COMPLETED_R1:
            B = R.basis.columns(0, k).inverse() @ R.basis.columns(k, 2 * k)
            assert (B - A).rank() == out.error_rank
            assert out.message.tail == (a,)
    assert subspace_distance(C, R) == 2 * t
    assert out.error_rank == t


def test_gcd_mode_reports_diagnostics(code35):
    rng = trial_rng(11, 0)
    C = encode(code35, 17)
    R = channel_transmit(code35, C, ChannelConfig(2, 2, 11), rng)
    out = decode(code35, R, mode="gcd")
    d = out.diagnostics
    assert out.codeword == C
    inner = d.get("inner_case", out.case_tag)
    if inner == GCD_PATH:
        assert d["gcd_iterations"] >= 1 and d["roots_tested"] >= 1 and d["gcd_degree"] >= 1
        assert d["fast_path"] == "skipped"


def test_outcome_json(code23):
    out = decode(code23, encode(code23, 3))
    js = out.to_json()
    assert js["case_tag"] == out.case_tag and js["codeword"]["rows"] == 3


@pytest.mark.slow
def test_exhaustive_q3_k3():
    code = CODES[(3, 3)]
    words = list(enumerate_codewords(code))
    for U in enumerate_grassmannian(code.base, 3, 6):
        want = _nearest(words, U, 3)
        if want is None:
            with pytest.raises(DecodeFailure):
                decode(code, U)
        else:
            assert decode(code, U).codeword == want
