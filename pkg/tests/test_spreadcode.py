import itertools

import pytest
from hypothesis import given, strategies as st

import oracle
from spreadcodes.errors import (
    AmbientMismatch,
    DimensionMismatch,
    EnumerationTooLarge,
    InvalidParams,
    NotPrime,
    Reducible,
)
from spreadcodes.fields import PrimeField, make_extension_field
from spreadcodes.matrices import Matrix, companion
from spreadcodes.spreadcode import (
    Message,
    SpreadCode,
    Subspace,
    build_code,
    codeword_criteria,
    embed,
    encode,
    enumerate_codewords,
    enumerate_grassmannian,
    intersection_dim,
    is_codeword,
    subspace_distance,
    verify_spread,
)


def _span(U):
    return oracle.span(U.basis.rows, U.field.q)


def test_build_code_examples():
    c = build_code(2, 3, 2, [1, 1, 0, 1])
    assert c.n == 6 and c.cardinality == 9 and c.diag is not None
    c3 = build_code(2, 3, 3, [1, 1, 0, 1])
    assert c3.n == 9 and c3.cardinality == 73 and c3.diag is None
    with pytest.raises(Reducible):
        build_code(2, 3, 2, [1, 1, 1, 1])
    with pytest.raises(NotPrime):
        build_code(6, 2, 2)
    with pytest.raises(InvalidParams):
        build_code(2, 3, 1)
    with pytest.raises(InvalidParams):
        build_code(2, 3, 2, [1, 1, 1])


@pytest.mark.parametrize("q,k,r", [(2, 1, 2), (2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (2, 3, 3), (3, 1, 3)])
def test_cardinality_formula(q, k, r):
    c = build_code(q, k, r)
    assert c.cardinality == sum(q ** (k * j) for j in range(r))
    assert c.cardinality == (q ** (r * k) - 1) // (q ** k - 1)
    n, kk, logsize, dist = c.type_parameters
    assert (n, kk, dist) == (r * k, k, 2 * k)


def test_encode_examples(code23):
    k = 3
    F = code23.base
    Z, I = Matrix.zeros(F, k, k), Matrix.identity(F, k)
    assert encode(code23, Message(2, ())).basis == Z.hstack(I)
    assert encode(code23, Message(1, (code23.ext(0),))).basis == I.hstack(Z)
    assert encode(code23, Message(1, (code23.ext.gen,))).basis == I.hstack(code23.P)


@pytest.mark.parametrize("q,k,r,count", [(2, 3, 2, 9), (2, 1, 2, 3), (3, 2, 2, 10), (2, 2, 3, 21)])
def test_enumerate_counts(q, k, r, count):
    c = build_code(q, k, r)
    words = list(enumerate_codewords(c))
    assert len(words) == count == len(set(words))
    for w in words:
        assert w.basis.rref()[0] == w.basis  # already canonical


def test_enumerate_k1_lines():
    c = build_code(2, 1, 2)
    assert c.P == Matrix(PrimeField(2), [[0]])
    lines = {frozenset(_span(w)) for w in enumerate_codewords(c)}
    assert lines == {oracle.span([v], 2) for v in [(0, 1), (1, 0), (1, 1)]}


def test_enumeration_bound(code23):
    with pytest.raises(EnumerationTooLarge):
        list(enumerate_codewords(code23, bound=5))


def test_distance_examples(F2):
    I, Z = Matrix.identity(F2, 3), Matrix.zeros(F2, 3, 3)
    A, B = Subspace(I.hstack(Z)), Subspace(Z.hstack(I))
    assert subspace_distance(A, A) == 0
    assert subspace_distance(A, B) == 6
    with pytest.raises(AmbientMismatch):
        subspace_distance(A, Subspace(I))


@pytest.mark.parametrize("q,k,r", [(2, 3, 2), (3, 2, 2), (2, 2, 3)])
def test_pairwise_distance_2k(q, k, r):
    words = list(enumerate_codewords(build_code(q, k, r)))
    for a, b in itertools.combinations(words, 2):
        assert subspace_distance(a, b) == 2 * k
        assert intersection_dim(a, b) == 0


def _rand_subspace(data, q, n):
    rows = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=1, max_size=4))
    return Subspace.from_rows(PrimeField(q), rows, n)


@given(data=st.data())
def test_distance_is_metric_and_matches_oracle(data):
    q, n = 2, 5
    A, B, C = (_rand_subspace(data, q, n) for _ in range(3))
    dab = subspace_distance(A, B)
    assert dab == subspace_distance(B, A) >= 0
    assert (dab == 0) == (A == B)
    assert subspace_distance(A, C) <= dab + subspace_distance(B, C)
    assert dab == oracle.subspace_distance(_span(A), _span(B), q)


def test_subspace_canonical_and_json(F2):
    A = Subspace.from_rows(F2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    B = Subspace.from_rows(F2, [[1, 0, 1], [0, 1, 1]])
    assert A == B and hash(A) == hash(B) and A.dim == 2
    assert Subspace.from_json(A.to_json()) == A
    assert A.contains([1, 1, 0]) and not A.contains([1, 0, 0])
    assert set(A.vectors()) == oracle.span(A.basis.rows, 2) - {(0, 0, 0)}


def test_is_codeword_examples(code23):
    F, k = code23.base, 3
    Z, I = Matrix.zeros(F, k, k), Matrix.identity(F, k)
    assert is_codeword(code23, Subspace(Z.hstack(I)))
    assert is_codeword(code23, Subspace(I.hstack(code23.P)))
    E12 = Matrix(F, [[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert E12 @ code23.P != code23.P @ E12
    assert not is_codeword(code23, Subspace(I.hstack(E12)))
    with pytest.raises(DimensionMismatch):
        is_codeword(code23, Subspace.from_rows(F, [[1, 0, 0, 0, 0, 0]]))


def test_is_codeword_multi_block():
    c = build_code(2, 2, 3)
    words = list(enumerate_codewords(c))
    assert all(is_codeword(c, w) for w in words)
    F = c.base
    junk = Subspace.from_rows(F, [[1, 0, 0, 0, 1, 0], [0, 1, 0, 1, 0, 0]])
    assert not is_codeword(c, junk)


def test_criteria_agree_exhaustive_small():
    c = build_code(3, 1, 2)
    for U in enumerate_grassmannian(c.base, 1, 2):
        v = codeword_criteria(c, U)
        assert len(set(v.values())) == 1
    c2 = build_code(3, 2, 2)
    for U in enumerate_grassmannian(c2.base, 2, 4):
        v = codeword_criteria(c2, U)
        assert len(set(v.values())) == 1
        assert v["algebra"] == (U in c2._codeword_set)


def test_grassmannian_count_matches_oracle():
    F = PrimeField(2)
    got = {frozenset(_span(U)) for U in enumerate_grassmannian(F, 2, 4)}
    assert got == oracle.grassmannian_spans(2, 2, 4)
    assert sum(1 for _ in enumerate_grassmannian(F, 3, 6)) == oracle.gaussian_binomial(6, 3, 2) == 1395


@pytest.mark.parametrize("q,k,r", [(2, 2, 2), (2, 3, 2), (2, 2, 3), (3, 2, 2), (2, 3, 3), (2, 1, 2)])
def test_spread_partition(q, k, r):
    rep = verify_spread(build_code(q, k, r))
    assert rep["ok"], rep
    # independent partition check on vector sets
    c = build_code(q, k, r)
    seen = set()
    for w in enumerate_codewords(c):
        vs = set(w.vectors())
        assert not (vs & seen)
        seen |= vs
    assert len(seen) == q ** c.n - 1


def test_embed_examples(F8):
    F2 = PrimeField(2)
    I, Z = Matrix.identity(F2, 3), Matrix.zeros(F2, 3, 3)
    assert embed(Matrix(F8, [[1, 0]])) == I.hstack(Z)
    assert embed(Matrix(F8, [[1, F8.gen]])) == I.hstack(companion([1, 1, 0, 1], F2))
    with pytest.raises(InvalidParams):
        embed(Matrix(F2, [[1, 0]]))


def test_embed_is_multiplicative(F8):
    P = companion([1, 1, 0, 1], PrimeField(2))
    for a, b in itertools.product(F8.elements(), repeat=2):
        A, B = embed(Matrix(F8, [[a]]), P), embed(Matrix(F8, [[b]]), P)
        assert A @ B == embed(Matrix(F8, [[a * b]]), P)
        assert A + B == embed(Matrix(F8, [[a + b]]), P)


@pytest.mark.parametrize("q,k,r", [(2, 3, 2), (2, 2, 3), (3, 1, 3)])
def test_message_roundtrip_and_injective(q, k, r):
    c = build_code(q, k, r)
    seen = set()
    for m in range(c.cardinality):
        msg = c.message_from_int(m)
        assert c.message_to_int(msg) == m
        C = encode(c, msg)
        assert C not in seen
        seen.add(C)
        assert c.message_of(C) == msg
    with pytest.raises(InvalidParams):
        c.message_from_int(c.cardinality)


def test_phi_is_isomorphism(code35):
    ext = code35.ext
    for a in list(ext.elements())[:40]:
        A = code35.phi(a)
        assert code35.phi_inverse(A) == a
        assert A @ code35.P == code35.P @ A
    lam = ext.gen
    assert code35.phi(lam) == code35.P
    assert code35.phi(lam * lam + 1) == code35.P @ code35.P + Matrix.identity(code35.base, 5)


def test_code_json_roundtrip(code23):
    again = SpreadCode.from_json(code23.to_json())
    assert again.to_json() == code23.to_json()
    assert list(enumerate_codewords(again)) == list(enumerate_codewords(code23))
