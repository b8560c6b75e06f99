import random

import numpy as np
import pytest

from oreext.algebra import AlgebraError, builtin
from oreext.coeff import GaussianRational
from oreext.rep import (
    EnvelopeImage,
    casimir,
    envelope_map,
    eval_k_poly,
    identity_matrix,
    irrep,
    is_scalar_matrix,
    k_poly_mul,
    monomial_entries,
    relation_defects,
    relations_hold,
)

U = builtin("usl2")


def as_ints(m):
    return [[int(x.re) for x in row] for row in m]


def test_trivial_rep():
    r = irrep(1)
    assert as_ints(r.E) == as_ints(r.F) == as_ints(r.H) == [[0]]


def test_defining_rep():
    r = irrep(2)
    assert as_ints(r.E) == [[0, 1], [0, 0]]
    assert as_ints(r.F) == [[0, 0], [1, 0]]
    assert as_ints(r.H) == [[1, 0], [0, -1]]


def test_relations_up_to_ten():
    for d in range(1, 11):
        assert relations_hold(irrep(d))
    defects = relation_defects(irrep(4))
    assert all(not x for m in defects.values() for x in m.flat)


def test_bad_dimension():
    with pytest.raises(ValueError):
        irrep(0)


def test_envelope_examples():
    image = envelope_map(U.one(), 5, [1])
    for lam, block in enumerate(image.blocks):
        assert block.shape == (lam + 1, lam + 1)
        assert all(x == y for x, y in zip(block.flat, identity_matrix(lam + 1).flat))
    assert image.k_component == (1, 1)
    assert as_ints(envelope_map(U("H"), 1).blocks[1]) == [[1, 0], [0, -1]]
    assert envelope_map(U("H"), 1).k_component is None


def test_relations_map_to_zero():
    for rel in ("E*F - F*E - H", "H*E - E*H - 2*E", "H*F - F*H + 2*F"):
        image = envelope_map(U(rel), 8)
        assert all(not x for b in image.blocks for x in b.flat)


def test_monomial_entries_match_matrix_products():
    for d in (1, 3, 5):
        r = irrep(d)
        for a, b, c in [(0, 0, 0), (1, 2, 1), (2, 0, 3), (0, 3, 2)]:
            dense = np.linalg.matrix_power(r.F.astype(float), a) @ np.linalg.matrix_power(
                np.diag([float(x.re) for x in np.diag(r.H)]), b
            ) @ np.linalg.matrix_power(r.E.astype(object).astype(float), c)
            sparse = np.zeros((d, d))
            for row, col, v in monomial_entries(d, a, b, c):
                sparse[row, col] = v
            assert np.array_equal(dense, sparse)


def test_homomorphism_on_random_pairs():
    rng = random.Random(3)
    pool = [GaussianRational(1), GaussianRational(0, 1), GaussianRational(1, -2)]
    for _ in range(30):
        u = U.monomial({"F": rng.randint(0, 2), "H": rng.randint(0, 2), "E": rng.randint(0, 2)}, rng.choice(pool))
        v = U.monomial({"F": rng.randint(0, 2), "H": rng.randint(0, 1), "E": rng.randint(0, 2)}, rng.choice(pool))
        assert envelope_map(u * v, 4) == envelope_map(u, 4) * envelope_map(v, 4)


def test_casimir_is_scalar():
    image = envelope_map(casimir(), 7)
    for lam, block in enumerate(image.blocks):
        assert is_scalar_matrix(block)


def test_k_characters():
    a, b = [1, 2, 3], [GaussianRational(0, 1), -1]
    pa, pb = eval_k_poly(a), eval_k_poly(b)
    assert pa == (6, 2)
    prod = eval_k_poly(k_poly_mul(a, b))
    assert prod == (pa[0] * pb[0], pa[1] * pb[1])


def test_envelope_json():
    doc = envelope_map(U("(1/2+i)*E"), 1, [0, 1]).to_dict()
    assert doc["blocks"][1] == [["0", "1/2+i"], ["0", "0"]]
    assert doc["k_component"] == ["1", "-1"]


def test_envelope_rejects_other_algebras():
    with pytest.raises(AlgebraError):
        envelope_map(builtin("jordanian")("x"), 2)
    with pytest.raises(ValueError):
        envelope_map(U("H"), -1)


def test_image_shape_validation():
    with pytest.raises(ValueError):
        EnvelopeImage(1, (identity_matrix(1),))
