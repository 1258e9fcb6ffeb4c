import numpy as np
import pytest
import sympy

from qkernel.kernel import (
    ConvergenceError,
    build_cross_kernel,
    build_diag_kernel,
    build_kernel,
    build_kernel_direct,
    decimating_matrix,
    identity_complement,
    jacobi_eigh,
    row_bitsums,
    spectrum,
    verify_decomposition,
)


def test_cross_kernel_small():
    assert build_cross_kernel(2)[0].astype(int).tolist() == [0, 1, 1, 0]
    assert build_cross_kernel(1).tolist() == [[False]]
    assert set(build_cross_kernel(8).sum(axis=1)) == {14}


def test_diag_kernel_small():
    assert build_diag_kernel(2)[0].astype(int).tolist() == [0, 0, 0, 1]
    assert np.flatnonzero(build_diag_kernel(3)[4]).tolist() == [0, 2, 6, 8]
    # ray from the corner of an 8x8 board
    assert build_diag_kernel(8)[0].sum() == 7


def test_kernel_two_by_two_is_identity_complement():
    assert np.array_equal(build_kernel(2).matrix, identity_complement(4))


def test_kernel_row_of_corner_on_4x4():
    assert set(np.flatnonzero(build_kernel(4).matrix[0])) == {1, 2, 3, 4, 8, 12, 5, 10, 15}


@pytest.mark.parametrize("L", range(1, 11))
def test_kernel_matches_attack_geometry(L, brute_rows):
    K = build_kernel(L)
    for a, expected in enumerate(brute_rows(L)):
        assert set(np.flatnonzero(K.matrix[a])) == expected
        assert all(K.attacks(a, b) for b in expected)


@pytest.mark.parametrize("L", range(1, 17))
def test_kernel_structure(L):
    K = build_kernel(L)
    m = K.matrix
    assert np.array_equal(m, m.T)
    assert not m.diagonal().any()
    assert not (K.cross_part & K.diag_part).any()
    assert np.array_equal(m.astype(int), K.cross_part.astype(int) + K.diag_part.astype(int))
    assert set(K.cross_part.sum(axis=1)) == {2 * (L - 1)}


@pytest.mark.parametrize("L", range(2, 13))
def test_no_kernel_row_is_a_solution(L):
    # every row carries more ones than the L queens of any solution
    _, lo, _ = row_bitsums(build_kernel(L))
    assert lo > L


def test_kernel_is_read_only():
    K = build_kernel(3)
    with pytest.raises(ValueError):
        K.matrix[0, 0] = True


def test_row_masks_match_matrix():
    K = build_kernel(5)
    for i, mask in enumerate(K.row_masks):
        assert mask == sum(1 << j for j in np.flatnonzero(K.matrix[i]))


def test_direct_route_is_independent_and_equal():
    for L in (1, 2, 5, 9):
        cross, diag = build_kernel_direct(L)
        assert np.array_equal(cross, build_cross_kernel(L))
        assert np.array_equal(diag, build_diag_kernel(L))


def test_unknown_method():
    with pytest.raises(ValueError):
        build_kernel(3, method="sparse")


def test_decimating_matrix():
    k = decimating_matrix(5, 2)
    assert np.array_equal(k, k.T)
    assert not k.diagonal().any()
    assert k.sum(axis=1).max() <= 2
    with pytest.raises(ValueError):
        decimating_matrix(4, 4)


@pytest.mark.parametrize("L", [2, 3, 7, 16])
def test_verify_decomposition(L):
    assert verify_decomposition(L)


def _attack_count(L, r, c):
    # count attacked cells by walking the board
    n = 0
    for rr in range(L):
        for cc in range(L):
            if (rr, cc) != (r, c) and (rr == r or cc == c or abs(rr - r) == abs(cc - c)):
                n += 1
    return n


@pytest.mark.parametrize("L,lo,hi", [(2, 3, 3), (8, 21, 27), (16, 45, 59)])
def test_row_bitsums_bounds(L, lo, hi):
    sums, mn, mx = row_bitsums(build_kernel(L))
    counts = [_attack_count(L, *divmod(i, L)) for i in range(L * L)]
    assert sums == counts
    assert (mn, mx) == (min(counts), max(counts)) == (lo, hi)
    assert sums[0] == mn
    centre = (L // 2 - 1) * L + (L // 2 - 1) if L > 2 else 0
    assert sums[centre] == mx


def test_row_bitsum_formula():
    for L in range(1, 10):
        sums, _, _ = row_bitsums(build_kernel(L))
        for i, s in enumerate(sums):
            r, c = divmod(i, L)
            diag_len = L - abs(r - c)
            anti_len = L - abs(r + c - (L - 1))
            assert s == 2 * (L - 1) + (diag_len - 1) + (anti_len - 1)


def test_spectrum_two_by_two():
    rep = spectrum(build_kernel(2))
    assert np.allclose(rep.eigenvalues, [3, -1, -1, -1], atol=1e-12, rtol=0)


def test_spectrum_one_by_one():
    assert spectrum(build_kernel(1)).eigenvalues == [0.0]


@pytest.mark.parametrize("L", [2, 3])
def test_spectrum_matches_characteristic_polynomial(L):
    m = sympy.Matrix(build_kernel(L).matrix.astype(int))
    lam = sympy.symbols("lam")
    roots = sorted(
        (float(r) for r, mult in sympy.roots(m.charpoly(lam).as_expr(), lam).items() for _ in range(mult)),
        reverse=True,
    )
    assert len(roots) == L * L
    assert np.allclose(spectrum(build_kernel(L)).eigenvalues, roots, atol=1e-9)


@pytest.mark.parametrize("L", [4, 6, 8])
def test_spectrum_matches_numpy(L):
    K = build_kernel(L)
    rep = spectrum(K)
    ref = np.linalg.eigvalsh(K.matrix.astype(float))[::-1]
    assert np.allclose(rep.eigenvalues, ref, atol=1e-8)
    assert abs(sum(rep.eigenvalues)) <= 1e-9 * L * L
    assert rep.orthogonality_residual <= 1e-8
    v = rep.eigenvectors
    assert np.allclose(K.matrix @ v, v * np.array(rep.eigenvalues), atol=1e-8)


def test_jacobi_rejects_bad_input():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(ValueError):
        spectrum(build_kernel(2), tol=-1.0)


def test_jacobi_convergence_error_carries_residual():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(12, 12))
    a = a + a.T
    with pytest.raises(ConvergenceError) as info:
        jacobi_eigh(a, tol=1e-300, max_sweeps=1)
    assert info.value.residual > 0
