import pytest

from qkernel.oracle import attacks


def brute_kernel_rows(L):
    """Attack sets per cell by direct geometry, independent of the kernel module."""
    rows = []
    for a in range(L * L):
        ra, ca = divmod(a, L)
        rows.append({b for b in range(L * L) if b != a and attacks((ra, ca), divmod(b, L))})
    return rows


@pytest.fixture(scope="session")
def brute_rows():
    cache = {}

    def get(L):
        if L not in cache:
            cache[L] = brute_kernel_rows(L)
        return cache[L]

    return get
