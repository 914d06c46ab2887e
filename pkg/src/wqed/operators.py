"""Matrix representations of the few-level and bosonic operators used throughout.

Basis order is |0>, |1>, |2>, ... with |0> the ground state.
"""
import numpy as np


def basis_op(dim, i, j):
    """|i><j| in a ``dim``-level space."""
    op = np.zeros((dim, dim), dtype=complex)
    op[i, j] = 1.0
    return op


def sigma_minus(dim=2, level=1):
    """Lowering operator |level-1><level|."""
    return basis_op(dim, level - 1, level)


def sigma_plus(dim=2, level=1):
    return basis_op(dim, level, level - 1)


def sigma_x(dim=2, level=1):
    return sigma_plus(dim, level) + sigma_minus(dim, level)


def sigma_z():
    """diag(1, -1): +1 on the ground state, so H = -(omega/2) sigma_z."""
    return np.diag([1.0, -1.0]).astype(complex)


def projector(dim, k):
    return basis_op(dim, k, k)


def destroy(n):
    return np.diag(np.sqrt(np.arange(1, n)), 1).astype(complex)


def dag(op):
    return np.conj(op).T
