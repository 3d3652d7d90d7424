# quotient_lab/domain/models/integer_matrix.py
"""Álgebra lineal exacta sobre Z con matrices numpy de dtype=object.

Convención de filas: una matriz A actúa sobre vectores fila, x -> x @ A.
La forma normal diagonal es la única primitiva; núcleos, conúcleos y
sistemas lineales se derivan de ella.
"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np


def as_integer_matrix(rows, n_cols: Optional[int] = None) -> np.ndarray:
    """Convierte filas (listas, tuplas o arrays) a una matriz entera exacta."""
    matrix = np.array(rows, dtype=object)
    if matrix.ndim == 2:
        return matrix
    if matrix.size == 0:
        return np.zeros((0, n_cols or 0), dtype=object)
    return matrix.reshape(1, -1)


def exgcd(a: int, b: int) -> np.ndarray:
    """Algoritmo de Euclides extendido.

    Args:
        a: entero.
        b: entero.

    Returns:
        Matriz entera 2x2 M de determinante 1 con M @ [a, b] = [gcd(a, b), 0].
        Si a divide a b, se garantiza M[0, 1] = 0.
    """
    a_sign = -1 if a < 0 else 1
    a *= a_sign
    b_sign = -1 if b < 0 else 1
    b *= b_sign

    # Euclides con operaciones de fila sobre [a, b], aumentado con la identidad
    M = np.array([[b, 0, 1], [a, 1, 0]], dtype=object)
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]

    g = M[0, 0]
    M = M[:, 1:]
    M *= [a_sign, b_sign]

    # Fijar el signo del determinante usando M[0, 0] * a + M[0, 1] * b = g
    if g != 0:
        M[1] = [-b_sign * b // g, a_sign * a // g]

    return M


def inv_2x2_det1(M: np.ndarray) -> np.ndarray:
    """Inversa de una matriz 2x2 de determinante 1."""
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)


def normal_form(
    A: np.ndarray, return_inverses: bool = False
) -> Tuple[np.ndarray, ...]:
    """Diagonaliza A con operaciones unimodulares de fila y columna.

    No impone la cadena de divisibilidad de Smith; los factores
    invariantes se obtienen de la diagonal con `invariant_factors`.

    Args:
        A: matriz entera.
        return_inverses: si es True también devuelve Sinv y Tinv.

    Returns:
        (S, D, T) o (S, D, T, Sinv, Tinv) con A == S @ D @ T, D diagonal
        de la forma de A, y S, T cuadradas de determinante 1.
    """
    D = as_integer_matrix(A).copy()
    S = np.eye(D.shape[0], dtype=object)
    T = np.eye(D.shape[1], dtype=object)
    Sinv, Tinv = S.copy(), T.copy()

    def clear_row(i: int) -> bool:
        if (D[i, i + 1 :] == 0).all():
            return False
        for j in range(i + 1, D.shape[1]):
            if D[i, j] == 0:
                continue
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
            T[[i, j]] = inv_2x2_det1(M) @ T[[i, j]]
            Tinv[:, [i, j]] = Tinv[:, [i, j]] @ M
        return True

    def clear_col(i: int) -> bool:
        if (D[i + 1 :, i] == 0).all():
            return False
        for j in range(i + 1, D.shape[0]):
            if D[j, i] == 0:
                continue
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            S[:, [i, j]] = S[:, [i, j]] @ inv_2x2_det1(M)
            Sinv[[i, j]] = M @ Sinv[[i, j]]
        return True

    for i in range(min(D.shape)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass

    if return_inverses:
        return S, D, T, Sinv, Tinv
    return S, D, T


def diagonal(D: np.ndarray, length: int) -> np.ndarray:
    """Diagonal de D rellenada con ceros hasta `length`."""
    d = np.array([D[i, i] for i in range(min(D.shape))], dtype=object)
    return np.concatenate([d, np.zeros(max(0, length - len(d)), dtype=object)])


def kernel(A: np.ndarray) -> np.ndarray:
    """Columnas que generan {x : A @ x = 0} sobre Z."""
    _, D, _, _, Tinv = normal_form(A, return_inverses=True)
    return Tinv[:, diagonal(D, Tinv.shape[0]) == 0]


def left_kernel(B: np.ndarray) -> np.ndarray:
    """Filas que generan {w : w @ B = 0} sobre Z."""
    B = as_integer_matrix(B)
    if B.shape[0] == 0:
        return np.zeros((0, 0), dtype=object)
    if B.shape[1] == 0:
        return np.eye(B.shape[0], dtype=object)
    return kernel(B.T).T


def cokernel(A: np.ndarray) -> np.ndarray:
    """Filas que generan el anulador de la imagen de A."""
    _, D, _, Sinv, _ = normal_form(A, return_inverses=True)
    return Sinv[diagonal(D, Sinv.shape[0]) == 0]


def invariant_factors(A: np.ndarray) -> Tuple[int, ...]:
    """Factores invariantes no nulos de A, en cadena de divisibilidad."""
    _, D, _ = normal_form(A)
    entries = [abs(int(x)) for x in diagonal(D, 0) if x != 0]
    # Reordenar a la cadena d_1 | d_2 | ... combinando gcd/lcm por pares
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            a, b = entries[i], entries[j]
            g = math.gcd(a, b)
            entries[i], entries[j] = g, a * b // g
    return tuple(entries)


class LeftSolver:
    """Resuelve w @ B == target para varios objetivos con una sola diagonalización."""

    def __init__(self, B: np.ndarray):
        self.B = as_integer_matrix(B)
        self.n_rows, self.n_cols = self.B.shape
        if self.n_rows:
            _, self.D, _, self.Sinv, self.Tinv = normal_form(
                self.B, return_inverses=True
            )

    def solve(self, target: Sequence[int]) -> Optional[np.ndarray]:
        """Devuelve w (dtype=object) o None si no hay solución entera."""
        target = np.array(list(target), dtype=object)
        if self.n_rows == 0:
            return np.zeros(0, dtype=object) if (target == 0).all() else None

        v = target @ self.Tinv
        u = np.zeros(self.n_rows, dtype=object)
        for j in range(self.n_cols):
            d = self.D[j, j] if j < self.n_rows else 0
            if d == 0:
                if v[j] != 0:
                    return None
                continue
            if v[j] % d != 0:
                return None
            u[j] = v[j] // d
        return u @ self.Sinv


def solve_left(B: np.ndarray, target: Sequence[int]) -> Optional[np.ndarray]:
    """Busca un vector fila entero w con w @ B == target."""
    return LeftSolver(B).solve(target)
