"""Planar surface-code lattice: qubits, stabilizers, logical operators.

The lattice for odd linear size L has L columns and L-1 rows of vertices.
Data qubits sit on edges: L*L vertical edges (including the stubs that
stick out of the top and bottom rough boundaries) and (L-1)*(L-1)
horizontal edges. X ancillas sit on vertices, Z ancillas on plaquette
centres (including the half-open plaquettes along the rough boundaries).

Coordinates:
    vertical qubit   ("v", c, k)   c in [0, L),   k in [0, L)
    horizontal qubit ("h", c, r)   c in [0, L-1), r in [0, L-1)
    X ancilla        ("X", c, r)   c in [0, L),   r in [0, L-1)
    Z ancilla        ("Z", c, r)   c in [0, L-1), r in [0, L)

("v", c, 0) and ("v", c, L-1) are the rough-boundary stubs of column c.
Smooth boundaries are the leftmost/rightmost vertical-qubit columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

Qubit = tuple[str, int, int]
Ancilla = tuple[str, int, int]


def _require_odd_size(L: int) -> None:
    if not isinstance(L, int) or isinstance(L, bool):
        raise ValueError(f"lattice size must be an integer, got {L!r}")
    if L < 3 or L % 2 == 0:
        raise ValueError(f"lattice size must be an odd integer >= 3, got {L}")


@dataclass(frozen=True)
class CodeLattice:
    """Combinatorial structure of one planar surface-code patch."""

    L: int
    data_qubits: frozenset[Qubit]
    x_ancillas: frozenset[Ancilla]
    z_ancillas: frozenset[Ancilla]
    stabilizers: dict[Ancilla, frozenset[Qubit]] = field(repr=False)
    smooth_boundaries: tuple[frozenset[Qubit], frozenset[Qubit]]
    rough_boundaries: tuple[frozenset[Qubit], frozenset[Qubit]]

    @property
    def t(self) -> int:
        """Number of correctable errors, (L - 1) / 2."""
        return (self.L - 1) // 2

    @property
    def n_ancillas(self) -> int:
        return len(self.x_ancillas) + len(self.z_ancillas)


def build_code(L: int) -> CodeLattice:
    """Construct the planar surface-code lattice of odd size L >= 3."""
    _require_odd_size(L)

    vertical = {("v", c, k) for c in range(L) for k in range(L)}
    horizontal = {("h", c, r) for c in range(L - 1) for r in range(L - 1)}
    data = frozenset(vertical | horizontal)

    stabilizers: dict[Ancilla, frozenset[Qubit]] = {}

    x_ancillas = set()
    for c in range(L):
        for r in range(L - 1):
            anc = ("X", c, r)
            x_ancillas.add(anc)
            support = [("v", c, r), ("v", c, r + 1)]
            if c > 0:
                support.append(("h", c - 1, r))
            if c < L - 1:
                support.append(("h", c, r))
            stabilizers[anc] = frozenset(support)

    z_ancillas = set()
    for c in range(L - 1):
        for r in range(L):
            anc = ("Z", c, r)
            z_ancillas.add(anc)
            support = [("v", c, r), ("v", c + 1, r)]
            if r > 0:
                support.append(("h", c, r - 1))
            if r < L - 1:
                support.append(("h", c, r))
            stabilizers[anc] = frozenset(support)

    smooth = (
        frozenset(("v", 0, k) for k in range(L)),
        frozenset(("v", L - 1, k) for k in range(L)),
    )
    rough = (
        frozenset(("v", c, 0) for c in range(L)),
        frozenset(("v", c, L - 1) for c in range(L)),
    )

    return CodeLattice(
        L=L,
        data_qubits=data,
        x_ancillas=frozenset(x_ancillas),
        z_ancillas=frozenset(z_ancillas),
        stabilizers=stabilizers,
        smooth_boundaries=smooth,
        rough_boundaries=rough,
    )


def logical_support(code: CodeLattice, kind: Literal["X", "Z"]) -> frozenset[Qubit]:
    """One canonical minimal logical-operator support (a straight line of L qubits).

    The X support runs between the two smooth boundaries (topmost row of
    vertical qubits); the Z support runs between the two rough boundaries
    (leftmost column of vertical qubits). The two intersect in exactly
    one qubit, ("v", 0, 0).
    """
    if kind == "X":
        return frozenset(("v", c, 0) for c in range(code.L))
    if kind == "Z":
        return frozenset(("v", 0, k) for k in range(code.L))
    raise ValueError(f"logical operator kind must be 'X' or 'Z', got {kind!r}")
