"""Grid topology entity - prosumers connected by transmission lines."""

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from src.modules.grid.domain.errors import ParameterDomainError, StructuralError


class GridTopology:
    """
    Undirected, connected graph of prosumers (nodes) and lines (edges).

    Each edge is stored as (positive end, negative end); the orientation is only
    a labeling and no derived quantity depends on it. Instances are immutable
    and safe to share between concurrent scenario runs.
    """

    def __init__(self, n: int, edges: tuple[tuple[int, int], ...]) -> None:
        """
        Initialize a topology without validation.

        Use the create() or ring() factories for new topologies.
        """
        self._n = n
        self._edges = edges
        self._incidence: np.ndarray | None = None

    @classmethod
    def create(cls, n: int, edges: list[tuple[int, int]] | tuple[tuple[int, int], ...]) -> Self:
        """
        Factory method to create a validated topology.

        Args:
            n: Number of prosumers
            edges: (positive end, negative end) pairs, one per line

        Returns:
            A new GridTopology

        Raises:
            ParameterDomainError: If the graph has self-loops, bad indices or is disconnected
        """
        if n < 1:
            raise ParameterDomainError("A grid needs at least one prosumer", field="n")

        normalized: list[tuple[int, int]] = []
        for k, edge in enumerate(edges):
            if len(edge) != 2:
                raise ParameterDomainError(f"Edge {k} must have exactly two endpoints", field=f"edges[{k}]")
            i, j = int(edge[0]), int(edge[1])
            if not (0 <= i < n and 0 <= j < n):
                raise ParameterDomainError(
                    f"Edge {k} = ({i}, {j}) references a node outside [0, {n})",
                    field=f"edges[{k}]",
                )
            if i == j:
                raise ParameterDomainError(f"Edge {k} is a self-loop on node {i}", field=f"edges[{k}]")
            normalized.append((i, j))

        topology = cls(n=n, edges=tuple(normalized))

        if n > 1:
            rows = [i for i, _ in normalized] + [j for _, j in normalized]
            cols = [j for _, j in normalized] + [i for i, _ in normalized]
            adjacency = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
            n_components, _ = connected_components(adjacency, directed=False)
            if n_components != 1:
                raise ParameterDomainError(
                    f"Grid graph must be connected, found {n_components} components",
                    field="edges",
                )

        return topology

    @classmethod
    def ring(cls, n: int) -> Self:
        """
        Ring of n prosumers: i -> i+1 for consecutive nodes, closed by 0 -> n-1.

        For n = 10 this is the ten-prosumer test grid with lines
        1-2, 2-3, ..., 9-10 and 1-10 (one-based).
        """
        if n < 3:
            raise ParameterDomainError("A ring needs at least three prosumers", field="n")
        edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
        return cls.create(n, edges)

    # ==================== Properties ====================

    @property
    def n(self) -> int:
        """Number of prosumers."""
        return self._n

    @property
    def m(self) -> int:
        """Number of lines."""
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Oriented edge list."""
        return self._edges

    # ==================== Algebra ====================

    def incidence_matrix(self) -> np.ndarray:
        """
        Node-edge incidence matrix B (n x m).

        B[i, k] = +1 if i is the positive end of line k, -1 if negative, 0 otherwise.
        """
        if self._incidence is None:
            incidence = np.zeros((self._n, self.m))
            for k, (i, j) in enumerate(self._edges):
                incidence[i, k] = 1.0
                incidence[j, k] = -1.0
            incidence.setflags(write=False)
            self._incidence = incidence
        return self._incidence

    def weighted_laplacian(self, line_resistances: np.ndarray) -> np.ndarray:
        """
        Conductance-weighted Laplacian B R^-1 B^T.

        Args:
            line_resistances: Line resistances in ohm, one per edge

        Raises:
            StructuralError: If the resistance vector has the wrong length
            ParameterDomainError: If any resistance is not strictly positive
        """
        resistances = np.asarray(line_resistances, dtype=float)
        if resistances.shape != (self.m,):
            raise StructuralError("line_resistances", (self.m,), resistances.shape)
        if np.any(resistances <= 0.0):
            raise ParameterDomainError("Line resistances must be strictly positive", field="R")

        incidence = self.incidence_matrix()
        return (incidence / resistances) @ incidence.T

    def algebraic_connectivity(self, line_resistances: np.ndarray) -> float:
        """Second-smallest eigenvalue of the weighted Laplacian (0 for n = 1)."""
        if self._n == 1:
            return 0.0
        eigenvalues = np.linalg.eigvalsh(self.weighted_laplacian(line_resistances))
        return float(eigenvalues[1])

    def neighbors(self, node: int) -> frozenset[int]:
        """Graph neighbors of a node (communication graph = physical graph)."""
        return frozenset(
            j if i == node else i
            for i, j in self._edges
            if node in (i, j)
        )

    def flipped(self, edge_index: int) -> Self:
        """Copy of this topology with the orientation of one edge reversed."""
        edges = list(self._edges)
        i, j = edges[edge_index]
        edges[edge_index] = (j, i)
        return type(self)(n=self._n, edges=tuple(edges))

    # ==================== Serialization ====================

    def to_dict(self) -> dict:
        """Convert topology to dictionary representation."""
        return {"n": self._n, "edges": [list(e) for e in self._edges]}

    def __repr__(self) -> str:
        """String representation for debugging."""
        return f"GridTopology(n={self._n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        """Topologies are equal when node count and oriented edges match."""
        if not isinstance(other, GridTopology):
            return False
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))
