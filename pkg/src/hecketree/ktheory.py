"""Integer linear algebra for AF direct limits and crossed-product K-groups.

Provides Smith normal form with unimodular transform witnesses, cokernel and
kernel-rank extraction, truncated Bratteli direct limits with a stabilization
flag, and the kernel/cokernel computation that the six-term sequence reduces
to for an AF algebra crossed by a single endomorphism (both odd K-groups of
the coefficient algebra vanish, so the K-groups of the crossed product are
the cokernel and kernel of the induced map minus the identity).

Truncated limits, not symbolic ones: the machinery reports finite stages and
flags when consecutive stages agree, which is what desk-scale verification
needs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular matrix with exact integer entries."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if rows and any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("matrix rows have unequal lengths")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def to_lists(self) -> list:
        return [list(row) for row in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = list(zip(*other.entries)) if other.entries else []
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                for row in self.entries
            )
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return IntMatrix(
            tuple(
                tuple(a - b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            )
        )

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


class SNFResult(NamedTuple):
    """U @ M @ V == D with U, V unimodular and D diagonal with a divisor chain."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list:
        return [self.d.entries[i][i] for i in range(min(self.d.rows, self.d.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Diagonalize over the integers, tracking the row and column transforms.

    Pivoting is deterministic: the entry of smallest nonzero absolute value,
    ties broken by position, so the returned transforms are reproducible.
    """
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        # row dst += factor * row src
        arow, asrc = a[dst], a[src]
        for j in range(cols):
            arow[j] += factor * asrc[j]
        urow, usrc = u[dst], u[src]
        for j in range(rows):
            urow[j] += factor * usrc[j]

    def add_col(src, dst, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(rows, cols):
        pos = find_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            if a[t][t] < 0:
                negate_row(t)
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // pivot))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // pivot))
                    if a[t][j]:
                        dirty = True
            if dirty:
                pos = find_pivot(t)
                swap_rows(t, pos[0])
                swap_cols(t, pos[1])
                continue
            # cross is clear; enforce divisibility of the remaining block
            pivot = a[t][t]
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % pivot:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        t += 1
    for i in range(min(rows, cols)):
        if a[i][i] < 0:
            negate_row(i)
    return SNFResult(IntMatrix.from_rows(u), IntMatrix.from_rows(a), IntMatrix.from_rows(v))


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Finitely generated abelian group: free rank plus invariant factors."""

    free_rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        factors = tuple(int(x) for x in self.invariant_factors)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        for i, x in enumerate(factors):
            if x < 2:
                raise ValueError(f"invariant factor {x} < 2")
            if i and factors[i] % factors[i - 1]:
                raise ValueError(f"invariant factors {factors} violate divisibility")
        object.__setattr__(self, "invariant_factors", factors)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
            "description": self.describe(),
        }


def cokernel(m: IntMatrix) -> AbelianGroupPresentation:
    """Target space modulo the image, read off the Smith normal form."""
    snf = smith_normal_form(m)
    torsion = tuple(x for x in snf.diagonal if x > 1)
    return AbelianGroupPresentation(m.rows - snf.rank, torsion)


def kernel_rank(m: IntMatrix) -> int:
    """Rank of the integer kernel (the kernel is free)."""
    return m.cols - smith_normal_form(m).rank


@dataclass(frozen=True)
class BratteliDiagram:
    """Leveled multiplicity vectors with nonnegative integer connecting maps."""

    levels: tuple
    maps: tuple = field(default_factory=tuple)

    def __post_init__(self):
        levels = tuple(tuple(int(x) for x in level) for level in self.levels)
        maps = tuple(
            m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m) for m in self.maps
        )
        if not levels:
            raise ValueError("diagram needs at least one level")
        for level in levels:
            if not level or any(x < 1 for x in level):
                raise ValueError(f"multiplicities must be positive, got {level}")
        if len(maps) != len(levels) - 1:
            raise ValueError(
                f"{len(levels)} levels require {len(levels) - 1} maps, got {len(maps)}"
            )
        for k, m in enumerate(maps):
            if (m.rows, m.cols) != (len(levels[k + 1]), len(levels[k])):
                raise ValueError(
                    f"map {k} has shape {m.rows}x{m.cols}, "
                    f"expected {len(levels[k + 1])}x{len(levels[k])}"
                )
            if any(x < 0 for row in m.entries for x in row):
                raise ValueError(f"map {k} has a negative entry")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "maps", maps)

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def to_json(self) -> dict:
        return {
            "levels": [list(level) for level in self.levels],
            "maps": [m.to_lists() for m in self.maps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BratteliDiagram":
        return cls(tuple(data["levels"]), tuple(data["maps"]))


def load_bratteli(path) -> BratteliDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return BratteliDiagram.from_json(json.load(fh))


def truncated_limit(diagram: BratteliDiagram, depth: int | None = None) -> dict:
    """Finite-stage report on the direct limit of free groups along the diagram.

    Lists each level's free group, composes the connecting maps from level 0,
    and flags stabilization when the last two composed cokernels agree.
    """
    if depth is None:
        depth = diagram.num_levels - 1
    if depth < 0 or depth >= diagram.num_levels:
        raise ValueError(f"depth {depth} outside the {diagram.num_levels} provided levels")
    levels_report = [
        {"level": k, "summands": list(diagram.levels[k]), "k0_rank": len(diagram.levels[k])}
        for k in range(depth + 1)
    ]
    composed = IntMatrix.identity(len(diagram.levels[0]))
    stage_cokernels = []
    map_kernel_ranks = []
    for k in range(depth):
        composed = diagram.maps[k] @ composed
        map_kernel_ranks.append(kernel_rank(diagram.maps[k]))
        stage_cokernels.append(cokernel(composed))
    stabilized = len(stage_cokernels) >= 2 and stage_cokernels[-1] == stage_cokernels[-2]
    return {
        "levels": levels_report,
        "map_kernel_ranks": map_kernel_ranks,
        "composed_map": composed.to_lists(),
        "composed_cokernel": stage_cokernels[-1].to_json() if stage_cokernels else None,
        "stage_cokernels": [c.to_json() for c in stage_cokernels],
        "stabilized": stabilized,
    }


def pv_k_groups(alpha: IntMatrix) -> tuple:
    """K-groups of an AF algebra crossed by one endomorphism, via (id - alpha).

    ``alpha`` maps a rank-``cols`` truncation stage into a stage of rank
    ``rows >= cols``; the identity is the canonical coordinate inclusion, so
    a square ``alpha`` gives the plain I - alpha.  Returns the even K-group
    presentation (cokernel) and the odd K-group rank (kernel rank).
    """
    if alpha.rows < alpha.cols:
        raise ValueError(
            f"alpha maps into a smaller stage ({alpha.rows} < {alpha.cols}); "
            "the truncation must not shrink"
        )
    inclusion = IntMatrix.from_rows(
        [[1 if i == j else 0 for j in range(alpha.cols)] for i in range(alpha.rows)]
    )
    diff = inclusion - alpha
    return cokernel(diff), kernel_rank(diff)
