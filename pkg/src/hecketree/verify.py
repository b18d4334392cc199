"""Three-way verification sweeps: closed forms vs. independent routes vs. tree counting.

Each sweep multiplies out a block of basis pairs along every implemented
route and compares the structure-constant vectors exactly.  Reports list all
mismatching cells with the values from each route; an empty mismatch list is
the pass condition.  Cells are independent, so sweeps may be partitioned
across worker threads (capped by the HECKETREE_THREADS environment
variable); results are collected in cell order either way, keeping output
deterministic.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import tree
from .core import HeckeElement
from .endstab import HorocycleAlgebra, m_to_nf, nf_to_m
from .iwahori import IwahoriAlgebra
from .spherical import SphericalAlgebra, SphericalParams


def thread_count() -> int:
    """Worker cap from the environment; at least one."""
    raw = os.environ.get("HECKETREE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class VerifyReport:
    family: str
    params: dict
    cells: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "cells": self.cells,
            "mismatches": self.mismatches,
            "ok": self.ok,
        }


def _int_terms(x: HeckeElement) -> dict:
    """Structure-constant dict of an element known to have integer coefficients."""
    out = {}
    for idx, coeff in x.terms():
        if coeff.denominator != 1:
            raise AssertionError(f"non-integral structure constant {coeff} at {idx!r}")
        out[idx] = coeff.numerator
    return out


def _run_cells(cells, worker, workers: int) -> list:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(worker, cells))
    return [worker(cell) for cell in cells]


def _route_json(algebra, routes: dict) -> dict:
    return {
        name: {algebra.basis_label(idx): coeff for idx, coeff in sorted(vec.items())}
        for name, vec in routes.items()
    }


def verify_spherical(
    params: SphericalParams,
    max_index: int,
    max_vertices: int = tree.DEFAULT_MAX_VERTICES,
    workers: int | None = None,
) -> VerifyReport:
    """Closed form vs. generator recursion vs. sphere counting, all pairs up to max_index."""
    algebra = SphericalAlgebra(params)
    step = params.step
    ball = tree.build_ball(params.q0, params.q1, 2 * step * max_index, max_vertices)
    cells = [(n, m) for n in range(max_index + 1) for m in range(n, max_index + 1)]

    def check(cell):
        n, m = cell
        routes = {
            "closed": _int_terms(algebra.multiply_closed(n, m)),
            "recursive": _int_terms(algebra.multiply_recursive(n, m)),
            "oracle": {
                k // step: count
                for k, count in sorted(
                    tree.spherical_product(ball, step * n, step * m).items()
                )
            },
        }
        if routes["closed"] == routes["recursive"] == routes["oracle"]:
            return None
        return {
            "key": [algebra.basis_label(n), algebra.basis_label(m)],
            "routes": _route_json(algebra, routes),
        }

    report = VerifyReport(
        family="spherical",
        params={"mode": params.mode, "q0": params.q0, "q1": params.q1, "max": max_index},
        cells=len(cells),
    )
    workers = thread_count() if workers is None else workers
    report.mismatches = [r for r in _run_cells(cells, check, workers) if r is not None]
    return report


def verify_iwahori(
    qs: int,
    qt: int,
    max_len: int,
    max_vertices: int = tree.DEFAULT_MAX_VERTICES,
    workers: int | None = None,
) -> VerifyReport:
    """Generator rewriting vs. closed form vs. edge counting, word pairs up to max_len.

    The inversion-decorated sector is oracle-checked only when qs == qt: a
    type-exchanging automorphism forces equal branching at the two vertex
    types, so for unequal weights those indices have no edge model (and the
    formal rewriting on them is not even associative).  Plain-word pairs are
    checked three ways at any parameters; decorated pairs at unequal weights
    are still checked along both algebraic routes.
    """
    algebra = IwahoriAlgebra(qs, qt)
    ball = tree.build_ball(qs, qt, 2 * max_len + 2, max_vertices)
    groups = tree.edges_by_weyl_word(ball, 2 * max_len)
    indices = algebra.words_up_to(max_len)
    cells = [(a, b) for a in indices for b in indices]
    oracle_decorated = qs == qt

    def check(cell):
        a, b = cell
        routes = {
            "generated": _int_terms(algebra.multiply_basis(a, b)),
            "closed": _int_terms(algebra.multiply_closed(a, b)),
        }
        if oracle_decorated or (a.iflag == b.iflag == 0):
            oracle = {}
            for target in algebra.words_up_to(len(a.word) + len(b.word)):
                if target.iflag != a.iflag ^ b.iflag:
                    continue
                count = tree.iwahori_constant(
                    ball,
                    a.word,
                    b.word,
                    target.word,
                    (a.iflag, b.iflag, target.iflag),
                    _groups=groups,
                )
                if count:
                    oracle[target] = count
            routes["oracle"] = oracle
        vectors = list(routes.values())
        if all(vec == vectors[0] for vec in vectors):
            return None
        return {
            "key": [algebra.basis_label(a), algebra.basis_label(b)],
            "routes": _route_json(algebra, routes),
        }

    report = VerifyReport(
        family="iwahori",
        params={"qs": qs, "qt": qt, "len": max_len},
        cells=len(cells),
    )
    workers = thread_count() if workers is None else workers
    report.mismatches = [r for r in _run_cells(cells, check, workers) if r is not None]
    return report


def verify_affine(
    q: int,
    max_index: int,
    max_vertices: int = tree.DEFAULT_MAX_VERTICES,
    workers: int | None = None,
) -> VerifyReport:
    """M-table vs. normal-form expansion vs. horocycle counting, classes up to max_index.

    Oracle targets run over classes up to max(m, n): the confluence distance
    is an ultrametric, so a witness at a deeper class cannot be reached and
    those counts vanish identically (spot-checked separately in the tests).
    """
    algebra = HorocycleAlgebra(q)
    ball = tree.build_ball(q, q, 2 * max_index + 2, max_vertices)
    ray = ball.ray()
    members = {j: tree.horocycle_members(ball, j) for j in range(max_index + 1)}
    witnesses = {j: members[j][0] for j in range(max_index + 1)}
    cells = [(m, n) for m in range(max_index + 1) for n in range(max_index + 1)]

    def check(cell):
        m, n = cell
        table = _int_terms(algebra.multiply_basis(m, n))
        nf_route = _int_terms(nf_to_m(m_to_nf(algebra, m) * m_to_nf(algebra, n)))
        oracle = {}
        for k in range(max(m, n) + 1):
            w = witnesses[k]
            count = sum(
                1 for v in members[m] if tree.horocycle_class(ball, ray, v, w) == n
            )
            if count:
                oracle[k] = count
        if table == nf_route == oracle:
            return None
        routes = {"table": table, "normal-form": nf_route, "oracle": oracle}
        return {
            "key": [algebra.basis_label(m), algebra.basis_label(n)],
            "routes": _route_json(algebra, routes),
        }

    report = VerifyReport(
        family="affine",
        params={"q": q, "max": max_index},
        cells=len(cells),
    )
    workers = thread_count() if workers is None else workers
    report.mismatches = [r for r in _run_cells(cells, check, workers) if r is not None]
    return report
