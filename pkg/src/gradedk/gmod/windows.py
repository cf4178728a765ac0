"""Verification windows: finite degree boxes on which per-degree checks run.

The free coordinates range over [-(span + margin), span + margin] where
span combines the shift spread of the presentations involved with the
algebra's generator-level support radius; torsion coordinates are always
enumerated completely.  For algebras supported in N x G the graded
Nakayama property makes window checks conclusive (an isomorphism on the
window forces one everywhere), which is why the default margin is small.
"""

from __future__ import annotations

from itertools import product

from ..algebra import GradedAlgebra

WINDOW_CAP = 100_000


def default_window(A: GradedAlgebra, presentations=(), margin: int = 2):
    m = A.group.free_rank
    radius = A.support_radius()
    spans = []
    for j in range(m):
        s = 0
        for p in presentations:
            for sh in p.shifts:
                s = max(s, abs(sh.values[j]))
        spans.append(s + radius[j] + margin)
    ranges = [range(-s, s + 1) for s in spans]
    torsion = list(A.group.torsion_elements())
    size = len(torsion)
    for r in ranges:
        size *= len(r)
    if size > WINDOW_CAP:
        raise ValueError(f"verification window too large ({size} degrees)")
    out = []
    for free in product(*ranges) if m else [()]:
        for t in torsion:
            out.append(A.group.degree(tuple(free) + t.torsion_part))
    return out
