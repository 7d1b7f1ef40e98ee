"""Distance, fitness and homology measures.

All measures are pure functions: city-block dissimilarity between frequency
matrices, the per-cluster intra-distance fitness, the mean squared residue of
a submatrix, and the dominant-class structure similarity with its homology
thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence as Seq

import numpy as np

from .errors import ContractError
from .featurize import StructureWindowSet
from .seqio import SS3_CLASSES

HOMOLOGY_IDENTICAL = "Identical"
HOMOLOGY_WEAK = "Weak"
HOMOLOGY_NONE = "None"


def cityblock(vk: np.ndarray, vc: np.ndarray) -> float:
    """Sum of absolute cell differences between two same-shaped arrays."""
    vk = np.asarray(vk, dtype=float)
    vc = np.asarray(vc, dtype=float)
    if vk.shape != vc.shape:
        raise ContractError(f"shape mismatch: {vk.shape} vs {vc.shape}")
    return float(np.abs(vk - vc).sum())


def intra_cluster_fitness(
    data: Seq[np.ndarray],
    labels: Seq[int],
    centroids: Seq[np.ndarray],
    dist=cityblock,
) -> float:
    """Summed item-to-centroid distances divided by the number of clusters.

    Empty clusters contribute zero to the sum while still counting in the
    denominator.
    """
    if len(data) == 0:
        raise ContractError("fitness of an empty dataset is undefined")
    if len(labels) != len(data):
        raise ContractError("one label per item required")
    nclust = len(centroids)
    if nclust < 1:
        raise ContractError("at least one cluster required")
    total = 0.0
    for item, label in zip(data, labels):
        total += dist(item, centroids[label])
    return total / nclust


def msr(matrix: np.ndarray, rows: Seq[int], cols: Seq[int]) -> float:
    """Mean squared residue of the submatrix selected by rows x cols.

    The residue of cell (i, j) is its value minus the row mean, minus the
    column mean, plus the overall mean, all taken over the selected index
    sets. Constant and additive (value = row effect + column effect)
    submatrices score exactly zero.
    """
    matrix = np.asarray(matrix, dtype=float)
    rows = np.asarray(rows, dtype=int)
    cols = np.asarray(cols, dtype=int)
    if rows.size == 0 or cols.size == 0:
        raise ContractError("row and column index sets must be non-empty")
    if rows.min() < 0 or rows.max() >= matrix.shape[0]:
        raise ContractError("row index out of range")
    if cols.min() < 0 or cols.max() >= matrix.shape[1]:
        raise ContractError("column index out of range")
    sub = matrix[np.ix_(rows, cols)]
    row_means = sub.mean(axis=1, keepdims=True)
    col_means = sub.mean(axis=0, keepdims=True)
    overall = sub.mean()
    residue = sub - row_means - col_means + overall
    return float(np.mean(residue**2))


@dataclass
class StructureProfile:
    """Per-position H/E/C frequencies over a group's structure segments."""

    freqs: np.ndarray  # ws x 3, rows sum to 1, columns ordered H, E, C
    n_segments: int


def build_profile(segsets: Iterable[StructureWindowSet]) -> StructureProfile:
    """Tally per-position class frequencies over all segments of the group."""
    segments = [seg for ws in segsets for seg in ws.segments]
    if not segments:
        raise ContractError("cannot build a profile from zero segments")
    ws = len(segments[0])
    counts = np.zeros((ws, len(SS3_CLASSES)))
    class_index = {c: k for k, c in enumerate(SS3_CLASSES)}
    for seg in segments:
        for i, label in enumerate(seg):
            counts[i, class_index[label]] += 1
    return StructureProfile(freqs=counts / len(segments), n_segments=len(segments))


def structure_similarity(profile: StructureProfile) -> float:
    """Average, over positions, of the dominant class frequency."""
    return float(profile.freqs.max(axis=1).mean())


def homology_class(sim: float) -> str:
    """Classify a similarity value: above 0.70 the group is structurally
    identical, above 0.60 weakly homologous, otherwise unrelated. Both
    boundaries are strict."""
    if not 0.0 <= sim <= 1.0:
        raise ContractError(f"similarity {sim} outside [0, 1]")
    if sim > 0.70:
        return HOMOLOGY_IDENTICAL
    if sim > 0.60:
        return HOMOLOGY_WEAK
    return HOMOLOGY_NONE
