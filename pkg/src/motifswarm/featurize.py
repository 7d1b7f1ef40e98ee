"""Turn sequences into position x amino-acid frequency windows.

Each sequence is folded into consecutive 9-residue blocks; counting how often
each amino acid occupies each of the 9 block positions gives one 9x20
frequency window per sequence (the clustering unit). For biclustering, every
window is collapsed into a single 20-element row by a per-column
normalization, and the rows are stacked into an n_sequences x 20 matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, ValidationError
from .seqio import AA_INDEX, AMINO_ACIDS, SecondaryStructure, Sequence

WINDOW_SIZE = 9

#: Per-column window-to-row reductions available for the bicluster matrix.
NORMALIZATION_METHODS = ("mean", "range", "mode")

#: Window chunking schemes. "chunked" folds the sequence into consecutive
#: non-overlapping blocks (default); "sliding" uses every stride-1 window.
WINDOW_SCHEMES = ("chunked", "sliding")


@dataclass
class FrequencyWindow:
    """window_size x 20 matrix of position/amino-acid occupancy counts.

    Row i counts, over all blocks of the sequence, how often block position i
    holds each amino acid. A short final block simply contributes no counts
    to the positions it does not fill.
    """

    sequence_id: str
    counts: np.ndarray

    def __post_init__(self):
        self.counts = np.asarray(self.counts)
        if self.counts.ndim != 2 or self.counts.shape[1] != len(AMINO_ACIDS):
            raise ContractError(
                f"frequency window must be ws x {len(AMINO_ACIDS)}, "
                f"got shape {self.counts.shape}"
            )
        if (self.counts < 0).any():
            raise ContractError("frequency window entries must be non-negative")


@dataclass
class NormalizedRow:
    """A 20-element reduction of one FrequencyWindow (one bicluster-matrix row)."""

    sequence_id: str
    values: np.ndarray
    method: str


@dataclass
class StructureWindowSet:
    """The complete 9-label structure segments of one sequence."""

    sequence_id: str
    segments: list[str] = field(default_factory=list)


def reshape_and_count(
    seq: Sequence, window_size: int = WINDOW_SIZE, scheme: str = "chunked"
) -> FrequencyWindow:
    """Build the window_size x 20 frequency window for one sequence.

    Under the default "chunked" scheme the sequence is split into consecutive
    non-overlapping blocks; block t contributes its i-th residue to row i.
    Padding positions of the incomplete final block contribute zero counts.
    The "sliding" scheme instead counts every stride-1 window of length
    window_size.
    """
    if scheme not in WINDOW_SCHEMES:
        raise ContractError(f"unknown window scheme {scheme!r}")
    n = len(seq)
    if n < window_size:
        raise ValidationError(
            f"sequence '{seq.id}' has length {n} < window size {window_size}"
        )
    counts = np.zeros((window_size, len(AMINO_ACIDS)), dtype=np.int64)
    if scheme == "chunked":
        starts = range(0, n, window_size)
    else:
        starts = range(0, n - window_size + 1)
    for start in starts:
        block = seq.residues[start : start + window_size]
        for i, aa in enumerate(block):
            counts[i, AA_INDEX[aa]] += 1
    return FrequencyWindow(sequence_id=seq.id, counts=counts)


def normalize_window(fw: FrequencyWindow, method: str = "mean") -> NormalizedRow:
    """Collapse a frequency window into one 20-element row, column by column.

    mean: arithmetic mean of the column. range: max minus min. mode: the most
    frequent count value in the column, ties resolved to the smallest value.
    """
    if method not in NORMALIZATION_METHODS:
        raise ContractError(f"unknown normalization method {method!r}")
    counts = fw.counts
    if method == "mean":
        values = counts.mean(axis=0)
    elif method == "range":
        values = (counts.max(axis=0) - counts.min(axis=0)).astype(float)
    else:
        values = np.empty(counts.shape[1])
        for j in range(counts.shape[1]):
            uniq, freq = np.unique(counts[:, j], return_counts=True)
            # np.unique sorts ascending, so argmax lands on the smallest
            # value among equally frequent ones.
            values[j] = uniq[np.argmax(freq)]
    return NormalizedRow(sequence_id=fw.sequence_id, values=values, method=method)


def build_cluster_dataset(
    seqs: list[Sequence], window_size: int = WINDOW_SIZE, scheme: str = "chunked"
) -> list[FrequencyWindow]:
    """One frequency window per sequence, in input order."""
    return [reshape_and_count(s, window_size, scheme) for s in seqs]


def build_bicluster_matrix(
    seqs: list[Sequence],
    method: str = "mean",
    window_size: int = WINDOW_SIZE,
    scheme: str = "chunked",
) -> np.ndarray:
    """Stack the normalized rows of all sequences into an n x 20 matrix."""
    rows = [
        normalize_window(reshape_and_count(s, window_size, scheme), method).values
        for s in seqs
    ]
    return np.array(rows).reshape(len(seqs), len(AMINO_ACIDS))


def structure_segments(
    ss: SecondaryStructure, window_size: int = WINDOW_SIZE
) -> StructureWindowSet:
    """Chop a structure annotation into complete window_size-label segments.

    The incomplete tail, if any, is dropped; a sequence of length L yields
    floor(L / window_size) segments.
    """
    n_complete = len(ss) // window_size
    segments = [
        ss.classes3[t * window_size : (t + 1) * window_size]
        for t in range(n_complete)
    ]
    return StructureWindowSet(sequence_id=ss.id, segments=segments)
