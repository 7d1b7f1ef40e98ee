"""Shared test utilities: brute-force oracles and synthetic data builders.

The oracles are deliberately written with plain Python loops so they share no
code path with the library implementations they check.
"""

from __future__ import annotations

import numpy as np

from motifswarm.seqio import AMINO_ACIDS, SecondaryStructure, Sequence


def cityblock_oracle(a, b) -> float:
    """Double-loop sum of absolute differences."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    total = 0.0
    for i in range(a.shape[0]):
        if a.ndim == 1:
            total += abs(a[i] - b[i])
        else:
            for j in range(a.shape[1]):
                total += abs(a[i, j] - b[i, j])
    return total


def msr_oracle(matrix, rows, cols) -> float:
    """Quadruple-average mean squared residue, loops only."""
    rows = list(rows)
    cols = list(cols)
    row_mean = {}
    for i in rows:
        row_mean[i] = sum(matrix[i][j] for j in cols) / len(cols)
    col_mean = {}
    for j in cols:
        col_mean[j] = sum(matrix[i][j] for i in rows) / len(rows)
    overall = sum(matrix[i][j] for i in rows for j in cols) / (len(rows) * len(cols))
    total = 0.0
    for i in rows:
        for j in cols:
            residue = matrix[i][j] - row_mean[i] - col_mean[j] + overall
            total += residue * residue
    return total / (len(rows) * len(cols))


def random_sequence(rng, length, alphabet=AMINO_ACIDS, seq_id="s"):
    residues = "".join(rng.choice(list(alphabet), size=length))
    return Sequence(id=seq_id, residues=residues)


def make_blobs(rng, centers, n_per_blob, sigma):
    """Gaussian blobs around the given centers; returns (items, labels)."""
    centers = np.asarray(centers, dtype=float)
    items = []
    labels = []
    for b, center in enumerate(centers):
        pts = rng.normal(loc=center, scale=sigma, size=(n_per_blob, centers.shape[1]))
        items.extend(pts)
        labels.extend([b] * n_per_blob)
    return np.array(items), np.array(labels)


def partitions_match(labels_a, labels_b) -> bool:
    """True when two labelings induce the same partition (up to renaming)."""
    labels_a = np.asarray(labels_a)
    labels_b = np.asarray(labels_b)
    forward = {}
    backward = {}
    for a, b in zip(labels_a, labels_b):
        if forward.setdefault(a, b) != b:
            return False
        if backward.setdefault(b, a) != a:
            return False
    return True


def structure_string(rng, length, probs):
    """Random 8-class structure string; probs maps 3-class labels to weights."""
    pools = {"H": "HGI", "E": "BE", "C": "TSC"}
    labels = rng.choice(list(probs.keys()), size=length, p=list(probs.values()))
    return "".join(rng.choice(list(pools[lab])) for lab in labels)


def planted_structure_corpus(rng, n_per_class, length=27):
    """Sequences in classes with biased residue usage and structure purity.

    Returns (sequences, structures) where each class draws most residues from
    its own small alphabet and most structure labels from its own class; the
    last class is structurally mixed, which dilutes any cluster it lands in.
    """
    classes = [
        {"alphabet": "AELK", "probs": {"H": 0.85, "E": 0.05, "C": 0.10}},
        {"alphabet": "VITY", "probs": {"H": 0.05, "E": 0.85, "C": 0.10}},
        {"alphabet": "GPSN", "probs": {"H": 0.34, "E": 0.33, "C": 0.33}},
    ]
    sequences = []
    structures = []
    for c, spec_c in enumerate(classes):
        for r in range(n_per_class):
            seq_id = f"c{c}_{r}"
            body = []
            for _ in range(length):
                if rng.random() < 0.85:
                    body.append(rng.choice(list(spec_c["alphabet"])))
                else:
                    body.append(rng.choice(list(AMINO_ACIDS)))
            ss8 = structure_string(rng, length, spec_c["probs"])
            sequences.append(Sequence(id=seq_id, residues="".join(body)))
            ss3 = "".join(
                "H" if ch in "HGI" else "E" if ch in "BE" else "C" for ch in ss8
            )
            structures.append(SecondaryStructure(id=seq_id, classes3=ss3))
    return sequences, structures
