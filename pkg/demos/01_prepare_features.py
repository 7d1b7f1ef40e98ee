"""From raw sequences to the two working representations.

Every sequence becomes a 9 x 20 window: the sequence is folded into
consecutive 9-residue blocks and row i counts which amino acid sits at block
position i. Collapsing each window column-by-column then gives one 20-element
row of the matrix that the biclustering stage consumes.
"""

import numpy as np

from motifswarm import AMINO_ACIDS, load_sample_corpus
from motifswarm.featurize import (
    build_bicluster_matrix,
    normalize_window,
    reshape_and_count,
)

corpus = load_sample_corpus()
print(f"sample corpus: {len(corpus.sequences)} sequences, "
      f"structures: {corpus.structures is not None}")

seq = corpus.sequences[0]
print(f"\nfirst sequence {seq.id!r} ({len(seq)} residues):")
print(f"  {seq.residues}")

window = reshape_and_count(seq)
print(f"\nits frequency window has shape {window.counts.shape}; "
      f"each row sums to the block count:")
for i in range(3):
    top = np.argsort(window.counts[i])[::-1][:3]
    letters = ", ".join(f"{AMINO_ACIDS[j]}x{window.counts[i, j]}" for j in top)
    print(f"  position {i + 1}: {letters}, row sum {window.counts[i].sum()}")

row = normalize_window(window, method="mean")
print("\nmean-normalized row (first 8 columns):")
print("  " + "  ".join(f"{AMINO_ACIDS[j]}={row.values[j]:.2f}" for j in range(8)))

matrix = build_bicluster_matrix(corpus.sequences)
print(f"\nstacked over the corpus: bicluster matrix {matrix.shape}, "
      f"values in [{matrix.min():.2f}, {matrix.max():.2f}]")
print("the CLI equivalent: motifswarm prepare --sample-corpus --out out/")
