"""Regenerates the bundled sample corpus. Deterministic; run from repo root:

    python3 tools/make_sample_corpus.py
"""

import pathlib

import numpy as np

AMINO_ACIDS = "ARNDCQEGHILKMFPSTWYV"

# Three families: residue bias plus an 8-class structure bias. Blanks are a
# legal 8-class code (mapped to coil), so the coil family uses a few, never
# at line ends where editors would strip them.
FAMILIES = [
    ("hel", "AELK", list("HHHHHHGIT"), [18, 23, 27, 31, 36, 45, 20, 27, 40, 29]),
    ("str", "VITY", list("EEEEEEBTS"), [19, 27, 24, 36, 45, 22, 33, 27, 41, 26]),
    ("coil", "GPSN", list("TTSS HHEE"), [21, 27, 35, 18, 44, 30, 27, 39, 25, 19]),
]
FAVORED_MASS = 0.85


def draw_residue(rng, favored):
    if rng.random() < FAVORED_MASS:
        return favored[rng.integers(len(favored))]
    return AMINO_ACIDS[rng.integers(20)]


def draw_structure(rng, pool):
    ch = pool[rng.integers(len(pool))]
    return ch


def main():
    rng = np.random.default_rng(20240915)
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "motifswarm" / "data" / "sample_corpus"
    out_dir.mkdir(parents=True, exist_ok=True)

    fasta_lines = []
    struct_lines = []
    for family, favored, pool, lengths in FAMILIES:
        for i, length in enumerate(lengths, start=1):
            seq_id = f"{family}{i:02d}"
            residues = "".join(draw_residue(rng, favored) for _ in range(length))
            structure = "".join(draw_structure(rng, pool) for _ in range(length))
            while structure.endswith(" "):
                structure = structure[:-1] + draw_structure(rng, [c for c in pool if c != " "])
            fasta_lines.append(f">{seq_id} {family} family, synthetic")
            fasta_lines.append(residues)
            struct_lines.append(f">{seq_id}")
            struct_lines.append(structure)

    (out_dir / "sequences.fasta").write_text("\n".join(fasta_lines) + "\n")
    (out_dir / "structures.txt").write_text("\n".join(struct_lines) + "\n")
    print(f"wrote {len(fasta_lines) // 2} sequences to {out_dir}")


if __name__ == "__main__":
    main()
