"""Parsing of protein sequences and secondary-structure annotations.

Sequence files are FASTA-style: a header line starting with ``>`` (the id is
the first whitespace-delimited token), followed by residue lines that are
concatenated. Structure files pair each id with an 8-class structure string
of the same length as the sequence; the 8 classes are collapsed to the
3-class H/E/C alphabet on load.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import LinkError, ParseError, ValidationError

#: Canonical one-letter amino-acid alphabet. This ordering is used for the
#: columns of every frequency matrix produced by the package.
AMINO_ACIDS = "ARNDCQEGHILKMFPSTWYV"

AA_INDEX = {aa: i for i, aa in enumerate(AMINO_ACIDS)}

#: Three-class secondary structure alphabet: helix, sheet, coil.
SS3_CLASSES = "HEC"

#: Substitutions applied to ambiguity codes when the relaxed alphabet is on.
RELAXED_SUBSTITUTIONS = {"B": "D", "Z": "E", "X": "A", "U": "C"}

#: Default minimum sequence length accepted by corpus loading; shorter
#: sequences produce no complete window and are rejected.
MIN_SEQUENCE_LENGTH = 9


@dataclass(frozen=True)
class Sequence:
    """A validated protein sequence: id plus residues over the 20-letter alphabet."""

    id: str
    residues: str

    def __len__(self) -> int:
        return len(self.residues)


@dataclass(frozen=True)
class SecondaryStructure:
    """Per-residue 3-class structure labels (H/E/C) for one sequence."""

    id: str
    classes3: str

    def __len__(self) -> int:
        return len(self.classes3)


def map_ss8_to_ss3(code: str) -> str:
    """Collapse an 8-class structure character to H, E or C.

    H, G and I map to H (helices); B and E map to E (sheets); every other
    character, including blanks and unknown codes, maps to C (coils).
    """
    c = code.upper()
    if c in "HGI":
        return "H"
    if c in "BE":
        return "E"
    return "C"


def _validate_residues(seq_id: str, residues: str, relax_alphabet: bool) -> str:
    if relax_alphabet:
        residues = "".join(RELAXED_SUBSTITUTIONS.get(c, c) for c in residues)
    for pos, c in enumerate(residues, start=1):
        if c not in AA_INDEX:
            raise ValidationError(
                f"sequence '{seq_id}': illegal residue {c!r} at position {pos}"
            )
    return residues


def parse_sequences(text: str, relax_alphabet: bool = False) -> list[Sequence]:
    """Parse FASTA-style record text into a list of Sequence objects.

    Residues are uppercased and whitespace-stripped; record order is
    preserved. With ``relax_alphabet`` the ambiguity codes B/Z/X/U are mapped
    to D/E/A/C instead of being rejected.
    """
    sequences: list[Sequence] = []
    current_id: str | None = None
    current_body: list[str] = []
    header_line = 0

    def flush() -> None:
        if current_id is None:
            return
        residues = "".join(current_body).upper()
        if not residues:
            raise ValidationError(
                f"sequence '{current_id}' (header at line {header_line}) has no residues"
            )
        residues = _validate_residues(current_id, residues, relax_alphabet)
        sequences.append(Sequence(id=current_id, residues=residues))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            tokens = line[1:].split()
            if not tokens:
                raise ParseError("record header '>' carries no id", line=lineno)
            current_id = tokens[0]
            current_body = []
            header_line = lineno
        else:
            if current_id is None:
                raise ParseError(
                    f"residue data {line[:20]!r} before any record header", line=lineno
                )
            current_body.append("".join(line.split()))
    flush()
    return sequences


def parse_structures(
    text: str, sequences: list[Sequence]
) -> list[SecondaryStructure]:
    """Parse id + 8-class structure-string records and collapse them to H/E/C.

    Every structure id must match a parsed sequence (LinkError otherwise) and
    the string length must equal the sequence length (ValidationError naming
    the id and both lengths).
    """
    by_id = {s.id: s for s in sequences}
    structures: list[SecondaryStructure] = []
    current_id: str | None = None
    header_line = 0

    def add(struct_id: str, ss8: str, lineno: int) -> None:
        if struct_id not in by_id:
            raise LinkError(
                f"structure '{struct_id}' (line {lineno}) has no matching sequence"
            )
        seq = by_id[struct_id]
        if len(ss8) != len(seq):
            raise ValidationError(
                f"structure '{struct_id}': length {len(ss8)} does not match "
                f"sequence length {len(seq)}"
            )
        classes3 = "".join(map_ss8_to_ss3(c) for c in ss8)
        structures.append(SecondaryStructure(id=struct_id, classes3=classes3))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if current_id is None:
            if not line.strip():
                continue
            if not line.lstrip().startswith(">"):
                raise ParseError(
                    "structure string before any record header", line=lineno
                )
            tokens = line.lstrip()[1:].split()
            if not tokens:
                raise ParseError("record header '>' carries no id", line=lineno)
            current_id = tokens[0]
            header_line = lineno
        else:
            # Blank (space) is a legal 8-class code, so the structure string
            # is taken raw; only fully empty lines are skipped.
            if not line:
                continue
            add(current_id, line, lineno)
            current_id = None
    if current_id is not None:
        raise ParseError(
            f"structure record '{current_id}' has no structure string",
            line=header_line,
        )
    return structures


@dataclass
class Corpus:
    """Parsed sequences plus (optionally) their paired structure annotations."""

    sequences: list[Sequence]
    structures: dict[str, SecondaryStructure] | None = None

    def structure_for(self, seq_id: str) -> SecondaryStructure:
        if self.structures is None:
            raise ValidationError("corpus carries no structure annotations")
        return self.structures[seq_id]


def load_corpus(
    sequence_path: str | Path,
    structure_path: str | Path | None = None,
    relax_alphabet: bool = False,
    min_length: int = MIN_SEQUENCE_LENGTH,
) -> Corpus:
    """Load and cross-validate a sequence file and optional structure file.

    Sequences shorter than ``min_length`` are rejected: they yield no complete
    window. When structures are supplied, the set of structure ids must equal
    the set of sequence ids.
    """
    seq_text = Path(sequence_path).read_text(encoding="utf-8")
    sequences = parse_sequences(seq_text, relax_alphabet=relax_alphabet)
    for seq in sequences:
        if len(seq) < min_length:
            raise ValidationError(
                f"sequence '{seq.id}' has length {len(seq)} < minimum {min_length}"
            )
    structures = None
    if structure_path is not None:
        struct_text = Path(structure_path).read_text(encoding="utf-8")
        parsed = parse_structures(struct_text, sequences)
        structures = {ss.id: ss for ss in parsed}
        missing = [s.id for s in sequences if s.id not in structures]
        if missing:
            raise ValidationError(
                f"no structure annotation for sequence(s): {', '.join(missing[:5])}"
            )
    return Corpus(sequences=sequences, structures=structures)


def sample_corpus_paths() -> tuple[Path, Path]:
    """Paths of the bundled sample corpus (sequences, structures)."""
    root = Path(__file__).parent / "data" / "sample_corpus"
    return root / "sequences.fasta", root / "structures.txt"


def load_sample_corpus() -> Corpus:
    """Load the small corpus that ships with the package."""
    seq_path, struct_path = sample_corpus_paths()
    return load_corpus(seq_path, struct_path)
