"""Motif readouts for a group of sequences: per-position significant amino
acids (strictly above 7% frequency), the amino-acid set a bicluster retains,
Full/Partial/Disjoint superset classification, and sequence-logo columns in
bits with an optional small-sample correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from .featurize import WINDOW_SIZE
from .seqio import AMINO_ACIDS

SAA_THRESHOLD = 0.07
MAX_BITS = math.log2(len(AMINO_ACIDS))

RELATION_FULL = "Full"
RELATION_PARTIAL = "Partial"
RELATION_DISJOINT = "Disjoint"


@dataclass(frozen=True)
class PositionSaa:
    position: int
    saa: frozenset


@dataclass(frozen=True)
class LogoColumn:
    position: int
    total_bits: float
    letters: tuple  # ((letter, height), ...) descending height


@dataclass(frozen=True)
class PositionRecord:
    position: int
    saa: frozenset
    motif: frozenset | None
    relation: str | None


@dataclass(frozen=True)
class MotifReport:
    group_id: str
    per_position: tuple
    logo: tuple
    degenerate: bool  # every position's saa came out empty


def position_frequencies(cluster_members) -> np.ndarray:
    """Sum the members' count matrices and normalize each window row to 1.

    A row with no observations anywhere (padded tail of a tiny corpus) stays
    all-zero; callers can spot those by their zero sum.
    """
    members = list(cluster_members)
    if not members:
        raise ContractError("need at least one member window")
    total = np.zeros((WINDOW_SIZE, len(AMINO_ACIDS)))
    for w in members:
        total += np.asarray(getattr(w, "counts", w), dtype=float)
    sums = total.sum(axis=1, keepdims=True)
    scale = np.where(sums > 0, sums, 1.0)
    return total / scale


def significant_amino_acids(freqs, threshold: float = SAA_THRESHOLD):
    """Letters strictly above the frequency threshold, one set per position."""
    freqs = np.asarray(freqs, dtype=float)
    if freqs.shape != (WINDOW_SIZE, len(AMINO_ACIDS)):
        raise ContractError(f"expected {WINDOW_SIZE}x{len(AMINO_ACIDS)} frequencies")
    out = []
    for i in range(WINDOW_SIZE):
        letters = frozenset(
            AMINO_ACIDS[j] for j in range(len(AMINO_ACIDS)) if freqs[i, j] > threshold
        )
        out.append(PositionSaa(position=i + 1, saa=letters))
    return out


def motif_set(bic, col_labels: str = AMINO_ACIDS) -> frozenset:
    """The letters of the columns a bicluster retained."""
    return frozenset(col_labels[c] for c in bic.cols)


def classify_superset(saa, motif) -> str:
    saa = frozenset(saa)
    motif = frozenset(motif)
    if saa and saa <= motif:
        return RELATION_FULL
    if saa & motif:
        return RELATION_PARTIAL
    return RELATION_DISJOINT


def logo_columns(freqs, n_segments: int, correction: bool = True):
    """Information content per position: log2(20) minus the row's entropy,
    minus the small-sample term 19/(2*ln2*n) when correction is on, clamped
    at 0. Letter heights split the column total by frequency."""
    freqs = np.asarray(freqs, dtype=float)
    if n_segments < 1:
        raise ContractError("n_segments must be >= 1")
    e_n = (len(AMINO_ACIDS) - 1) / (2 * math.log(2) * n_segments) if correction else 0.0
    columns = []
    for i in range(freqs.shape[0]):
        row = freqs[i]
        if row.sum() <= 0:
            columns.append(LogoColumn(position=i + 1, total_bits=0.0, letters=()))
            continue
        nz = row[row > 0]
        entropy = float(-(nz * np.log2(nz)).sum())
        bits = max(0.0, MAX_BITS - entropy - e_n)
        if bits == 0.0:
            columns.append(LogoColumn(position=i + 1, total_bits=0.0, letters=()))
            continue
        letters = sorted(
            ((AMINO_ACIDS[j], float(row[j] * bits)) for j in range(row.size) if row[j] > 0),
            key=lambda t: (-t[1], t[0]),
        )
        columns.append(LogoColumn(position=i + 1, total_bits=bits, letters=tuple(letters)))
    return columns


def build_motif_report(group, freqs, motif, n_segments,
                       threshold: float = SAA_THRESHOLD,
                       correction: bool = True) -> MotifReport:
    """Assemble the per-position table plus logo for one group.

    motif may be None (plain clusters have no retained-column set - relations
    are left unset), one letter set for all positions, or a list of 9 sets.
    """
    saas = significant_amino_acids(freqs, threshold=threshold)
    logo = logo_columns(freqs, n_segments, correction=correction)
    if motif is None:
        motifs = [None] * WINDOW_SIZE
    elif isinstance(motif, (list, tuple)):
        if len(motif) != WINDOW_SIZE:
            raise ContractError(f"need {WINDOW_SIZE} per-position motif sets")
        motifs = [frozenset(m) for m in motif]
    else:
        motifs = [frozenset(motif)] * WINDOW_SIZE
    records = []
    for ps, m in zip(saas, motifs):
        relation = None if m is None else classify_superset(ps.saa, m)
        records.append(PositionRecord(position=ps.position, saa=ps.saa,
                                      motif=m, relation=relation))
    return MotifReport(
        group_id=str(group),
        per_position=tuple(records),
        logo=tuple(logo),
        degenerate=all(not r.saa for r in records),
    )


def report_to_dict(report: MotifReport) -> dict:
    positions = []
    for rec, logo in zip(report.per_position, report.logo):
        positions.append({
            "position": rec.position,
            "saa": "".join(sorted(rec.saa)),
            "motif": None if rec.motif is None else "".join(sorted(rec.motif)),
            "relation": rec.relation,
            "logo": {
                "total_bits": logo.total_bits,
                "letters": [[letter, height] for letter, height in logo.letters],
            },
        })
    return {
        "group_id": report.group_id,
        "degenerate": report.degenerate,
        "positions": positions,
    }


def report_from_dict(data: dict) -> MotifReport:
    records = []
    logos = []
    for p in data["positions"]:
        motif = p["motif"]
        records.append(PositionRecord(
            position=p["position"],
            saa=frozenset(p["saa"]),
            motif=None if motif is None else frozenset(motif),
            relation=p["relation"],
        ))
        logos.append(LogoColumn(
            position=p["position"],
            total_bits=p["logo"]["total_bits"],
            letters=tuple((l, h) for l, h in p["logo"]["letters"]),
        ))
    return MotifReport(
        group_id=data["group_id"],
        per_position=tuple(records),
        logo=tuple(logos),
        degenerate=data["degenerate"],
    )


def render_logo_svg(report: MotifReport, col_width: int = 60,
                    plot_height: int = 260) -> str:
    """Standalone SVG: positions 1..9 across, bits 0..log2(20) up, letters
    stacked tallest-on-top and scaled to their share of the column."""
    left, bottom, top = 46, 34, 14
    n = len(report.logo)
    width = left + n * col_width + 10
    height = top + plot_height + bottom
    y_per_bit = plot_height / MAX_BITS
    baseline = top + plot_height

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{report.group_id}</title>',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{baseline}" stroke="black"/>',
        f'<line x1="{left}" y1="{baseline}" x2="{left + n * col_width}" '
        f'y2="{baseline}" stroke="black"/>',
    ]
    for b in range(int(MAX_BITS) + 1):
        y = baseline - b * y_per_bit
        parts.append(f'<line x1="{left - 4}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" '
                     f'stroke="black"/>')
        parts.append(f'<text x="{left - 8}" y="{y + 4:.1f}" font-size="11" '
                     f'text-anchor="end" font-family="monospace">{b}</text>')
    parts.append(f'<text x="{left - 34}" y="{top + plot_height / 2:.1f}" font-size="12" '
                 f'font-family="monospace" transform="rotate(-90 {left - 34} '
                 f'{top + plot_height / 2:.1f})" text-anchor="middle">bits</text>')

    for i, col in enumerate(report.logo):
        x0 = left + i * col_width
        cx = x0 + col_width / 2
        parts.append(f'<text x="{cx:.1f}" y="{baseline + 16}" font-size="12" '
                     f'text-anchor="middle" font-family="monospace">{col.position}</text>')
        y = baseline
        # stack ascending so the tallest letter ends up on top
        for letter, bits in sorted(col.letters, key=lambda t: (t[1], t[0])):
            h = bits * y_per_bit
            if h <= 0:
                continue
            y -= h
            scale = h / 18.0
            parts.append(
                f'<text x="0" y="0" font-size="18" font-family="monospace" '
                f'text-anchor="middle" '
                f'transform="translate({cx:.2f} {y + h:.2f}) scale(2.2 {scale:.4f})"'
                f'>{letter}</text>'
            )
    parts.append('</svg>')
    return "\n".join(parts)
