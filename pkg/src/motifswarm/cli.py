"""Command-line surface: prepare, cluster, bicluster, motifs, compare.

Configuration comes from built-in defaults, then an optional JSON config
file, then flags, each layer overriding the last. Every artifact embeds the
resolved config, the seed and the package version, and contains no
timestamps, so reruns with identical inputs are byte-identical.

Exit codes: 1 contract violation, 2 unreadable/malformed input, 3 invalid
content, 64 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__, featurize
from .errors import ContractError, InputError, ValidationError
from .kmeans import kmeans_run
from .motif import build_motif_report, position_frequencies, render_logo_svg, report_to_dict
from .pso import PsoConfig
from .psobiclust import default_lambda, pso_bicluster, seed_biclusters
from .psokmeans import pso_kmeans
from .report import DEFAULT_THRESHOLDS, compare_pipelines, report_to_json, tally_to_csv
from .seqio import AMINO_ACIDS, Corpus, load_corpus, load_sample_corpus

VERSION = f"motifswarm-v{__version__}"

EXIT_OK = 0
EXIT_CONTRACT = 1
EXIT_INPUT = 2
EXIT_VALIDATION = 3
EXIT_USAGE = 64


@dataclass
class RunConfig:
    """Resolved settings for one command invocation."""

    sequences: str | None = None
    structures: str | None = None
    sample_corpus: bool = False
    out: str = "out"
    window_size: int = featurize.WINDOW_SIZE
    window_scheme: str = "chunked"
    normalization: str = "mean"
    engine: str = "pso-kmeans"
    k: int = 5
    k_rows: int = 5
    k_cols: int = 3
    n_particles: int = 20
    max_iter: int = 100
    w: float = 0.72
    c1: float = 1.49
    c2: float = 1.49
    lam: float | None = None
    saa_threshold: float = 0.07
    thresholds: tuple = DEFAULT_THRESHOLDS
    logo_correction: bool = True
    seed: int = 0
    trace: str | None = None
    biclusters: str | None = None

    def echo(self) -> dict:
        data = dataclasses.asdict(self)
        data["thresholds"] = list(self.thresholds)
        return data


def build_config(args: argparse.Namespace) -> RunConfig:
    """Layer built-in defaults, then the config file, then explicit flags."""
    merged = dataclasses.asdict(RunConfig())
    if getattr(args, "config", None):
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read config file: {exc}") from exc
        try:
            file_cfg = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise InputError("config file must hold a single JSON object")
        for key, value in file_cfg.items():
            if key not in merged:
                raise InputError(f"unknown config key {key!r}")
            merged[key] = value
    for key in merged:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if isinstance(merged["thresholds"], str):
        try:
            merged["thresholds"] = [float(t) for t in merged["thresholds"].split(",")]
        except ValueError as exc:
            raise InputError(f"bad thresholds value: {exc}") from exc
    merged["thresholds"] = tuple(merged["thresholds"])
    return RunConfig(**merged)


def _load_corpus(cfg: RunConfig) -> Corpus:
    if cfg.sample_corpus:
        return load_sample_corpus()
    if cfg.sequences is None:
        raise InputError("no input corpus: pass --sequences FILE or --sample-corpus")
    return load_corpus(cfg.sequences, cfg.structures)


def _swarm_config(cfg: RunConfig, seed: int) -> PsoConfig:
    return PsoConfig(n_particles=cfg.n_particles, max_iter=cfg.max_iter,
                     w=cfg.w, c1=cfg.c1, c2=cfg.c2, seed=seed)


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    print(f"wrote {path}")


def _write_json(path: Path, payload: dict) -> None:
    _write_text(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _csv_cell(value) -> str:
    return repr(float(value)) if isinstance(value, float) else str(value)


def _csv(header: list, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_csv_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_prepare(cfg: RunConfig) -> None:
    """Write the frequency windows, the normalized matrix and a manifest."""
    corpus = _load_corpus(cfg)
    windows = featurize.build_cluster_dataset(
        corpus.sequences, cfg.window_size, cfg.window_scheme)
    matrix = featurize.build_bicluster_matrix(
        corpus.sequences, cfg.normalization, cfg.window_size, cfg.window_scheme)
    out = Path(cfg.out)

    letters = list(AMINO_ACIDS)
    window_rows = [
        [w.sequence_id, i + 1, *w.counts[i]]
        for w in windows
        for i in range(w.counts.shape[0])
    ]
    _write_text(out / "windows.csv",
                _csv(["sequence_id", "position", *letters], window_rows))
    matrix_rows = [
        [seq.id, *(float(v) for v in matrix[r])]
        for r, seq in enumerate(corpus.sequences)
    ]
    _write_text(out / "matrix.csv", _csv(["sequence_id", *letters], matrix_rows))
    _write_json(out / "manifest.json", {
        "config": cfg.echo(),
        "version": VERSION,
        "seed": cfg.seed,
        "n_sequences": len(corpus.sequences),
        "n_windows": len(windows),
        "window_shape": list(windows[0].counts.shape),
        "matrix_shape": list(matrix.shape),
        "has_structures": corpus.structures is not None,
        "outputs": ["windows.csv", "matrix.csv"],
    })


def _cluster_entries(corpus: Corpus, cs) -> list:
    from .report import profile_for_members
    from .metrics import homology_class, structure_similarity

    ids = [s.id for s in corpus.sequences]
    entries = []
    for c in range(cs.k):
        members = [ids[i] for i in cs.members(c)]
        entry = {"id": f"cluster-{c:02d}", "members": members, "size": len(members)}
        if corpus.structures is not None and members:
            sim = structure_similarity(profile_for_members(corpus, members))
            entry["similarity"] = sim
            entry["homology"] = homology_class(sim)
        entries.append(entry)
    return entries


def cmd_cluster(cfg: RunConfig) -> None:
    """Cluster the frequency windows and write the grouping report."""
    corpus = _load_corpus(cfg)
    windows = featurize.build_cluster_dataset(
        corpus.sequences, cfg.window_size, cfg.window_scheme)
    if cfg.engine == "kmeans":
        cs = kmeans_run(windows, cfg.k, max_iter=cfg.max_iter, seed=cfg.seed)
    elif cfg.engine == "pso-kmeans":
        cs = pso_kmeans(windows, cfg.k, _swarm_config(cfg, cfg.seed))
    else:
        raise ContractError(f"unknown engine {cfg.engine!r}")
    out = Path(cfg.out)
    _write_json(out / "clusters.json", {
        "config": cfg.echo(),
        "version": VERSION,
        "seed": cfg.seed,
        "engine": cfg.engine,
        "fitness": float(cs.final_fitness),
        "iterations_run": cs.iterations_run,
        "converged": cs.converged,
        "clusters": _cluster_entries(corpus, cs),
    })
    if cfg.trace:
        rows = [[i, float(f)] for i, f in enumerate(cs.trace)]
        _write_text(Path(cfg.trace), _csv(["iteration", "fitness"], rows))


def _run_biclusters(cfg: RunConfig, corpus: Corpus):
    """Seed-then-refine biclustering; returns (entries, resolved lambda)."""
    matrix = featurize.build_bicluster_matrix(
        corpus.sequences, cfg.normalization, cfg.window_size, cfg.window_scheme)
    lam = cfg.lam if cfg.lam is not None else default_lambda(matrix)
    seeds = seed_biclusters(matrix, cfg.k_rows, cfg.k_cols,
                            _swarm_config(cfg, cfg.seed))
    refine_cfg = PsoConfig(n_particles=max(len(seeds), cfg.n_particles),
                           max_iter=cfg.max_iter, w=cfg.w, c1=cfg.c1, c2=cfg.c2,
                           seed=cfg.seed + 2)
    bics = pso_bicluster(matrix, refine_cfg, seeds, lam=lam)
    ids = [s.id for s in corpus.sequences]
    entries = [
        {
            "id": f"bicluster-{b:02d}",
            "rows": [ids[i] for i in bic.rows],
            "cols": "".join(AMINO_ACIDS[c] for c in bic.cols),
            "size": len(bic.rows),
            "msr": bic.msr,
            "volume": bic.volume,
        }
        for b, bic in enumerate(bics)
    ]
    return entries, lam


def cmd_bicluster(cfg: RunConfig) -> None:
    """Bicluster the normalized matrix and write the group report."""
    corpus = _load_corpus(cfg)
    entries, lam = _run_biclusters(cfg, corpus)
    _write_json(Path(cfg.out) / "biclusters.json", {
        "config": cfg.echo(),
        "version": VERSION,
        "seed": cfg.seed,
        "lambda": lam,
        "biclusters": entries,
    })


def _load_bicluster_groups(path: str, corpus: Corpus) -> list:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"bicluster report is not valid JSON: {exc}") from exc
    entries = data.get("biclusters") if isinstance(data, dict) else None
    if not isinstance(entries, list):
        raise InputError(f"{path} does not look like a bicluster report")
    known = {s.id for s in corpus.sequences}
    for entry in entries:
        unknown = [r for r in entry["rows"] if r not in known]
        if unknown:
            raise ValidationError(
                f"bicluster {entry['id']} references unknown sequence ids: "
                f"{', '.join(unknown[:5])}")
    return entries


def cmd_motifs(cfg: RunConfig) -> None:
    """Write per-group SAA/motif reports and sequence logos.

    Groups come from an existing bicluster report when --biclusters is given,
    otherwise the biclustering stage runs first with this same config.
    """
    corpus = _load_corpus(cfg)
    if cfg.biclusters:
        entries = _load_bicluster_groups(cfg.biclusters, corpus)
    else:
        entries, _ = _run_biclusters(cfg, corpus)
    windows = {
        w.sequence_id: w
        for w in featurize.build_cluster_dataset(
            corpus.sequences, cfg.window_size, cfg.window_scheme)
    }
    out = Path(cfg.out) / "motifs"
    group_ids = []
    for entry in entries:
        members = [windows[r] for r in entry["rows"]]
        freqs = position_frequencies(members)
        # every window block fills position 0, so its count is the block count
        n_segments = int(sum(w.counts[0].sum() for w in members))
        report = build_motif_report(
            entry["id"], freqs, frozenset(entry["cols"]), n_segments,
            threshold=cfg.saa_threshold, correction=cfg.logo_correction)
        _write_json(out / f"{entry['id']}.json", {
            "config": cfg.echo(),
            "version": VERSION,
            "seed": cfg.seed,
            "report": report_to_dict(report),
        })
        blurb = f"<!-- {VERSION} seed={cfg.seed} group={entry['id']} -->\n"
        _write_text(out / f"{entry['id']}.svg", blurb + render_logo_svg(report))
        group_ids.append(entry["id"])
    _write_json(out / "motifs.json", {
        "config": cfg.echo(),
        "version": VERSION,
        "seed": cfg.seed,
        "groups": group_ids,
    })


def cmd_compare(cfg: RunConfig) -> None:
    """Run both pipelines and write the side-by-side homology tally."""
    corpus = _load_corpus(cfg)
    report = compare_pipelines(
        corpus, k=cfg.k, k_rows=cfg.k_rows, k_cols=cfg.k_cols,
        n_particles=cfg.n_particles, max_iter=cfg.max_iter, seed=cfg.seed,
        lam=cfg.lam, thresholds=cfg.thresholds, normalization=cfg.normalization)
    report["version"] = VERSION
    out = Path(cfg.out)
    _write_text(out / "compare.json", report_to_json(report))
    _write_text(out / "tally.csv", tally_to_csv(report["tally"]))


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here says 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_io_flags(p) -> None:
    p.add_argument("--config", metavar="FILE",
                   help="JSON config file; explicit flags override it")
    p.add_argument("--sequences", metavar="FASTA", help="input sequence file")
    p.add_argument("--structures", metavar="FILE",
                   help="secondary-structure annotations paired by id")
    p.add_argument("--sample-corpus", action="store_const", const=True,
                   default=None, help="use the bundled sample corpus")
    p.add_argument("--out", metavar="DIR", help="output directory (default: out)")
    p.add_argument("--seed", type=int, help="RNG seed recorded in every output")
    p.add_argument("--window-size", type=int)
    p.add_argument("--window-scheme", choices=featurize.WINDOW_SCHEMES)
    p.add_argument("--normalization", choices=featurize.NORMALIZATION_METHODS)


def _add_swarm_flags(p) -> None:
    p.add_argument("--n-particles", type=int)
    p.add_argument("--max-iter", type=int)
    p.add_argument("--w", type=float, help="inertia weight")
    p.add_argument("--c1", type=float, help="cognitive acceleration")
    p.add_argument("--c2", type=float, help="social acceleration")


def _add_bicluster_flags(p) -> None:
    p.add_argument("--k-rows", type=int, help="row clusters used for seeding")
    p.add_argument("--k-cols", type=int, help="column clusters used for seeding")
    p.add_argument("--lambda", dest="lam", type=float,
                   help="volume reward weight (default: 0.1 x full-matrix MSR)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="motifswarm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("prepare", help="emit frequency windows and the "
                       "normalized matrix as CSV plus a manifest")
    _add_io_flags(p)
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("cluster", help="group sequences by their windows")
    _add_io_flags(p)
    _add_swarm_flags(p)
    p.add_argument("--engine", choices=("kmeans", "pso-kmeans"))
    p.add_argument("--k", type=int, help="number of clusters")
    p.add_argument("--trace", metavar="CSV",
                   help="also write the per-iteration fitness trace")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("bicluster", help="select coherent sequence/amino-acid "
                       "submatrices")
    _add_io_flags(p)
    _add_swarm_flags(p)
    _add_bicluster_flags(p)
    p.set_defaults(func=cmd_bicluster)

    p = sub.add_parser("motifs", help="emit SAA/motif reports and logos per group")
    _add_io_flags(p)
    _add_swarm_flags(p)
    _add_bicluster_flags(p)
    p.add_argument("--biclusters", metavar="JSON",
                   help="reuse an existing bicluster report instead of rerunning")
    p.add_argument("--saa-threshold", type=float,
                   help="positional frequency cutoff (default: 0.07)")
    p.add_argument("--no-logo-correction", dest="logo_correction",
                   action="store_const", const=False, default=None,
                   help="skip the small-sample information correction")
    p.set_defaults(func=cmd_motifs)

    p = sub.add_parser("compare", help="tally structure homology of clusters "
                       "vs biclusters")
    _add_io_flags(p)
    _add_swarm_flags(p)
    _add_bicluster_flags(p)
    p.add_argument("--k", type=int, help="number of clusters")
    p.add_argument("--thresholds", help="comma-separated descending cutoffs")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        args.func(cfg)
    except ContractError as exc:
        print(f"motifswarm: contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except ValidationError as exc:
        print(f"motifswarm: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InputError as exc:
        print(f"motifswarm: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"motifswarm: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
