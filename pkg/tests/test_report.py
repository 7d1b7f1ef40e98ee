import numpy as np
import pytest

from motifswarm.errors import ContractError, ValidationError
from motifswarm.metrics import StructureProfile
from motifswarm.report import (
    DEFAULT_THRESHOLDS,
    HomologyTally,
    compare_pipelines,
    profile_for_members,
    report_to_json,
    tally_homology,
    tally_to_csv,
)
from motifswarm.seqio import Corpus, SecondaryStructure, Sequence, load_sample_corpus

from helpers import planted_structure_corpus


def profile_with_similarity(s, n_segments=4):
    freqs = np.tile([s, (1 - s) / 2, (1 - s) / 2], (9, 1))
    return StructureProfile(freqs=freqs, n_segments=n_segments)


class TestTallyHomology:
    def test_hand_counts(self):
        groups = [(f"g{i}", profile_with_similarity(s))
                  for i, s in enumerate([0.72, 0.66, 0.61, 0.40])]
        assert tally_homology(groups, (0.70, 0.65, 0.60)) == [1, 2, 3]

    def test_perfect_groups_count_everywhere(self):
        groups = [(f"g{i}", profile_with_similarity(1.0)) for i in range(4)]
        assert tally_homology(groups) == [4, 4, 4]

    def test_boundary_is_inclusive(self):
        # 0.75 is exact in binary, so the mean lands exactly on the cutoff
        groups = [("g", profile_with_similarity(0.75))]
        assert tally_homology(groups, (0.75,)) == [1]

    def test_thresholds_must_descend(self):
        with pytest.raises(ContractError):
            tally_homology([], (0.60, 0.65, 0.70))

    def test_counts_grow_down_the_list(self):
        rng = np.random.default_rng(3)
        groups = [(f"g{i}", profile_with_similarity(s))
                  for i, s in enumerate(rng.uniform(0.34, 1.0, size=12))]
        counts = tally_homology(groups, (0.9, 0.7, 0.5, 0.34))
        assert counts == sorted(counts)
        assert all(c <= 12 for c in counts)


def test_profile_for_members_pure_helix():
    seqs = [Sequence("a", "A" * 18)]
    corpus = Corpus(sequences=seqs,
                    structures={"a": SecondaryStructure("a", "H" * 18)})
    from motifswarm.metrics import structure_similarity
    profile = profile_for_members(corpus, ["a"])
    assert profile.n_segments == 2
    assert structure_similarity(profile) == 1.0


def planted_corpus(seed=2024, n_per_class=10):
    rng = np.random.default_rng(seed)
    seqs, structs = planted_structure_corpus(rng, n_per_class=n_per_class)
    return Corpus(sequences=seqs, structures={s.id: s for s in structs})


class TestComparePipelines:
    def test_requires_structures(self):
        corpus = Corpus(sequences=[Sequence("a", "A" * 9)], structures=None)
        with pytest.raises(ValidationError):
            compare_pipelines(corpus)

    def test_report_shape_on_sample_corpus(self):
        rep = compare_pipelines(load_sample_corpus(), k=3, k_rows=3, k_cols=2,
                                n_particles=10, max_iter=30, seed=1)
        assert rep["config"]["seed"] == 1
        assert rep["config"]["thresholds"] == list(DEFAULT_THRESHOLDS)
        assert 1 <= len(rep["clusters"]) <= 3
        for entry in rep["clusters"]:
            assert entry["size"] == len(entry["members"])
            assert 0.0 <= entry["similarity"] <= 1.0
            assert entry["homology"] in ("Identical", "Weak", "None")
        for entry in rep["biclusters"]:
            assert entry["volume"] == entry["size"] * len(entry["amino_acids"])
            assert entry["msr"] >= 0.0
        assert len(rep["tally"]["clusters"]) == 3

    def test_tally_matches_entries(self):
        rep = compare_pipelines(load_sample_corpus(), k=4, k_rows=3, k_cols=2,
                                n_particles=10, max_iter=30, seed=5)
        for kind in ("clusters", "biclusters"):
            sims = [e["similarity"] for e in rep[kind]]
            for t, count in zip(rep["tally"]["thresholds"], rep["tally"][kind]):
                assert count == sum(1 for s in sims if s >= t)

    def test_deterministic(self):
        corpus = planted_corpus()
        a = compare_pipelines(corpus, k=3, k_rows=3, k_cols=2,
                              n_particles=10, max_iter=40, seed=7)
        b = compare_pipelines(corpus, k=3, k_rows=3, k_cols=2,
                              n_particles=10, max_iter=40, seed=7)
        assert report_to_json(a) == report_to_json(b)

    def test_single_group_degenerate(self):
        corpus = planted_corpus(n_per_class=3)
        rep = compare_pipelines(corpus, k=1, k_rows=1, k_cols=1,
                                n_particles=5, max_iter=20, seed=0)
        assert len(rep["clusters"]) == 1
        assert all(c in (0, 1) for c in rep["tally"]["clusters"])

    def test_direction_on_planted_classes(self):
        corpus = planted_corpus()
        rep = compare_pipelines(corpus, k=5, k_rows=5, k_cols=3,
                                n_particles=20, max_iter=100, seed=0)
        assert rep["tally"]["biclusters"][0] >= rep["tally"]["clusters"][0]


class TestEmitters:
    def test_csv_exact(self):
        tally = HomologyTally(thresholds=(0.70, 0.65, 0.60),
                              counts_clusters=(1, 3, 4),
                              counts_biclusters=(3, 5, 5))
        assert tally_to_csv(tally) == (
            "threshold,clusters,biclusters\n"
            "0.70,1,3\n0.65,3,5\n0.60,4,5\n"
        )

    def test_csv_accepts_dict_form(self):
        tally = {"thresholds": [0.7], "clusters": [2], "biclusters": [3]}
        assert tally_to_csv(tally) == "threshold,clusters,biclusters\n0.70,2,3\n"

    def test_json_newline_terminated_and_sorted(self):
        text = report_to_json({"b": 1, "a": 2})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
