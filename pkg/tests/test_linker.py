import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eye2vec.gaze import Fixation, GridPos, PixelPos, Recording
from eye2vec.linker import (
    LinkOptions,
    TransitionProfile,
    build_profile,
    map_fixation,
)
from eye2vec.minilang import leaves, parse
from eye2vec.pathctx import path_between
from eye2vec.simulator import Strategy, simulate
from oracles import oracle_transition_counts

SRC = "class A { int f() { count = other; other = count; } }"


@pytest.fixture(scope="module")
def root():
    return parse(SRC)


def leaf_by_text(root, text, occurrence=0):
    found = [l for l in leaves(root) if l.text == text]
    return found[occurrence]


def fixation_at(leaf, t=0, col_offset=0):
    span = leaf.span
    col = (span.start_col + span.end_col) // 2 + col_offset
    return Fixation(t, 200, GridPos(span.start_line, col))


def recording_over(leaves_sequence):
    fixations = [fixation_at(leaf, t=250 * i) for i, leaf in enumerate(leaves_sequence)]
    return Recording("test", fixations)


class TestMapFixation:
    def test_hit_inside_span(self, root):
        count = leaf_by_text(root, "count")
        span = count.span
        mapped = map_fixation(Fixation(0, 100, GridPos(span.start_line, span.start_col + 1)), root)
        assert mapped.mapping == "hit"
        assert mapped.leaf is count

    def test_snap_to_nearest_on_line(self, root):
        count = leaf_by_text(root, "count")
        span = count.span
        mapped = map_fixation(
            Fixation(0, 100, GridPos(span.start_line, span.end_col + 2)), root, snap_tol_cols=3
        )
        assert mapped.mapping == "snapped"
        assert mapped.snap_distance_cols == 2

    def test_drop_on_blank_line(self, root):
        mapped = map_fixation(Fixation(0, 100, GridPos(50, 1)), root, snap_tol_cols=0)
        assert mapped.mapping == "dropped"
        assert mapped.drop_reason == "no-leaf"
        assert mapped.leaf is None

    def test_snap_tolerance_exceeded(self, root):
        count = leaf_by_text(root, "count")
        span = count.span
        far_col = span.end_col + 50
        mapped = map_fixation(Fixation(0, 100, GridPos(span.start_line, far_col)), root, 3)
        assert mapped.mapping == "dropped"

    def test_snap_tie_prefers_smaller_start_col(self):
        # "a" at col 21 and "b" at col 25; col 23 is 2 away from both
        root = parse("class A { int f() { a = b; } }")
        mapped = map_fixation(Fixation(0, 100, GridPos(1, 23)), root, snap_tol_cols=3)
        assert mapped.mapping == "snapped"
        assert mapped.leaf.text == "a"

    def test_pixel_fixation_rejected(self, root):
        with pytest.raises(TypeError):
            map_fixation(Fixation(0, 100, PixelPos(1, 1)), root)


class TestBuildProfile:
    def test_alternating_counts_and_ratios(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        profile = build_profile(recording_over([a, b, a, b]), root)
        ab = path_between(root, a, b)
        ba = path_between(root, b, a)
        assert profile.total_transitions == 3
        assert profile.entries[ab].count == 2
        assert profile.entries[ba].count == 1
        assert profile.entries[ab].ratio == pytest.approx(2 / 3, abs=1e-12)
        assert profile.entries[ba].ratio == pytest.approx(1 / 3, abs=1e-12)

    def test_self_transition_dropped_without_breaking_chain(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        profile = build_profile(recording_over([a, a, b]), root)
        ab = path_between(root, a, b)
        assert profile.total_transitions == 1
        assert profile.entries[ab].count == 1
        assert profile.entries[ab].ratio == 1.0

    def test_self_transition_kept_mode(self, root):
        a = leaf_by_text(root, "count")
        options = LinkOptions(self_transitions="keep")
        profile = build_profile(recording_over([a, a]), root, options)
        assert profile.total_transitions == 1
        (ctx,) = profile.entries
        assert ctx.source_text == ctx.target_text == "count"
        assert ctx.path_encoding == a.parent.label

    def test_duplicating_fixations_preserves_ratios(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        c = leaf_by_text(root, "count", occurrence=1)
        sequence = [a, b, c, a, b]
        base = build_profile(recording_over(sequence), root)
        doubled_sequence = [leaf for leaf in sequence for _ in range(2)]
        doubled = build_profile(recording_over(doubled_sequence), root)
        assert base.total_transitions == doubled.total_transitions
        assert {k: v.ratio for k, v in base.entries.items()} == {
            k: v.ratio for k, v in doubled.entries.items()
        }

    def test_direction_sensitivity(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        forward = build_profile(recording_over([a, b]), root)
        backward = build_profile(recording_over([b, a]), root)
        assert set(forward.entries) != set(backward.entries)

    def test_chain_skip_spans_dropped_fixations(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        blank = Fixation(250, 200, GridPos(50, 1))
        fixations = [fixation_at(a, 0), blank, fixation_at(b, 500)]
        profile = build_profile(Recording("r", fixations), root, LinkOptions(chain="skip"))
        assert profile.total_transitions == 1

    def test_chain_strict_breaks_at_drop(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        blank = Fixation(250, 200, GridPos(50, 1))
        fixations = [fixation_at(a, 0), blank, fixation_at(b, 500)]
        profile = build_profile(Recording("r", fixations), root, LinkOptions(chain="strict"))
        assert profile.total_transitions == 0
        assert profile.is_empty

    def test_empty_profile_is_data_not_error(self, root):
        profile = build_profile(Recording("empty"), root)
        assert profile.is_empty
        assert profile.entries == {}
        assert json.loads(profile.to_json())["total_transitions"] == 0

    def test_snapped_fixations_contribute(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        fixations = [fixation_at(a, 0, col_offset=0), fixation_at(b, 250, col_offset=3)]
        profile = build_profile(Recording("r", fixations), root, LinkOptions(snap_tol_cols=3))
        assert profile.total_transitions == 1


class TestProfileInvariants:
    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_ratios_sum_to_one_and_counts_conserve(self, seed, accumulator_root):
        strategy = Strategy("linear" if seed % 2 else "defuse", jitter_cols=seed % 4, seed=seed)
        recording = simulate(accumulator_root, strategy, 30)
        options = LinkOptions(
            snap_tol_cols=seed % 5,
            self_transitions="keep" if seed % 3 == 0 else "drop",
            chain="strict" if seed % 7 == 0 else "skip",
        )
        profile = build_profile(recording, accumulator_root, options)
        if profile.total_transitions:
            assert abs(sum(e.ratio for e in profile.entries.values()) - 1) < 1e-9
        oracle_counts, oracle_total = oracle_transition_counts(
            recording, accumulator_root, options
        )
        assert profile.total_transitions == oracle_total
        assert {c.context_string: e.count for c, e in profile.entries.items()} == oracle_counts

    def test_invalid_profile_construction_rejected(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        ctx = path_between(root, a, b)
        from eye2vec.linker import ProfileEntry

        with pytest.raises(ValueError):
            TransitionProfile("r", {ctx: ProfileEntry(2, 1.0)}, 3)
        with pytest.raises(ValueError):
            TransitionProfile("r", {ctx: ProfileEntry(2, 0.5)}, 2)


class TestProfileJson:
    def test_schema_and_ordering(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        profile = build_profile(recording_over([a, b, a, b]), root)
        data = json.loads(profile.to_json())
        assert set(data) == {"recording_id", "total_transitions", "entries"}
        assert data["recording_id"] == "test"
        assert data["total_transitions"] == 3
        counts = [entry["count"] for entry in data["entries"]]
        assert counts == sorted(counts, reverse=True)
        for entry in data["entries"]:
            assert set(entry) == {"context", "hash", "count", "ratio"}
            assert isinstance(entry["hash"], str) and entry["hash"].isdigit()

    def test_tie_broken_by_context_string(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        profile = build_profile(recording_over([a, b, a]), root)
        data = json.loads(profile.to_json())
        contexts = [entry["context"] for entry in data["entries"]]
        assert contexts == sorted(contexts)

    def test_content_hash_ignores_insertion_order(self, root):
        a = leaf_by_text(root, "count")
        b = leaf_by_text(root, "other")
        ab = path_between(root, a, b)
        ba = path_between(root, b, a)
        first = TransitionProfile.from_counts("r", {ab: 2, ba: 1})
        second = TransitionProfile.from_counts("r", {ba: 1, ab: 2})
        assert first.content_hash() == second.content_hash()
        different = TransitionProfile.from_counts("r", {ab: 1, ba: 2})
        assert first.content_hash() != different.content_hash()
