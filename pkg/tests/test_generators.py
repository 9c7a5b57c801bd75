import pytest

from busout.fileformat import render_instance
from busout.generators import (
    PartitionResult,
    ThreePartitionInstance,
    TooLargeError,
    duplicate_capacity,
    fuzz_instance,
    gen_reduction_121,
    gen_reduction_ind,
    gen_reduction_s21,
    oracle_3partition,
)
from busout.model import (
    BusLabel,
    ClassParams,
    Configuration,
    CongestionGraph,
    PassengerQueue,
    SpotState,
    check_eligibility,
    free_buses,
)
from busout.solver import Verdict, solve

from helpers import brute_solvable, subset_partition_exists


# -- the exhaustive partition oracle ---------------------------------------------

def test_oracle_trivial_symmetric_yes():
    result = oracle_3partition(ThreePartitionInstance.of((3, 3, 3, 3, 3, 3)))
    assert result == PartitionResult(True, ((3, 3, 3), (3, 3, 3)))


def test_oracle_no_instance():
    assert not oracle_3partition(ThreePartitionInstance.of((1, 1, 1, 1, 1, 5))).found


def test_oracle_direct_sum_yes():
    result = oracle_3partition(ThreePartitionInstance.of((2, 3, 4, 2, 3, 4)))
    assert result.found
    assert result.triples is not None


def test_oracle_certificates_actually_partition():
    for elements in ((1, 2, 3, 1, 2, 3), (2, 2, 2, 3, 3, 6), (4, 4, 4, 4, 4, 6)):
        inst = ThreePartitionInstance.of(elements)
        result = oracle_3partition(inst)
        if not result.found:
            continue
        flat = sorted(v for triple in result.triples for v in triple)
        assert flat == sorted(elements)
        assert all(sum(triple) == inst.target for triple in result.triples)


def test_oracle_indivisible_total_is_no():
    inst = ThreePartitionInstance.of((1, 1, 1, 1, 1, 2))  # total 7, two groups
    assert not inst.divisible
    assert not oracle_3partition(inst).found


def test_oracle_refuses_oversize_instances():
    with pytest.raises(TooLargeError):
        oracle_3partition(ThreePartitionInstance.of((1,) * 21))


def test_oracle_empty_multiset_is_vacuous_yes():
    assert oracle_3partition(ThreePartitionInstance.of(())).found


def test_instance_validation_and_strictness():
    with pytest.raises(ValueError):
        ThreePartitionInstance.of((1, 2))
    with pytest.raises(ValueError):
        ThreePartitionInstance.of((0, 1, 2))
    assert ThreePartitionInstance.of((3, 3, 3, 3, 3, 3)).strict
    assert not ThreePartitionInstance.of((2, 3, 4, 2, 3, 4)).strict
    assert not ThreePartitionInstance.of((1, 1, 1, 1, 1, 5)).strict


# -- path reductions ----------------------------------------------------------------

def test_gen_121_shape_and_size_accounting():
    inst = ThreePartitionInstance.of((3, 3, 3, 3, 3, 3))
    cfg = gen_reduction_121(inst)
    assert check_eligibility(cfg).ok
    assert len(cfg.spots) == 1
    assert len(cfg.graph) == 2 * inst.total
    assert cfg.queue.total == 2 * inst.groups * inst.target
    # one free bus per path, and it is the red end
    heads = free_buses(cfg.graph)
    assert len(heads) == 3 * inst.groups
    red = cfg.palette.index("red")
    assert all(cfg.graph.label(b).color == red for b in heads)
    assert all(cfg.graph.label(b).capacity == 1 for b, _ in cfg.graph.labels())
    # queue alternates full red and green segments
    assert cfg.queue.runs == tuple(
        [(0, inst.target), (1, inst.target)] * inst.groups
    )


def test_gen_121_greens_unlock_only_after_their_reds():
    inst = ThreePartitionInstance.of((2, 2, 2))
    cfg = gen_reduction_121(inst)
    graph = cfg.graph
    assert graph.is_free("p0r0")
    assert not graph.is_free("p0g0")
    assert graph.without("p0r0").is_free("p0r1")
    assert graph.without("p0r0").without("p0r1").is_free("p0g0")


def test_gen_121_single_group_always_solvable():
    inst = ThreePartitionInstance.of((1, 2, 3))
    assert solve(gen_reduction_121(inst)).verdict is Verdict.SOLVABLE


def test_gen_s21_spots_one_reproduces_121_byte_for_byte():
    inst = ThreePartitionInstance.of((2, 3, 4, 2, 3, 4))
    assert render_instance(gen_reduction_s21(inst, 1)) == render_instance(
        gen_reduction_121(inst)
    )


def test_gen_s21_scales_buses_and_queue():
    inst = ThreePartitionInstance.of((3, 3, 3, 3, 3, 3))
    for s in (2, 3):
        cfg = gen_reduction_s21(inst, s)
        assert check_eligibility(cfg).ok
        assert len(cfg.spots) == s
        assert len(cfg.graph) == 2 * s * inst.total
        assert cfg.queue.total == 2 * s * inst.groups * inst.target


def test_generators_reject_indivisible_targets():
    inst = ThreePartitionInstance.of((1, 1, 1, 1, 1, 2))
    with pytest.raises(ValueError):
        gen_reduction_121(inst)
    with pytest.raises(ValueError):
        gen_reduction_ind(inst, 2)


# -- capacity duplication --------------------------------------------------------------

def test_duplicate_identity():
    inst = ThreePartitionInstance.of((3, 3, 3))
    cfg = gen_reduction_121(inst)
    assert duplicate_capacity(cfg, 1) == cfg


def test_duplicate_single_bus():
    cfg = Configuration(
        CongestionGraph([("x", BusLabel(0, 1))], []),
        PassengerQueue.from_runs([(0, 1)]),
        SpotState.empty(1),
    )
    tripled = duplicate_capacity(cfg, 3)
    assert tripled.graph.label("x").capacity == 3
    assert tripled.queue.runs == ((0, 3),)
    assert check_eligibility(tripled).ok


def test_duplicate_scales_the_symmetric_instance_into_capacity_four():
    inst = ThreePartitionInstance.of((3, 3, 3, 3, 3, 3))
    base = gen_reduction_121(inst)
    scaled = duplicate_capacity(base, 4)
    assert {l.capacity for _, l in scaled.graph.labels()} == {4}
    assert scaled.queue.total == 4 * base.queue.total
    assert check_eligibility(scaled).ok
    assert solve(scaled).verdict is Verdict.SOLVABLE  # verdict unchanged


def test_duplicate_preserves_verdicts_small():
    yes = gen_reduction_121(ThreePartitionInstance.of((1, 1, 1, 1, 1, 1)))
    no = gen_reduction_121(ThreePartitionInstance.of((1, 1, 1, 1, 1, 7)))
    for cfg, expected in ((yes, True), (no, False)):
        assert brute_solvable(cfg) == expected
        for d in (2, 3):
            scaled = duplicate_capacity(cfg, d)
            assert check_eligibility(scaled).ok
            assert brute_solvable(scaled) == expected


# -- edgeless reduction ------------------------------------------------------------------

def test_gen_ind_structure_matches_the_construction():
    inst = ThreePartitionInstance.of((3, 3, 3, 3, 3, 3))
    cfg = gen_reduction_ind(inst, 2)
    assert check_eligibility(cfg).ok
    assert not cfg.graph.blocks
    assert cfg.palette == ("x0", "x1", "x2")
    labels = sorted(
        (label.color, label.capacity) for _, label in cfg.graph.labels()
    )
    assert labels == [(0, 3)] * 6 + [(1, 2)] * 2 + [(2, 1)] * 2
    assert cfg.queue.runs == ((1, 1), (0, 9), (2, 1), (1, 2), (0, 9), (2, 1), (1, 1))


def test_gen_ind_single_spot_has_no_middle_colors():
    inst = ThreePartitionInstance.of((2, 2, 2, 2, 2, 2))
    cfg = gen_reduction_ind(inst, 1)
    assert cfg.palette == ("x0", "x1")
    assert cfg.queue.runs == ((0, 6), (1, 1), (0, 6), (1, 1))
    labels = sorted((l.color, l.capacity) for _, l in cfg.graph.labels())
    assert labels == [(0, 2)] * 6 + [(1, 1)] * 2


# -- fuzzer ------------------------------------------------------------------------------

def test_fuzz_is_deterministic_per_seed():
    params = ClassParams.of(3, 4, {1, 2, 4})
    a = fuzz_instance(params, seed=99)
    b = fuzz_instance(params, seed=99)
    assert render_instance(a) == render_instance(b)
    assert render_instance(a) != render_instance(fuzz_instance(params, seed=100))


def test_fuzz_respects_shape_and_class():
    params = ClassParams.of(2, 3, {1, 2})
    for seed in range(30):
        edgeless = fuzz_instance(params, seed=seed, shape="edgeless")
        assert not edgeless.graph.blocks
        assert check_eligibility(edgeless).ok
        dag = fuzz_instance(params, seed=seed, shape="dag")
        assert dag.graph.is_acyclic
        paths = fuzz_instance(params, seed=seed, shape="paths")
        assert all(paths.graph.out_degree(b) <= 1 for b in paths.graph)
        for cfg in (edgeless, dag, paths):
            colors = {l.color for _, l in cfg.graph.labels()}
            assert len(colors) <= params.colors
            assert all(l.capacity in params.capacities for _, l in cfg.graph.labels())
            assert len(cfg.spots) == params.spots


def test_fuzz_commercial_preset_is_eligible():
    cfg = fuzz_instance(ClassParams.of(4, 8, {4, 6, 10}), seed=5)
    assert check_eligibility(cfg).ok


# -- what the path encoding really asks -------------------------------------------------

def test_path_reduction_encodes_equal_sum_grouping():
    """With the strict element-size constraint violated, the game tracks
    equal-sum groupings of ANY size, not only triples."""
    loose = ThreePartitionInstance.of((1, 1, 1, 1, 1, 5))  # {1,1,1,1,1} + {5}
    assert subset_partition_exists(loose.elements, loose.groups)
    assert not oracle_3partition(loose).found
    assert solve(gen_reduction_121(loose)).verdict is Verdict.SOLVABLE

    hopeless = ThreePartitionInstance.of((1, 1, 1, 1, 1, 7))  # 7 > T: no grouping
    assert not subset_partition_exists(hopeless.elements, hopeless.groups)
    assert solve(gen_reduction_121(hopeless)).verdict is Verdict.UNSOLVABLE


def test_equal_sum_grouping_equivalence_sweep():
    """Every multiset (strict or not) up to sum 14: the path and no-traffic
    encodings are solvable exactly when an equal-sum grouping exists."""
    from helpers import all_instances

    checked = 0
    for inst in all_instances(14):
        expected = subset_partition_exists(inst.elements, inst.groups)
        for s in (1, 2):
            got = solve(gen_reduction_s21(inst, s)).verdict is Verdict.SOLVABLE
            assert got == expected, (inst.elements, "s21", s)
            got = solve(gen_reduction_ind(inst, s)).verdict is Verdict.SOLVABLE
            assert got == expected, (inst.elements, "ind", s)
        checked += 1
    assert checked > 50
