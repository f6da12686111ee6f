import pytest
from hypothesis import given, strategies as st

from ifdea.dataio import MISSING, Bounds, Dataset, ImputationPolicy
from ifdea.ifn import TIFN, tifn_new
from ifdea.imputation import (
    ColumnStats,
    ImputationError,
    column_stats,
    crisp_impute,
    dataset_stats,
    impute_missing_tifn,
    normalize_columns,
    prepare_dataset,
)

I1 = ColumnStats(21.88, 3105.55, 15086.61)
PAPER_CELLS = {"Jammu & Kashmir": 5693.586, "Nagaland": 5381.461, "Sikkim": 5543.836}


def test_column_stats_table_footer(police_raw):
    stats = dataset_stats(police_raw)
    assert stats["I1"] == I1
    expected = {
        "I2": (333, 45316, 285540),
        "I3": (4.93, 10.25, 25.94),
        "O1": (158, 69633.5, 737853),
        "O2": (28, 59933, 826524),
        "O3": (19, 36188, 653970),
    }
    for name, (lo, med, hi) in expected.items():
        assert (stats[name].minimum, stats[name].median, stats[name].maximum) == pytest.approx((lo, med, hi))


def test_even_count_median():
    assert column_stats([44570, 1, 46062, 10**6]).median == (44570 + 46062) / 2
    assert column_stats([7]) == ColumnStats(7, 7, 7)
    with pytest.raises(ImputationError):
        column_stats([])


def test_impute_missing_tifn_paper_cells():
    assert impute_missing_tifn(I1, Bounds(18, 18000)) == tifn_new(21.88, 3105.55, 15086.61, 18, 18000)
    assert impute_missing_tifn(I1, Bounds(21, 15500)) == tifn_new(21.88, 3105.55, 15086.61, 21, 15500)
    assert impute_missing_tifn(ColumnStats(3, 3, 3), Bounds(3, 3)) == tifn_new(3, 3, 3, 3, 3)


def test_impute_bound_violation_names_cell():
    with pytest.raises(ImputationError, match="I1@Goa"):
        impute_missing_tifn(I1, Bounds(22, 18000), "I1@Goa")
    with pytest.raises(ImputationError, match="maximum"):
        impute_missing_tifn(I1, Bounds(18, 15000))


def test_crisp_impute_paper_values():
    assert crisp_impute(tifn_new(21.88, 3105.55, 15086.61, 18, 18000)) == pytest.approx(5693.586, abs=1e-3)
    assert crisp_impute(tifn_new(21.88, 3105.55, 15086.61, 20, 16800)) == pytest.approx(5543.836, abs=1e-3)
    assert crisp_impute(tifn_new(4, 4, 4, 4, 4)) == 4


@given(st.floats(0, 21.88), st.floats(15086.61, 1e6), st.floats(0.01, 1e4))
def test_crisp_impute_monotone_in_upper(lower, upper, raise_by):
    a = crisp_impute(impute_missing_tifn(I1, Bounds(lower, upper)))
    b = crisp_impute(impute_missing_tifn(I1, Bounds(lower, upper + raise_by)))
    assert b > a
    assert b - a == pytest.approx(raise_by / 8)


def test_prepare_fif(police_raw, paper_config):
    ds = prepare_dataset(police_raw, paper_config.policy, "fif")
    fuzzy = [
        (name, rec.name)
        for rec in ds.records
        for name, v in zip(ds.input_names + ds.output_names, rec.inputs + rec.outputs)
        if not v.is_degenerate
    ]
    assert fuzzy == [("I1", "Jammu & Kashmir"), ("I1", "Nagaland"), ("I1", "Sikkim")]
    cell = ds.records[9].inputs[0]
    assert (cell.mem_lower, cell.mode, cell.mem_upper) == (21.88, 3105.55, 15086.61)
    assert ds.records[0].inputs[0] == tifn_new(3973.34, 3973.34, 3973.34, 3973.34, 3973.34)


def test_prepare_crisp(police_raw, paper_config):
    ds = prepare_dataset(police_raw, paper_config.policy, "crisp")
    assert ds.is_crisp
    got = {rec.name: rec.inputs[0] for rec in ds.records if rec.name in PAPER_CELLS}
    for name, value in PAPER_CELLS.items():
        assert got[name] == pytest.approx(value, abs=1e-3)
    assert ds.records[0] == police_raw.records[0]


def test_prepare_uncovered_cells(police_raw):
    policy = ImputationPolicy({("I1", "Nagaland"): Bounds(21, 15500)})
    with pytest.raises(ImputationError, match="I1@Jammu & Kashmir, I1@Sikkim"):
        prepare_dataset(police_raw, policy, "crisp")


def test_prepare_idempotent_without_missing(police_raw, paper_config):
    crisp = prepare_dataset(police_raw, paper_config.policy, "crisp")
    assert prepare_dataset(crisp, ImputationPolicy(), "crisp") == crisp
    fif = prepare_dataset(police_raw, paper_config.policy, "fif")
    assert prepare_dataset(fif, ImputationPolicy(), "fif") == fif


def test_missing_output_imputed_like_inputs():
    ds = Dataset.from_arrays([[1.0], [2.0], [3.0]], [[5.0], [MISSING], [9.0]], names=["a", "b", "c"])
    out = prepare_dataset(ds, ImputationPolicy({("O1", "b"): Bounds(4, 10)}), "fif")
    assert out.records[1].outputs[0] == tifn_new(5, 7, 9, 4, 10)


def test_membership_support_is_observed_range(police_raw, paper_config):
    ds = prepare_dataset(police_raw, paper_config.policy, "fif")
    for name in PAPER_CELLS:
        cell = next(r for r in ds.records if r.name == name).inputs[0]
        assert isinstance(cell, TIFN)
        assert (cell.mem_lower, cell.mode, cell.mem_upper) == (I1.minimum, I1.median, I1.maximum)


def test_normalize_columns():
    ds = Dataset.from_arrays([[2.0], [4.0]], [[tifn_new(1, 2, 3, 0.5, 8)], [4.0]])
    out = normalize_columns(ds)
    assert out.records[0].inputs == (0.5,)
    assert out.records[0].outputs[0] == tifn_new(1 / 8, 2 / 8, 3 / 8, 0.5 / 8, 1.0)
