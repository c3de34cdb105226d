import numpy as np
import pytest

from qalpha.enhance_freq import enhance_qdft
from qalpha.measures import ceme_rgb
from qalpha.pipeline import (LABELS, AlphaGrid, ComparisonConfig, MeasureConfig, best_of, compare,
                             format_table, read_sweep_csv, rows_to_csv, run_comparison,
                             sweep_dft_channelwise, sweep_qdft, sweep_to_csv)
from qalpha.qimage import RgbImage, load_image


def test_default_grid():
    vals = AlphaGrid().values()
    assert len(vals) == 21
    assert vals[0] == 0.8 and vals[-1] == 1.0 and 0.94 in vals


def test_grid_validation():
    assert AlphaGrid(0.9, 0.9).values() == [0.9]
    for bad in [dict(alpha_min=0.0), dict(alpha_max=1.1), dict(step=0.0),
                dict(alpha_min=0.95, alpha_max=0.9)]:
        with pytest.raises(ValueError):
            AlphaGrid(**bad)


def test_best_of_tie_breaks_to_larger_alpha():
    r = best_of([0.8, 0.9, 1.0], [3.0, 5.0, 5.0])
    assert r.best_alpha == 1.0 and r.best_value == 5.0
    r = best_of([0.8, 0.9, 1.0], [5.0, 5.0, 1.0])
    assert r.best_alpha == 0.9
    with pytest.raises(ValueError):
        best_of([], [])


def test_single_point_sweep(random_rgb):
    img = random_rgb(16, 16)
    r = sweep_qdft(img, AlphaGrid(1.0, 1.0))
    assert r.alphas == [1.0] and r.best_alpha == 1.0
    ident = enhance_qdft(img, 1.0)
    assert r.best_value == ceme_rgb(ident.rgb.data).value
    assert r.best_value == pytest.approx(ceme_rgb(img.data).value, abs=1e-9)


def test_sweep_best_is_max(random_rgb):
    img = random_rgb(24, 16)
    r = sweep_qdft(img, AlphaGrid(0.85, 1.0, 0.05))
    assert r.best_value == max(r.values)
    assert all(r.best_value >= v for v in r.values)
    for s in sweep_dft_channelwise(img, AlphaGrid(0.85, 1.0, 0.05)):
        assert s.best_value == max(s.values)


def test_sweep_cache_matches_recompute(random_rgb):
    img = random_rgb(16, 16)
    r = sweep_qdft(img, AlphaGrid(0.9, 1.0, 0.05))
    m = MeasureConfig()
    direct = [m.ceme(enhance_qdft(img, a).rgb.data) for a in r.alphas]
    assert direct == r.values


def test_constant_channel_ties_to_one(rng):
    data = rng.integers(0, 256, size=(16, 16, 3)).astype(float)
    data[..., 1] = 77.0
    sweeps = sweep_dft_channelwise(RgbImage(data), AlphaGrid(0.8, 1.0, 0.05))
    assert sweeps[1].values == [0.0] * 5
    assert sweeps[1].best_alpha == 1.0


def test_scalar_plane_option(random_rgb):
    img = random_rgb(16, 16)
    plain = sweep_qdft(img, AlphaGrid(0.9, 0.9))
    with_scalar = sweep_qdft(img, AlphaGrid(0.9, 0.9), MeasureConfig(scalar_plane=True))
    out = enhance_qdft(img, 0.9)
    assert with_scalar.best_value == ceme_rgb(out.rgb.data, out.scalar).value
    assert plain.best_value == ceme_rgb(out.rgb.data).value


def test_identity_comparison_rows_equal(random_rgb):
    img = random_rgb(32, 24)
    cfg = ComparisonConfig(hist_eq=False, qdft_alpha=1.0, dft_alphas=(1.0, 1.0, 1.0))
    rows = run_comparison(img, cfg)
    assert [r.label for r in rows] == list(LABELS)
    ref = rows[0].ceme
    for r in rows:
        assert r.ceme == pytest.approx(ref, abs=1e-6)


def test_comparison_is_deterministic(random_rgb):
    img = random_rgb(32, 32)
    cfg = ComparisonConfig(grid=AlphaGrid(0.9, 1.0, 0.05))
    a, b = run_comparison(img, cfg), run_comparison(img, cfg)
    assert rows_to_csv(a) == rows_to_csv(b)


def test_comparison_on_photo(data_dir):
    img = load_image(data_dir / "coffee.png")
    result = compare(img)
    rows = result.rows
    orig, q, q_he, d, d_he = (r.ceme for r in rows)
    assert orig < q < q_he
    assert d < d_he
    assert rows[1].alphas == (result.qdft_sweep.best_alpha,)
    assert rows[3].alphas == tuple(s.best_alpha for s in result.dft_sweeps)
    assert 0.85 <= result.qdft_sweep.best_alpha < 1.0
    assert len(rows[0].emes) == 3 and len(rows[3].emes) == 3
    assert all(0 < e < 60 for e in rows[0].emes)
    text = format_table(rows)
    assert text.count("\n") == 7 and "2-D QDFT Alpha-Rooting" in text


def test_csv_round_trip(random_rgb):
    img = random_rgb(16, 16)
    r = sweep_qdft(img, AlphaGrid(0.9, 1.0, 0.02))
    text = sweep_to_csv(r)
    assert text.splitlines()[0] == "alpha,value"
    back = read_sweep_csv(text)
    assert back.best_alpha == r.best_alpha and back.values == r.values
    rs = sweep_dft_channelwise(img, AlphaGrid(0.9, 1.0, 0.02))
    text = sweep_to_csv(rs)
    assert text.splitlines()[0] == "alpha,eme_r,eme_g,eme_b"
    assert [s.best_alpha for s in read_sweep_csv(text)] == [s.best_alpha for s in rs]
    assert "\r" not in text


def test_rows_csv_layout():
    from qalpha.pipeline import ComparisonRow
    rows = [ComparisonRow("Original Image", 10.0, (), (1.0, 2.0, 3.0)),
            ComparisonRow("2-D QDFT Alpha-Rooting", 12.5, (0.97,))]
    lines = rows_to_csv(rows).splitlines()
    assert lines[0] == "method,ceme,alpha_r,alpha_g,alpha_b,eme_r,eme_g,eme_b"
    assert lines[1] == "Original Image,10.0,,,,1.0,2.0,3.0"
    assert lines[2] == "2-D QDFT Alpha-Rooting,12.5,0.97,0.97,0.97,,,"
