# -*- coding: utf-8 -*-
import numpy as np
import pytest

from src.core.exceptions import ParseError
from src.data_collection.touchstone import load_touchstone_sweep, parse_touchstone_s2p


def s2p(option, rows, header="! test fixture"):
    return "\n".join([header, option] + rows) + "\n"


def row(f, s21, filler="0 0"):
    return f"{f} {filler} {s21[0]} {s21[1]} {filler} {filler}"


def test_ri_example():
    grid, samples = parse_touchstone_s2p(s2p("# GHZ S RI R 50", ["6.0 0 0 0.5 -0.5 0 0 0 0"]))
    assert grid.count == 1
    assert grid.f_start == 6.0e9
    assert samples[0] == 0.5 - 0.5j


def test_db_example():
    _, samples = parse_touchstone_s2p(s2p("# MHZ S DB R 50", [row(6000, (-20, 90))]))
    assert samples[0] == pytest.approx(0.1j, abs=1e-15)


def test_ma_and_units():
    text = s2p("# KHZ S MA R 50", [row(1000, (2.0, 180)), row(2000, (0.5, -90))])
    grid, samples = parse_touchstone_s2p(text)
    assert grid.f_start == 1e6
    assert grid.f_stop == 2e6
    np.testing.assert_allclose(samples, [-2.0, -0.5j], atol=1e-15)


def test_default_options_are_ghz_ma():
    grid, samples = parse_touchstone_s2p("\n".join([row(1.0, (1.0, 0)), row(2.0, (1.0, 0))]))
    assert grid.f_start == 1e9
    np.testing.assert_allclose(samples, [1.0, 1.0])


def test_comments_and_blank_lines_are_skipped():
    text = "\n".join(
        [
            "! measured with port 1 at the transmitter",
            "",
            "# HZ S RI R 50 ! inline comment",
            row(100, (1, 2)) + " ! trailing",
            "   ",
            row(200, (3, 4)),
        ]
    )
    grid, samples = parse_touchstone_s2p(text)
    assert grid.count == 2
    np.testing.assert_array_equal(samples, [1 + 2j, 3 + 4j])


def test_only_s21_is_kept():
    text = s2p("# HZ S RI R 50", ["1 9 9 0.25 0.75 8 8 7 7", "2 9 9 0.5 0 8 8 7 7"])
    _, samples = parse_touchstone_s2p(text)
    np.testing.assert_array_equal(samples, [0.25 + 0.75j, 0.5])


def full_precision(x):
    return f"{float(x):.17g}"


def test_encodings_agree():
    rng = np.random.default_rng(2)
    values = rng.normal(size=30) + 1j * rng.normal(size=30)
    freqs = np.arange(1, 31)
    ri = [row(f, (full_precision(v.real), full_precision(v.imag))) for f, v in zip(freqs, values)]
    ma = [row(f, (full_precision(abs(v)), full_precision(np.degrees(np.angle(v))))) for f, v in zip(freqs, values)]
    db = [
        row(f, (full_precision(20 * np.log10(abs(v))), full_precision(np.degrees(np.angle(v)))))
        for f, v in zip(freqs, values)
    ]
    parsed = [
        parse_touchstone_s2p(s2p(f"# MHZ S {fmt} R 50", rows))[1]
        for fmt, rows in (("RI", ri), ("MA", ma), ("DB", db))
    ]
    for samples in parsed[1:]:
        np.testing.assert_allclose(samples, parsed[0], rtol=1e-12)


def test_out_of_order_rows_name_the_line():
    text = s2p("# GHZ S RI R 50", [row(6.0, (1, 0)), row(5.9, (1, 0))])
    with pytest.raises(ParseError, match="line 4") as excinfo:
        parse_touchstone_s2p(text)
    assert excinfo.value.line_number == 4
    assert excinfo.value.exit_code == 1


def test_repeated_frequency_is_rejected():
    with pytest.raises(ParseError, match="strictly increasing"):
        parse_touchstone_s2p(s2p("# GHZ S RI R 50", [row(6.0, (1, 0)), row(6.0, (1, 0))]))


def test_one_port_data_is_rejected():
    with pytest.raises(ParseError, match="port count") as excinfo:
        parse_touchstone_s2p(s2p("# GHZ S RI R 50", ["6.0 0.1 0.2"]))
    assert excinfo.value.line_number == 3


def test_wrong_column_count():
    with pytest.raises(ParseError, match="column count"):
        parse_touchstone_s2p(s2p("# GHZ S RI R 50", ["6.0 0 0 0.5 -0.5 0 0"]))


@pytest.mark.parametrize(
    "option",
    ["# THZ S RI R 50", "# GHZ Y RI R 50", "# GHZ S RI R", "# GHZ S RI R fifty"],
)
def test_malformed_option_lines(option):
    with pytest.raises(ParseError, match="line 2"):
        parse_touchstone_s2p(s2p(option, [row(6.0, (1, 0))]))


def test_duplicate_and_late_option_lines():
    with pytest.raises(ParseError, match="duplicate option line"):
        parse_touchstone_s2p(s2p("# GHZ S RI R 50", ["# GHZ S MA R 50", row(6.0, (1, 0))]))
    with pytest.raises(ParseError, match="precede"):
        parse_touchstone_s2p(row(6.0, (1, 0)) + "\n# GHZ S RI R 50\n")


def test_non_numeric_and_empty_files():
    with pytest.raises(ParseError, match="non-numeric"):
        parse_touchstone_s2p(s2p("# GHZ S RI R 50", ["6.0 0 0 abc 0 0 0 0 0"]))
    with pytest.raises(ParseError, match="no data rows"):
        parse_touchstone_s2p("! only a comment\n# GHZ S RI R 50\n")


def test_version_two_keywords_are_rejected():
    with pytest.raises(ParseError, match="v2"):
        parse_touchstone_s2p("[Version] 2.0\n# GHZ S RI R 50\n" + row(6.0, (1, 0)))


def test_non_uniform_axis_is_rejected():
    rows = [row(f, (1, 0)) for f in (1.0, 2.0, 4.0)]
    with pytest.raises(ParseError, match="not uniform"):
        parse_touchstone_s2p(s2p("# GHZ S RI R 50", rows))


def test_load_touchstone_sweep(tmp_path):
    path = tmp_path / "mask_3.s2p"
    path.write_text(s2p("# GHZ S RI R 50", [row(5.7, (1, 0)), row(5.8, (0, 1)), row(5.9, (-1, 0))]))
    sweep = load_touchstone_sweep(path)
    assert sweep.grid.count == 3
    assert sweep.grid.f_stop == pytest.approx(5.9e9)
    np.testing.assert_array_equal(sweep.samples, [1, 1j, -1])


def test_load_touchstone_sweep_error_names_file(tmp_path):
    path = tmp_path / "broken.s2p"
    path.write_text(s2p("# GHZ S RI R 50", ["6.0 1 2"]))
    with pytest.raises(ParseError, match="broken.s2p"):
        load_touchstone_sweep(path)
