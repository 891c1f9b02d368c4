"""Command line surface: bundle round trips, exit codes, frozen help text."""

import os
from pathlib import Path

import pytest

from pccss.cli import build_parser, main
from pccss.codes import code_to_text, dual, make_alternant, make_repetition
from pccss.css import css_from_text, stab_from_text
from pccss.galois import FieldSpec
from pccss.stabcirc import circuit_from_text

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


@pytest.fixture
def shor_bundle(tmp_path, capsys):
    path = tmp_path / "shor.txt"
    rc, out, _ = run(capsys, "construct", "fast", "--N", "9", "--n0", "3",
                     "--outer", "rep", "--out", str(path))
    assert rc == 0
    assert "[[9, 1]]" in out
    return path


def test_construct_then_distance_records_certified_values(shor_bundle, capsys):
    rc, out, _ = run(capsys, "distance", str(shor_bundle))
    assert rc == 0
    assert "d_x 3" in out
    assert "d_z 3" in out
    q = css_from_text(shor_bundle.read_text())
    assert (q.d_x, q.d_z) == (3, 3)
    assert q.d_method == "exhaustive"


def test_bundle_reserialization_is_byte_identical(shor_bundle, capsys):
    from pccss.css import css_to_text

    before = shor_bundle.read_text()
    assert css_to_text(css_from_text(before)) == before
    run(capsys, "distance", str(shor_bundle))
    after = shor_bundle.read_text()
    assert after != before
    assert css_to_text(css_from_text(after)) == after


def test_check_reports_ok(shor_bundle, capsys):
    rc, out, _ = run(capsys, "check", str(shor_bundle))
    assert rc == 0
    assert out.strip() == "ok"


def test_check_corrupted_bundle_exits_one_with_witness(shor_bundle, tmp_path, capsys):
    lines = shor_bundle.read_text().splitlines()
    at = lines.index("hx") + 2
    row = lines[at].split()
    row[0] = "1" if row[0] == "0" else "0"
    lines[at] = " ".join(row)
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines) + "\n")

    rc, out, _ = run(capsys, "check", str(bad))
    assert rc == 1
    assert "violation:" in out
    assert "commut" in out


def test_usage_errors_exit_two(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["not-a-subcommand"])
    assert exc.value.code == 2

    rc, _, err = run(capsys, "check", str(tmp_path / "missing.txt"))
    assert rc == 2
    assert "error:" in err

    rc, _, err = run(capsys, "construct", "fast", "--out", str(tmp_path / "x.txt"))
    assert rc == 2
    assert "--N" in err


def test_check_rejects_unknown_header(tmp_path, capsys):
    path = tmp_path / "junk.txt"
    path.write_text("linearcode 2 3 1\n")
    rc, _, err = run(capsys, "check", str(path))
    assert rc == 2
    assert "unrecognized bundle header" in err


def test_help_matches_golden_file(monkeypatch):
    monkeypatch.setenv("COLUMNS", "80")
    assert build_parser().format_help() == (DATA / "cli_help.txt").read_text()


def test_decode_both_sides(shor_bundle, tmp_path, capsys):
    syn = tmp_path / "syn.txt"
    syn.write_text("# recorded syndromes\n1 0\n0 0\n")
    rc, out, _ = run(capsys, "decode", str(shor_bundle), "--side", "x",
                     "--syndrome", str(syn))
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0] == "corrected 1 0 0 0 0 0 0 0 0"
    assert lines[1] == "corrected 0 0 0 0 0 0 0 0 0"

    zsyn = tmp_path / "zsyn.txt"
    zsyn.write_text("1 1 0 0 0 0\n")
    dest = tmp_path / "decoded.txt"
    rc, out, _ = run(capsys, "decode", str(shor_bundle), "--side", "z",
                     "--syndrome", str(zsyn), "--out", str(dest))
    assert rc == 0
    assert "decoded 1 syndromes" in out
    status, *bits = dest.read_text().split()
    assert status == "corrected"
    assert len(bits) == 9


def test_decode_rejects_wrong_arity_syndrome(shor_bundle, tmp_path, capsys):
    syn = tmp_path / "syn.txt"
    syn.write_text("1 0 2\n")
    rc, _, err = run(capsys, "decode", str(shor_bundle), "--side", "x",
                     "--syndrome", str(syn))
    assert rc == 2
    assert "0/1" in err


def test_encode_circuit_emits_parseable_file(shor_bundle, tmp_path, capsys):
    dest = tmp_path / "circuit.txt"
    rc, out, _ = run(capsys, "encode-circuit", str(shor_bundle), "--out", str(dest))
    assert rc == 0
    assert "gates 11 depth 5" in out
    assert "hadamards 3" in out
    circuit = circuit_from_text(dest.read_text())
    assert circuit.n == 9
    assert len(circuit.gates) == 11


def test_bounds_gap_column_stays_small(tmp_path, capsys):
    dest = tmp_path / "rates.csv"
    rc, out, _ = run(capsys, "bounds", "--fig1", "--zeta", "100",
                     "--step", "1e-3", "--out", str(dest))
    assert rc == 0
    assert "max_gap" in out

    header, *rows = dest.read_text().strip().splitlines()
    cols = header.split(",")
    gap_at = cols.index("gap zeta=100")
    gaps = [float(r.split(",")[gap_at]) for r in rows]
    finite = [g for g in gaps if g == g]
    assert finite
    assert max(finite) < 3e-2


def test_bounds_without_out_prints_csv(capsys):
    rc, out, _ = run(capsys, "bounds", "--zeta", "10", "--pmax", "0.05",
                     "--step", "0.01")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,hashing,pccss zeta=10,gap zeta=10"
    assert len(lines) == 6


def test_simulate_prints_summary(shor_bundle, capsys):
    rc, out, _ = run(capsys, "simulate", "--bundle", str(shor_bundle),
                     "--p", "0.01", "--zeta", "inf", "--trials", "20",
                     "--workers", "1")
    assert rc == 0
    summary = dict(line.split(maxsplit=1) for line in out.strip().splitlines())
    assert summary["trials"] == "20"
    assert summary["n"] == "9"
    assert "pz_bound" in summary


def test_sweep_reports_exhaustive_weight_one_success(shor_bundle, capsys):
    rc, out, _ = run(capsys, "sweep", "--bundle", str(shor_bundle),
                     "--side", "x", "--weights", "1")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0].split() == ["weight", "trials", "successes", "rate", "exhaustive"]
    assert lines[1].split() == ["1", "9", "9", "1", "1"]


def test_enlarged_bundle_lifecycle(tmp_path, capsys):
    f = FieldSpec(2, 1, 3)
    alpha = [f.pow(2, i) for i in range(7)]
    ham = make_alternant(f, a=alpha, y=alpha, r=1)
    spc = dual(make_repetition(3))
    c1 = tmp_path / "hamming.txt"
    c2 = tmp_path / "spc.txt"
    c1.write_text(code_to_text(ham))
    c2.write_text(code_to_text(spc))

    bundle = tmp_path / "enlarged.txt"
    rc, out, _ = run(capsys, "construct", "enlarged", "--code1", str(c1),
                     "--code2", str(c2), "--out", str(bundle))
    assert rc == 0
    assert "[[7, 3]]" in out

    rc, out, _ = run(capsys, "check", str(bundle))
    assert rc == 0

    rc, out, _ = run(capsys, "distance", str(bundle))
    assert rc == 0
    d = int(out.split()[1])
    assert d >= 2
    s = stab_from_text(bundle.read_text())
    assert s.d == d
    assert s.d_method == "exhaustive"


def test_workers_env_override(shor_bundle, capsys, monkeypatch):
    monkeypatch.setenv("PCCSS_WORKERS", "2")
    rc, out, _ = run(capsys, "simulate", "--bundle", str(shor_bundle),
                     "--p", "0.0", "--zeta", "1", "--trials", "8")
    assert rc == 0
    assert "x_failures 0" in out
