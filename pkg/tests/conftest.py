"""Shared fixtures: the one-shot verification report and parsed oracle files."""

import re
from pathlib import Path

import pytest

from lfverify.contradiction import run_verification

ORACLE_DIR = Path(__file__).parent / "oracles"


@pytest.fixture(scope="session")
def report():
    return run_verification()


@pytest.fixture(scope="session")
def records(report):
    return {r.name: r for r in report.records}


def _normalize_fp(fp: str) -> str:
    # signed-zero formatting differs between the oracle (raw exp) and the
    # package (snapped values); fold both onto +0.000
    return fp.replace("-0.000", "+0.000")


@pytest.fixture(scope="session")
def zero_count_oracle():
    """Frozen fine-grid scan: {(q, fingerprint): (zeros, dips, parity)}."""
    counts = {}
    total = None
    anchor_max = None
    pat = re.compile(
        r"count q=(\d+) parity=([+-]1) zeros=(\d+) dips=(\d+) fp=(\S+)"
    )
    for line in (ORACLE_DIR / "zero_counts.out").read_text().splitlines():
        m = pat.match(line)
        if m:
            q, parity, zeros, dips, fp = m.groups()
            key = (int(q), _normalize_fp(fp))
            assert key not in counts, f"fingerprint collision in oracle: {key}"
            counts[key] = (int(zeros), int(dips), int(parity))
        elif line.startswith("total_zero_count"):
            total = int(line.split("=")[1])
        elif line.startswith("anchor_max_diff"):
            anchor_max = float(line.split("=")[1])
    assert total is not None and anchor_max is not None
    assert anchor_max < 1e-12
    return counts, total


def character_fingerprint(chi) -> str:
    vals = [chi(a) for a in range(1, chi.modulus)]
    fp = ",".join(f"{v.real:+.3f}{v.imag:+.3f}i" for v in vals)
    return _normalize_fp(fp)


@pytest.fixture(scope="session")
def frozen_constants():
    """Values pinned by the independent Simpson-grid study (simpson_constants.out)."""
    out = {}
    for line in (ORACLE_DIR / "simpson_constants.out").read_text().splitlines():
        if " = " not in line:
            continue
        name, _, rhs = line.strip().partition(" = ")
        if name.startswith("chain"):
            name = "chain"
        rhs = rhs.strip()
        if rhs.startswith("np.float64("):
            out[name] = complex(float(rhs[len("np.float64(") : -1]))
        else:
            out[name] = complex(rhs.strip("()"))
    assert "c11" in out and "frak_c3" in out and "chain" in out
    return out


@pytest.fixture(scope="session")
def weight_regime_oracle():
    """Frozen mpmath regime study rows: {(L2, t0): (ratio_err, delta1_err)}."""
    ratios = {}
    deltas = {}
    pat = re.compile(
        r"(ratio|delta1)\(L2=([0-9.]+),t0=([0-9.]+)\) = .*\|(?:ratio-1|err)\| = ([0-9.e-]+)"
    )
    for line in (ORACLE_DIR / "weight_regime.out").read_text().splitlines():
        m = pat.match(line.strip())
        if not m:
            continue
        kind, l2, t0, err = m.groups()
        target = ratios if kind == "ratio" else deltas
        target[(float(l2), float(t0))] = float(err)
    assert (50.0, 2000.0) in ratios and (50.0, 60.0) in deltas
    return ratios, deltas


def scan_alpha_hat(zeros) -> float:
    """Half the mean consecutive gap of a scanned segment."""
    gammas = sorted(z.gamma for z in zeros)
    if len(gammas) < 2:
        return 1.0
    return 0.5 * (gammas[-1] - gammas[0]) / (len(gammas) - 1)


@pytest.fixture(scope="session")
def full_scans(zero_count_oracle):
    """One scan of every primitive character with modulus at most 12, T <= 100."""
    from lfverify.characters import primitive_characters
    from lfverify.lfunc import find_zeros

    scans = []
    for q in (3, 4, 5, 7, 8, 9, 11, 12):
        for chi in primitive_characters(q):
            scans.append((q, chi, find_zeros(chi, 0.01, 100.0, 0.02)))
    return scans


def assert_close(actual, expected, tol, label=""):
    actual, expected = complex(actual), complex(expected)
    gap = max(abs(actual.real - expected.real), abs(actual.imag - expected.imag))
    assert gap <= tol, f"{label}: {actual} vs {expected} (gap {gap:.3e} > {tol:g})"
