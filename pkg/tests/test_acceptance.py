"""The thirteen acceptance criteria, exact equality throughout.

Each test prints one PASS/FAIL line and the same line is repeated in the
terminal summary.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from daw.suites import (
    SuiteConfig,
    SuiteReport,
    block_associativity,
    block_braid,
    block_brauer,
    block_dimensions,
    block_fp,
    block_motzkin,
    block_oracle,
    block_rho,
    block_rook,
    block_rookbrauer,
    block_sroka,
    block_stability,
    block_tl,
)

CRITERIA = [
    (1, "dimension counts", block_dimensions, 10),
    (2, "composition associativity", block_associativity, 120),
    (3, "idempotent and left-ideal lemmas", block_rho, 60),
    (4, "f_p scaling", block_fp, 120),
    (5, "Tor engine oracle on C_2", block_oracle, 30),
    (6, "G-rook vs semidirect group", block_rook, 600),
    (7, "G-Brauer vs semidirect group", block_brauer, 600),
    (8, "G-TL vs k[G^n]", block_tl, 300),
    (9, "rook-Brauer vs Brauer", block_rookbrauer, 300),
    (10, "Motzkin vs TL", block_motzkin, 300),
    (11, "odd n at any δ, idempotent search", block_sroka, 600),
    (12, "braid relations and partial braids", block_braid, 180),
    (13, "stability spot-check", block_stability, 600),
]


@pytest.mark.parametrize("num,title,block,budget", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, block, budget):
    report = SuiteReport(f"criterion {num}")
    start = time.perf_counter()
    block(report, SuiteConfig())
    elapsed = time.perf_counter() - start
    ok = not report.failures and elapsed < budget
    line = f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {title} ({len(report.checks)} checks, {elapsed:.1f}s)"
    for c in report.failures:
        line += f"\n    failed {c.id}: {c.details}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert report.checks
    assert not report.failures, "\n".join(f"{c.id}: {c.details}" for c in report.failures)
    assert elapsed < budget, f"{elapsed:.1f}s over the {budget}s budget"
