#!/usr/bin/env python3
"""Smoke test for the qma_py extension module.

Build the extension first:

    cargo build --release -p qma-py

then run:

    python3 python/smoke_test.py
"""

import json
import os
import sys
import tempfile

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def import_qma_py():
    """Locate the built cdylib and import it under the right module name."""
    names = {
        "linux": ("libqma_py.so", "qma_py.so"),
        "darwin": ("libqma_py.dylib", "qma_py.so"),
        "win32": ("qma_py.dll", "qma_py.pyd"),
    }
    key = "win32" if sys.platform.startswith("win") else (
        "darwin" if sys.platform == "darwin" else "linux"
    )
    built_name, import_name = names[key]
    candidates = [
        os.path.join(REPO_ROOT, "target", profile, built_name)
        for profile in ("release", "debug")
    ]
    built = next((c for c in candidates if os.path.exists(c)), None)
    if built is None:
        sys.exit(
            "error: build the extension first: cargo build --release -p qma-py"
        )
    link_dir = tempfile.mkdtemp(prefix="qma_py_")
    link = os.path.join(link_dir, import_name)
    os.symlink(built, link)
    sys.path.insert(0, link_dir)
    import qma_py  # noqa: E402

    return qma_py


def main():
    qma = import_qma_py()

    # Quantum integers: 2_q = q + 1/q = 13/6 at q = 3/2.
    assert qma.quantum_integer(1, "3/2") == "1/1"
    assert qma.quantum_integer(2, "3/2") == "13/6"
    assert qma.quantum_integer(4, "1") == "4/1"
    assert qma.to_prime_field("3/2", 101) == 52

    # Hecke symmetries validate on construction.
    h = qma.standard_glq(2, "3/2")
    assert h.n == 2 and h.dim == 4 and h.q == "3/2"
    f = qma.flip(2)
    assert f.entries()[0][0] == "1/1"
    s = qma.super_flip(1, 1)
    assert s.entries()[3][3] == "-1/1"

    # The RTT twist has the expected exact spectrum: its minimal polynomial
    # is (x-1)(x+q^2)(x+q^-2) = x^3 + 61/36 x^2 - 61/36 x - 1 at q = 3/2.
    t = qma.rtt_twist(h)
    assert t.dim == 16
    assert t.minimal_polynomial() == ["-1/1", "-61/36", "61/36", "1/1"]
    assert t.relation_space_dim() == 6

    # The reflection-equation twist coincides with the RTT twist on the flip.
    assert qma.re_twist(f).minimal_polynomial() == qma.rtt_twist(f).minimal_polynomial()

    # Tower to level 3: classical dimensions, published level-3 roots.
    tower = qma.build_tower(t, 3)
    assert tower.levels() == [2, 3]
    assert tower.dimensions() == [10, 20]
    assert tower.checks_pass()
    roots = dict(tower.roots(3))
    assert roots == {"0/1": 1, "1/1": 1, "36/169": 1, "9409/28561": 1}

    # S(3) expansion coefficients sum to one, exactly.
    alpha, beta, gamma, total, degenerate = tower.coefficients_s3()
    assert total == "1/1", (alpha, beta, gamma, total)
    assert not degenerate

    # At q = 1 the canonical degenerate solution is (4/3, -1/3, 0).
    classical_tower = qma.build_tower(qma.rtt_twist(f), 3)
    alpha, beta, gamma, total, degenerate = classical_tower.coefficients_s3()
    assert (alpha, beta, gamma) == ("4/3", "-1/3", "0/1")
    assert degenerate

    # The brute-force oracle agrees with the recursion's dimensions.
    assert qma.classical_oracle_rank(3, 2) == 20

    # The report driver produces canonical JSON.
    report = json.loads(qma.tower_report_json("glq", 2, "3/2", n_max=3))
    assert report["verdicts"]["m3"] == "match"
    assert report["levels"][1]["dimension"] == 20
    assert report["twist"]["spectrum_conforms"] is True

    print("qma_py smoke test passed")


if __name__ == "__main__":
    main()
