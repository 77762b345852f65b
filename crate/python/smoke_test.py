"""Smoke test for the parakahler extension module.

Builds the extension with cargo when no importable module is found, then
checks the G2 Koszul forms and a few bindings.
"""

import os
import shutil
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent


def build():
    subprocess.run(
        ["cargo", "build", "-p", "parakahler-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    target = Path(os.environ.get("CARGO_TARGET_DIR", ROOT / "target"))
    built = target / "debug" / "libparakahler.so"
    shutil.copy(built, HERE / "parakahler.so")


def main():
    sys.path.insert(0, str(HERE))
    if not (HERE / "parakahler.so").exists() or "--rebuild" in sys.argv:
        build()
    import parakahler as pk

    expected = {
        (1,): ([20, 10], [10, 0, 10, 20, 10, 10]),
        (2,): ([18, 12], [0, 6, 18, 18, 6, 12]),
        (1, 2): ([20, 12], [4, 4, 16, 20, 8, 12]),
    }
    order = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    for crossed, (psi, rho) in expected.items():
        g = pk.Gradation("G", 2, list(crossed))
        assert g.koszul_form() == [Fraction(x) for x in psi], (crossed, g.koszul_form())
        got = g.rho()
        assert [got[r] for r in order] == rho, (crossed, got)
        assert g.kernel_is_g0()
        n = g.orbit_dimension // 2
        assert g.einstein_signature() == (n, n, 0)

    sl2h = pk.Gradation("A", 3, [2])
    assert sl2h.koszul_coefficients() == {2: (4, 2)}
    assert sl2h.koszul_form() == [4, 8, 4]
    assert sl2h.satake_consistent("sl2H")

    z = pk.ParaComplex(3.0, 1.0)
    assert z * z.inverse() == pk.ParaComplex(1.0)
    assert pk.log_model_residual() < 1e-5
    print("smoke test passed")


if __name__ == "__main__":
    main()
