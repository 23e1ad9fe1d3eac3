"""Smoke test for the pydickson extension.

Build first:
    cargo build --release -p dickson-do-py --features extension-module
then run `python python/smoke_test.py` (or pytest) from the repository root.
"""

import importlib.util
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]


def load():
    lib = ROOT / "target" / "release" / "libpydickson.so"
    if not lib.exists():
        sys.exit(f"{lib} not found; build the extension first")
    tmp = pathlib.Path(tempfile.mkdtemp())
    target = tmp / "pydickson.so"
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("pydickson", target)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_smoke():
    pd = load()
    assert pd.dickson(5, 2) == "x^5 - 3*a*x^3 + a^2*x"
    assert pd.dickson(0, 3) == "-1"
    assert pd.is_do(5, 2, 2, 3)
    assert not pd.is_do(3, 5, 1, 7)
    assert pd.theorem_predicate(5, 2, 2, 3)
    assert pd.is_planar("3^2", "x^2")
    assert not pd.is_planar("3^2", "x^4")
    assert pd.planar_dlogs("3^2", "x^12 + 2*a*x^10 + a^3*x^6 + 2*a^4*x^4") == [1, 3, 5, 7]
    assert pd.min_e(3, 8, 16) == 7
    assert pd.weil_interval(81, 2) == ("80", "82")


if __name__ == "__main__":
    test_smoke()
    print("ok")
