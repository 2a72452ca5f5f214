import runpy

import pytest

from conftest import ROOT


@pytest.mark.parametrize("name", ["plane_curve_walkthrough", "weighted_closed_forms"])
def test_demo_runs(name, capsys):
    runpy.run_path(str(ROOT / "demos" / f"{name}.py"), run_name="__main__")
    assert "mu_Delta" in capsys.readouterr().out
