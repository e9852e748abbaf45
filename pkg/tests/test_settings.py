import pytest

from spiral_toolbox import spiral_toolbox_utils as stu
from spiral_toolbox.spiral_toolbox_utils import lk

SETTINGS_INI = """[tolerance]
profile=1e-6

[surface]
v_range=-1.0, 2.0
grid=64, 8

[classify]
jobs=4
"""


def test_defaults_without_entries():
    assert lk.get(lk.profile_tolerance) == 1e-9
    assert lk.get(lk.samples_tolerance) == 1e-3
    assert lk.get(lk.step_divisions) == 4096
    assert lk.get(lk.surface_grid) == [256, 32]


def test_ini_values_are_coerced(tmp_path):
    path = tmp_path / "spiral_toolbox.ini"
    path.write_text(SETTINGS_INI)
    lk.use_settings_file(str(path))

    assert lk.get(lk.profile_tolerance) == 1e-6
    assert lk.get(lk.surface_v_range) == [-1.0, 2.0]
    assert lk.get(lk.surface_grid) == [64, 8]
    assert lk.get(lk.classify_jobs) == 4
    assert isinstance(lk.get(lk.classify_jobs), int)
    assert lk.get(lk.samples_tolerance) == 1e-3


def test_settings_path_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "from_env.ini"
    path.write_text("[integration]\nstep_divisions=100\n")
    monkeypatch.setenv(lk.env_settings_path, str(path))
    lk.reset_settings()

    assert lk.get(lk.step_divisions) == 100


def test_parse_float_list():
    assert stu.parse_float_list("1,0,0,1") == [1.0, 0.0, 0.0, 1.0]
    assert stu.parse_float_list("-0.5, 0.5", count=2) == [-0.5, 0.5]
    assert len(stu.parse_float_list("1,2,3,4,5", count=(4, 5))) == 5

    with pytest.raises(ValueError):
        stu.parse_float_list("1,x")
    with pytest.raises(ValueError):
        stu.parse_float_list("1,2,3", count=(4, 5), name="--coeffs")


def test_all_subclasses():
    class Base(object):
        pass

    class Child(Base):
        pass

    class GrandChild(Child):
        pass

    assert stu.all_subclasses(Base) == {Child, GrandChild}
