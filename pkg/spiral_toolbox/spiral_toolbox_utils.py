import importlib
import logging
import os
import sys

from Qt import QtCore

log = logging.getLogger(__name__)


class SpiralToolboxSettings(QtCore.QSettings):
    def __init__(self, *args, **kwargs):
        super(SpiralToolboxSettings, self).__init__(*args, **kwargs)

    def get_value(self, key, default=None):
        data_type = None
        if default is not None:
            data_type = type(default)

        settings_val = self.value(key, defaultValue=default)

        # ini files hand everything back as strings (or lists of strings)
        if data_type == list:
            if not isinstance(settings_val, (list, tuple)):
                settings_val = [v.strip() for v in str(settings_val).split(",")] if settings_val else list()
            if default:
                item_type = type(default[0])
                settings_val = [item_type(v) for v in settings_val]
            settings_val = list(settings_val)

        if data_type == int and not isinstance(settings_val, int):
            settings_val = default if settings_val is None else int(settings_val)

        if data_type == float and not isinstance(settings_val, float):
            settings_val = default if settings_val is None else float(settings_val)

        return settings_val


class LocalConstants(object):
    env_settings_path = "SPIRAL_TOOLBOX_SETTINGS"
    env_extra_modules = "SPIRAL_TOOLBOX_EXTRA_MODULES"
    extension_path_prefix = "spiral_toolbox_ext"

    # settings keys
    profile_tolerance = "tolerance/profile"
    samples_tolerance = "tolerance/samples"
    step_divisions = "integration/step_divisions"
    surface_v_range = "surface/v_range"
    surface_grid = "surface/grid"
    surface_gaussian_tol = "surface/gaussian_tol"
    classify_jobs = "classify/jobs"

    defaults = {
        profile_tolerance: 1e-9,
        samples_tolerance: 1e-3,
        step_divisions: 4096,
        surface_v_range: [-0.5, 0.5],
        surface_grid: [256, 32],
        surface_gaussian_tol: 1e-6,
        classify_jobs: 1,
    }

    _settings = None

    @property
    def settings(self):
        """Settings from $SPIRAL_TOOLBOX_SETTINGS, else the per-user ini file"""
        if self._settings is None:
            settings_path = os.environ.get(self.env_settings_path)
            if settings_path:
                self._settings = SpiralToolboxSettings(settings_path, QtCore.QSettings.IniFormat)
            else:
                self._settings = SpiralToolboxSettings(QtCore.QSettings.IniFormat, QtCore.QSettings.UserScope,
                                                       "spiral_toolbox", "spiral_toolbox")
        return self._settings

    def use_settings_file(self, settings_path):
        self._settings = SpiralToolboxSettings(settings_path, QtCore.QSettings.IniFormat)
        log.debug("using settings from %s", settings_path)

    def reset_settings(self):
        self._settings = None

    def get(self, key):
        return self.settings.get_value(key, default=self.defaults[key])


lk = LocalConstants()


def import_extra_modules(refresh=False):
    """
    Import the modules listed in $SPIRAL_TOOLBOX_EXTRA_MODULES and every module or package
    on sys.path whose name starts with spiral_toolbox_ext, so they can register checks.
    """
    modules_to_import = os.environ.get(lk.env_extra_modules, "").split(";")

    if refresh:
        for mod_key in list(sys.modules.keys()):
            if mod_key.startswith(lk.extension_path_prefix) or any(
                    m and mod_key.startswith(m) for m in modules_to_import):
                sys.modules.pop(mod_key)

    for sys_path in sys.path:
        if not os.path.isdir(sys_path):
            continue

        for sys_path_name in os.listdir(sys_path):
            if not sys_path_name.startswith(lk.extension_path_prefix):
                continue

            modules_to_import.append(os.path.splitext(sys_path_name)[0])

    imported = []
    for module_import_str in sorted(set(modules_to_import)):
        if not module_import_str:  # skip empty strings
            continue

        try:
            importlib.import_module(module_import_str)
            imported.append(module_import_str)
            log.debug("imported spiral_toolbox extension: %s", module_import_str)
        except Exception:
            log.exception("failed to import spiral_toolbox extension: %s", module_import_str)
    return imported


def all_subclasses(cls):
    return set(cls.__subclasses__()).union([s for c in cls.__subclasses__() for s in all_subclasses(c)])


def parse_float_list(text, count=None, name="value"):
    """'1,0,0,1' -> [1.0, 0.0, 0.0, 1.0]"""
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise ValueError("{} must be comma separated numbers, got {!r}".format(name, text))
    if count is not None and len(values) not in (count if isinstance(count, tuple) else (count,)):
        raise ValueError("{} needs {} numbers, got {}".format(name, count, len(values)))
    return values
