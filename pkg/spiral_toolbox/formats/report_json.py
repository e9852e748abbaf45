"""
JSON profile specs and report files.

A profile spec names both profiles by their (a, b, c, d) coefficients, c and d
defaulting to 0 and 1; a bare number is a constant profile:

    {"kappa": {"a": 1, "b": 1}, "tau": {"a": 2, "b": 0}, "s_range": [0, 5]}
"""
import json
import logging
import numbers

from spiral_toolbox.geometry import profiles
from spiral_toolbox.spiral_toolbox_errors import ParseError

log = logging.getLogger(__name__)

COEFFICIENT_NAMES = ("a", "b", "c", "d")
COEFFICIENT_DEFAULTS = {"c": 0.0, "d": 1.0}


def _number(value, field):
    # bool is an int subclass
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ParseError("expected a number, got {!r}".format(value), field=field)
    return float(value)


def _parse_profile(data, name):
    if isinstance(data, numbers.Real) and not isinstance(data, bool):
        return profiles.constant_profile(float(data))
    if not isinstance(data, dict):
        raise ParseError("profile must be an object with a, b[, c, d] or a number", field=name)

    unknown = sorted(set(data) - set(COEFFICIENT_NAMES))
    if unknown:
        raise ParseError("unknown coefficient(s) {}".format(", ".join(unknown)), field=name)

    coefficients = []
    for key in COEFFICIENT_NAMES:
        field = "{}.{}".format(name, key)
        if key in data:
            coefficients.append(_number(data[key], field))
        elif key in COEFFICIENT_DEFAULTS:
            coefficients.append(COEFFICIENT_DEFAULTS[key])
        else:
            raise ParseError("missing coefficient", field=field)
    return profiles.make_profile(*coefficients)


def profile_pair_from_dict(data):
    if not isinstance(data, dict):
        raise ParseError("profile spec must be a JSON object")
    for key in ("kappa", "tau", "s_range"):
        if key not in data:
            raise ParseError("missing key", field=key)

    s_range = data["s_range"]
    if not isinstance(s_range, list) or len(s_range) != 2:
        raise ParseError("expected [s_min, s_max]", field="s_range")
    s_min = _number(s_range[0], "s_range[0]")
    s_max = _number(s_range[1], "s_range[1]")

    # DomainErrors (poles, positivity) propagate unchanged
    return profiles.ProfilePair(_parse_profile(data["kappa"], "kappa"),
                                _parse_profile(data["tau"], "tau"),
                                s_min, s_max)


def parse_profile_spec(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("invalid JSON: {}".format(e.msg), line=e.lineno)
    return profile_pair_from_dict(data)


def read_profile_spec(path):
    with open(path, "r") as fp:
        return parse_profile_spec(fp.read())


def profile_pair_to_dict(pp):
    return {"kappa": pp.kappa.to_dict(), "tau": pp.tau.to_dict(), "s_range": [pp.s_min, pp.s_max]}


def dumps(data):
    """Stable text for byte-identical reruns"""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_json(path, data):
    with open(path, "w") as fp:
        fp.write(dumps(data))
    log.info("wrote %s", path)


def write_report(path, report):
    """ClassificationReport or CheckReport, anything with to_dict()"""
    write_json(path, report.to_dict())
