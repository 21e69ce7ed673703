"""Flat key=value system configuration files.

Keys mirror the SystemConfig fields. Channel means may be given in dB with a
``_db`` suffix (``omega_li_db = -15``); they are converted once here. Giving
``distance`` (and optionally ``pathloss_exponent``) selects the geometry form,
in which omega0, omega1 and omega2 follow from the distance.
"""

from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import ValidationError

from ..errors import DomainError
from ..system_model import SystemConfig, db_to_linear

_FIELDS = set(SystemConfig.model_fields)
_DB_FIELDS = {"omega0", "omega1", "omega2", "omega_li"}
_GEOMETRY = {"distance", "pathloss_exponent"}


def _parse_bool(key: str, raw: str) -> bool:
    value = raw.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise DomainError(f"{key}: expected a boolean, got '{raw}'")


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise DomainError(f"{key}: expected a number, got '{raw}'") from None


def config_from_mapping(values: Mapping[str, Optional[str]]) -> SystemConfig:
    """Build a SystemConfig from string key/value pairs.

    Raises:
        DomainError: unknown key, missing value, a field given both linearly
            and in dB, or a config that fails validation
    """
    fields: Dict[str, Any] = {}
    geometry: Dict[str, float] = {}

    for key, raw in values.items():
        key = key.strip().lower()
        if raw is None or raw.strip() == "":
            raise DomainError(f"{key}: missing value")

        if key in _GEOMETRY:
            geometry[key] = _parse_float(key, raw)
        elif key.endswith("_db") and key[:-3] in _DB_FIELDS:
            name = key[:-3]
            if name in fields:
                raise DomainError(f"{name} given both linearly and in dB")
            fields[name] = db_to_linear(_parse_float(key, raw))
        elif key in _FIELDS:
            if key in fields:
                raise DomainError(f"{key} given both linearly and in dB")
            if key == "direct_link":
                fields[key] = _parse_bool(key, raw)
            elif key in ("duplex", "hd_threshold_convention"):
                fields[key] = raw.strip()
            else:
                fields[key] = _parse_float(key, raw)
        else:
            raise DomainError(f"unknown config key '{key}'")

    try:
        if geometry:
            clash = {"omega0", "omega1", "omega2"} & set(fields)
            if clash:
                raise DomainError(
                    f"{', '.join(sorted(clash))} cannot be combined with distance"
                )
            omega_li = fields.pop("omega_li", None)
            config = SystemConfig.from_geometry(**geometry, omega_li_db=-15.0, **fields)
            if omega_li is not None:
                config = config.replace(omega_li=omega_li)
            return config
        return SystemConfig(**fields)
    except (ValidationError, TypeError) as e:
        raise DomainError(f"invalid system configuration: {e}") from None


def load_config_file(path: Union[str, Path]) -> SystemConfig:
    """Read a SystemConfig from a key=value file (``#`` starts a comment)."""
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"config file not found: {path}")
    return config_from_mapping(dotenv_values(path))
