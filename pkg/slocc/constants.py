"""
Configuration constants for the slocc toolkit.
These can be overridden using a config file; the environment is never read.

Configuration Priority:
1. User config file (~/.config/slocc/config.ini)
2. Local config file (./config/config.ini)
3. Default config file (./config/config.ini.template)
4. Hard-coded defaults below
"""

from typing import Literal, Callable, TypeVar
from pathlib import Path
import configparser
import logging

logger = logging.getLogger(__name__)

T = TypeVar('T')

# Configuration paths
CONFIG_DIR = Path.home() / '.config' / 'slocc'
USER_CONFIG_FILE = CONFIG_DIR / 'config.ini'
LOCAL_CONFIG_FILE = Path(__file__).parent.parent / 'config' / 'config.ini'
DEFAULT_CONFIG_FILE = Path(__file__).parent.parent / 'config' / 'config.ini.template'


def get_config_value(section: str, key: str, default: str = '') -> str:
    """Get configuration value from config files.

    Priority order:
    1. User config file (~/.config/slocc/config.ini)
    2. Local config file (./config/config.ini)
    3. Default config file (./config/config.ini.template)
    4. Default value
    """
    config = configparser.ConfigParser()

    for config_file in [USER_CONFIG_FILE, LOCAL_CONFIG_FILE, DEFAULT_CONFIG_FILE]:
        if config_file.exists():
            try:
                config.read(config_file)
                if value := config.get(section, key, fallback=None):
                    logger.debug(f"Using {section}.{key} from {config_file}")
                    return value
            except (configparser.Error, OSError) as e:
                logger.warning(f"Error reading {config_file}: {e}")

    return default


def _typed(section: str, key: str, default: T, cast: Callable[[str], T]) -> T:
    """Read a config value and convert it, falling back to the default."""
    raw = get_config_value(section, key, str(default))
    try:
        return cast(raw)
    except ValueError:
        logger.warning(f"Invalid value {raw!r} for {section}.{key}, using {default}")
        return default


TOOL_NAME = 'slocc'

# Numerics
ZERO_FACTOR = _typed('numerics', 'zero_factor', 1e-10, float)
LOG_TOLERANCE = _typed('numerics', 'log_tolerance', 1e-8, float)
PHASE_TOLERANCE = _typed('numerics', 'phase_tolerance', 1e-8, float)
DET_FLOOR = _typed('numerics', 'det_floor', 0.1, float)
DET_CEILING = _typed('numerics', 'det_ceiling', 10.0, float)
MIN_OPERATOR_DET = _typed('numerics', 'min_operator_det', 1e-12, float)

# Limits
MAX_QUBITS = _typed('limits', 'max_qubits', 20, int)
EXACT_MAX_DIM = _typed('limits', 'exact_max_dim', 256, int)
FLOAT_MAX_DIM = _typed('limits', 'float_max_dim', 1024, int)
ORACLE_MAX_DIM = _typed('limits', 'oracle_max_dim', 6, int)
MAX_ATTEMPTS = _typed('limits', 'max_attempts', 1000, int)

# Random exact operators and states draw p/q with p, q in these ranges
EXACT_NUMERATOR_RANGE = (-4, 4)
EXACT_DENOMINATOR_RANGE = (1, 4)

# Output Configuration
CONSOLE_STYLE: Literal['dark', 'light'] = get_config_value('output', 'style', 'dark')
LOG_LEVEL = get_config_value('output', 'log_level', 'WARNING').upper()
