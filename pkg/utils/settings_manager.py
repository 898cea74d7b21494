import json
import logging
import os

from dotenv import load_dotenv

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SETTINGS_PATH = os.path.join(BASE_DIR, "data", "settings.json")
ENV_PREFIX = "GEOSTAR_"

load_dotenv(os.path.join(BASE_DIR, ".env"))

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS = {
    "ball_max_elements": 2_000_000,
    "bidirectional_max_depth": 14,
    "monoid_max_elements": 200_000,
    "coset_max_count": 1_000,
    "abelian_sum_bound": 6,
    "abelian_verify_len": 8,
    "verify_maxlen": 8,
    "desk_check": {"max_u": 2, "max_v": 3, "max_w": 2, "nmax": 6},
    "log_level": "INFO",
}


def _env_overrides() -> dict:
    """Collect GEOSTAR_<KEY> environment overrides."""
    overrides = {}
    for key in DEFAULT_SETTINGS:
        raw = os.environ.get(ENV_PREFIX + key.upper())
        if raw is None:
            continue
        try:
            overrides[key] = json.loads(raw)
        except json.JSONDecodeError:
            overrides[key] = raw
    return overrides


def load_settings() -> dict:
    """Load settings from JSON file, creating it with defaults if missing."""
    settings = DEFAULT_SETTINGS.copy()
    if not os.path.exists(SETTINGS_PATH):
        save_settings({})
    else:
        try:
            with open(SETTINGS_PATH, 'r', encoding='utf-8') as f:
                settings.update(json.load(f))
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"Error loading settings: {e}. Using defaults.")
    settings.update(_env_overrides())
    return settings


def save_settings(new_settings: dict) -> dict:
    """Save settings to JSON file."""
    # Ensure all defaults are present
    settings_to_save = DEFAULT_SETTINGS.copy()

    # Load existing if available to preserve unknown keys
    if os.path.exists(SETTINGS_PATH):
        try:
            with open(SETTINGS_PATH, 'r', encoding='utf-8') as f:
                settings_to_save.update(json.load(f))
        except (OSError, json.JSONDecodeError):
            pass

    settings_to_save.update(new_settings)

    try:
        with open(SETTINGS_PATH, 'w', encoding='utf-8') as f:
            json.dump(settings_to_save, f, indent=2)
    except OSError as e:
        logger.warning(f"Could not write settings: {e}")

    return settings_to_save


def get_setting(key, default=None):
    """Get a specific setting value."""
    settings = load_settings()
    value = settings.get(key)
    if value is None:
        return default if default is not None else DEFAULT_SETTINGS.get(key)
    return value
