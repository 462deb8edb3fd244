from django.conf import settings

# Fallbacks when a deployment leaves a key out of settings.WCOLAB.
DEFAULTS = {
    "MAX_N": 2048,
    "DEFAULT_N": 256,
    "BLOCK_K": 16,
    "TOL": 1e-8,
    "MATCH_TOL": 1e-9,
    "REL_TOL": 1e-10,
    "N_CHECK": 50,
    "ROUNDOFF_FLOOR": 1e-12,
    "SWEEP_LADDER": [64, 128, 256, 512],
    "GRID_RADII": [0.1, 0.2, 0.3, 0.4, 0.5],
    "GRID_ANGLES": 5,
    "BISECTION_ITERATIONS": 60,
}


def lab_setting(name: str):
    """Value of a laboratory default, from ``settings.WCOLAB`` or the built-in table."""
    configured = getattr(settings, "WCOLAB", None) or {}
    if name in configured:
        return configured[name]
    return DEFAULTS[name]


def or_setting(value, name: str):
    """``value`` unless it is None, in which case the configured default."""
    return lab_setting(name) if value is None else value
