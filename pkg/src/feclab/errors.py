class ConfigError(ValueError):
    """Bad configuration value (unsupported field size, code parameters, ...)."""
