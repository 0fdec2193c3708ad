from __future__ import annotations as _annotations

import numpy as np
from pydantic import ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

import logfire

from .errors import ConfigurationError

__all__ = 'Settings', 'load_settings', 'configure_logfire', 'resolve_seed'


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix='okalab_')

    seed: int | None = None
    samples: int = 1000
    loop_samples: int = 512
    limit_steps: int = 20


def load_settings() -> Settings:
    try:
        return Settings()
    except ValidationError as exc:
        fields = ', '.join(f'OKALAB_{str(e["loc"][0]).upper()}' for e in exc.errors() if e['loc'])
        raise ConfigurationError(f'invalid environment settings: {fields or exc.error_count()}') from exc


def configure_logfire() -> None:
    # stdout carries the reports, so nothing goes to the console
    logfire.configure(service_name='okalab', send_to_logfire='if-token-present', console=False)


def resolve_seed(seed: int | None) -> int:
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % 2**32)
        logfire.info('no seed given, using {seed=}', seed=seed)
    return seed
