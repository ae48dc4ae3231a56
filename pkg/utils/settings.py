"""
Runtime configuration, read from PBF_* environment variables or a .env file
"""

from functools import lru_cache

from pydantic import BaseSettings, Field


class Settings(BaseSettings):
    seed: int = 0
    dense_cap: int = Field(16, ge=0, le=30)
    float_cap: int = Field(24, ge=0, le=30)
    bruteforce_cap: int = Field(24, ge=0, le=30)
    convolution_cap: int = Field(1 << 20, ge=1)
    log_level: str = "INFO"

    class Config:
        env_prefix = "PBF_"
        env_file = ".env"


@lru_cache()
def get_settings() -> Settings:
    return Settings()
