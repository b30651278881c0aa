from typing import Literal, Optional
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    log_level: str = Field("INFO")
    log_dir: str = Field("logs")
    log_to_file: bool = Field(False)
    environment: Literal["development", "production"] = Field("development")

    # Search oracle defaults
    search_node_budget: Optional[int] = Field(None, ge=1)
    search_workers: int = Field(1, ge=1)
    strip_search_budget: int = Field(100_000, ge=1)

    # Coverage / output
    coverage_workers: int = Field(1, ge=1)
    default_format: Literal["grid", "json"] = Field("grid")

    model_config = SettingsConfigDict(
        env_prefix="HEFFTER_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",  # ignore unexpected variables
    )

settings = Settings()
