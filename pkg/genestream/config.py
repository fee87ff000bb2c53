from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # App Settings
    APP_NAME: str = "genestream"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Assembly
    DEFAULT_K: int = 21
    CODON_TABLE: str = "standard"
    EMIT_PARTIAL: bool = True

    # Limits
    MAX_READ_LEN: int = 99
    ORACLE_MAX_SEGMENTS: int = 12
    BRUTE_FORCE_MAX_SEGMENTS: int = 8
    SIM_MAX_ATTEMPTS: int = 100

    # Output
    FASTA_LINE_WIDTH: int = 80

    model_config = SettingsConfigDict(env_file=".env", env_prefix="GENESTREAM_")


settings = Settings()
