"""Runtime settings read from the environment (and an optional .env file)."""
import os
from pathlib import Path

# Load environment variables
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv not installed, use system env vars


class Settings:
    """Defaults for every tunable; CLI flags override these."""

    def __init__(self):
        self.pop_size = int(os.getenv("CRITPATH_POP_SIZE", "8"))
        self.elitism_rate = float(os.getenv("CRITPATH_ELITISM_RATE", "0.25"))
        self.generations = int(os.getenv("CRITPATH_GENERATIONS", "10"))
        self.iterations = int(os.getenv("CRITPATH_ITERATIONS", "1"))
        self.seed = int(os.getenv("CRITPATH_SEED", "0"))
        self.clone_retries = int(os.getenv("CRITPATH_CLONE_RETRIES", "8"))
        self.workers = int(os.getenv("CRITPATH_WORKERS", "1"))
        self.max_paths = int(os.getenv("CRITPATH_MAX_PATHS", "1000000"))
        self.log_level = os.getenv("CRITPATH_LOG_LEVEL", "WARNING").upper()
        self.output_dir = Path(os.getenv("CRITPATH_OUTPUT_DIR", "data/outputs"))


def get_settings() -> Settings:
    """Get singleton settings instance."""
    if not hasattr(get_settings, '_instance'):
        get_settings._instance = Settings()
    return get_settings._instance
