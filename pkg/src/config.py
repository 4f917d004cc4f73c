"""
Configuration for the Euler/dimension integration toolkit
Every constant can be overridden from the environment or a .env file
"""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    return int(raw) if raw.strip() else default


def _env_flag(name: str, default: bool) -> bool:
    raw = os.getenv(name, "")
    if not raw.strip():
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


# Project paths
PROJECT_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = PROJECT_ROOT / "data"
SCENES_DIR = DATA_DIR / "scenes"
FUNCTIONS_DIR = DATA_DIR / "functions"
MODELS_DIR = DATA_DIR / "models"
REPORTS_DIR = DATA_DIR / "reports"

# Randomized suites
DEFAULT_SEED = _env_int("EULER_SEED", 20061)
DEFAULT_TRIALS = _env_int("EULER_TRIALS", 100)
AXIOM_TRIALS = _env_int("EULER_AXIOM_TRIALS", 10_000)
DEFAULT_SAMPLES = _env_int("EULER_SAMPLES", 10)

# Test mode: evaluate every open part at two exact samples and compare
CHECK_CONSTANCY = _env_flag("EULER_CHECK_CONSTANCY", False)

# Output
OUTPUT_FORMAT = os.getenv("EULER_FORMAT", "text")
OUTPUT_FORMATS = ("text", "json")

# CLI exit codes
EXIT_OK = 0
EXIT_GENERIC = 1
EXIT_REJECTED = 2
EXIT_UNSUPPORTED = 3
EXIT_HYPOTHESES = 4
EXIT_IDENTITY = 5

# Presburger oracle window
PRESBURGER_WINDOW = (-10_000, 10_000)
