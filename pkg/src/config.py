import os
from dotenv import load_dotenv

load_dotenv()


def _env_flag(name: str, default: bool = False) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# Bounded verification over finite sets (all test sets of size <= SET_BOUND)
SET_BOUND = int(os.getenv("FINCAT_SET_BOUND", "3"))

# Largest shape (object count) used by Kan / functor-category verification
SHAPE_BOUND = int(os.getenv("FINCAT_SHAPE_BOUND", "2"))

# Lifts SHAPE_BOUND for Kan verification; combinatorial growth is steep
LARGE_SHAPES = _env_flag("FINCAT_LARGE_SHAPES")

LOG_LEVEL = os.getenv("FINCAT_LOG_LEVEL", "WARNING")

# Directory with the bundled golden spec files
CORPUS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "corpus")
