from pathlib import Path

# Local data directory
DATA_DIR = Path("~") / ".qsvm-py"

# Logging path
LOG_PATH = DATA_DIR / "running.log"

# Logging level
LOG_LEVEL = "CRITICAL"

# Default output directory, overridden by the QSVM_OUTDIR environment variable
OUTPUT_DIR = Path("qsvm-out")

# Gram cache file name inside the output directory
GRAM_CACHE_NAME = "gram_cache.sqlite3"
