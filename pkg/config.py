"""
PolyBisect Configuration Module
Centralized configuration and constants for bisector enumeration, sampling and export.
"""
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# ========================================
# SAMPLING CONFIGURATION
# ========================================

# Random rational sites: numerators uniform in [-N, N] over a fixed denominator
SAMPLE_NUMERATOR_RANGE = int(os.environ.get('POLYBISECT_SAMPLE_RANGE', 1000))
SAMPLE_DENOMINATOR = int(os.environ.get('POLYBISECT_SAMPLE_DENOMINATOR', 97))
SAMPLE_MAX_REJECTIONS = 10000      # Attempts before a generic site is given up on
DEFAULT_SEED = int(os.environ.get('POLYBISECT_SEED', 20240611))
DEFAULT_SAMPLES = 100

# Perturbed polygons draw rational circle parameters t = k / PERTURBED_T_DENOMINATOR
PERTURBED_T_DENOMINATOR = 64
PERTURBED_T_MAX_NUMERATOR = 640
PERTURBED_POLYGONS_PER_SIZE = 3       # Count suites pair each regular 2n-gon with this many perturbed ones

# ========================================
# ENUMERATION CAPS
# ========================================

MAX_SUBSET_DIM = 20                # Bitmask-indexed facets (2^d of them)
MAX_PAIR_ENUM_DIM = 12             # Cross-polytope / root polytope pair enumeration (4^d pairs)
MAX_WASSERSTEIN_P_DIM = 12         # Subset sum over all I in the p-function
MAX_VREP_HULL_DIM = 3              # Facet recovery from a bare vertex list
MAX_VREP_VERTICES = 64
MAX_POLYGON_HALF_VERTICES = 64     # n for 2n-gons built from the command line

# ========================================
# PARALLEL PROCESSING CONFIGURATION
# ========================================

PARALLEL_PROCESSING_ENABLED = os.environ.get('POLYBISECT_PARALLEL', 'True').lower() == 'true'
CELL_WORKERS = int(os.environ.get('POLYBISECT_WORKERS', 4))   # Concurrent facet-pair batches
PAIR_BATCH_SIZE = 64               # Facet pairs per submitted batch
PARALLEL_PAIR_THRESHOLD = 256      # Below this many LP pairs, stay sequential

# Performance Monitoring
PERFORMANCE_LOGGING_ENABLED = True

# ========================================
# PROGRESS TRACKING CONFIGURATION
# ========================================

# Relative weights of the phases of long-running commands
PROGRESS_PHASE_WEIGHTS = {
    "starting": 0.5,
    "building_ball": 1.0,
    "sampling": 1.0,
    "enumerating": 8.0,
    "exporting": 4.0,
    "reporting": 0.5
}

PROGRESS_LOG_STEP = 10             # Log every N percent

# ========================================
# EXPORT SETTINGS
# ========================================

OFF_SIGNIFICANT_DIGITS = 12
JSON_INDENT = 2

# ========================================
# EXIT CODES
# ========================================

EXIT_CODES = {
    'ok': 0,
    'usage': 2,
    'domain': 3,
    'invariant': 4
}

# ========================================
# LOGGING CONFIGURATION
# ========================================

LOGGING_CONFIG = {
    'level': os.environ.get('LOG_LEVEL', 'INFO').upper(),
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
}
