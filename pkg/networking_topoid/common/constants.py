# Project
TOPOID = 'topoid'
TOPOID_BIN = 'topoid'
TOPOID_OUTPUT_ROOT_ENV = 'TOPOID_OUTPUT_ROOT'
TOPOID_DEFAULT_OUTPUT_ROOT = 'topoid-results'

# Bundled data files (graph/data)
KARATE_EDGELIST = 'karate.edgelist'
KARATE_NODES = 34
KARATE_EDGES = 78
COSPECTRAL_TREES = 'cospectral_trees.json'

# Graph shift families
FAMILY_ADJACENCY = 'adjacency'
FAMILY_LAPLACIAN = 'combinatorial_laplacian'
FAMILY_NORMALIZED_LAPLACIAN = 'normalized_laplacian'
FAMILY_NONNEGATIVE = 'nonnegative'
FAMILY_GENERIC = 'generic'

# Structural invariant tolerances
SYMMETRY_TOL = 1e-12
ROW_SUM_TOL = 1e-10
DIAGONAL_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-9

# Simulation
STATE_OVERFLOW = 1e12

# Principal logarithm
LOG_EIGEN_FLOOR = 1e-14

# Structural set kinds
SET_LAPLACIAN_CVX = 'laplacian_cvx'
SET_NONNEGATIVE = 'nonnegative'
SET_ADJACENCY_SYM = 'adjacency_sym'
SET_CUSTOM = 'custom'

# Spectral set kinds, picked from the SpectralTarget shape
SPECTRAL_M = 'M'
SPECTRAL_M_EPS = 'M_eps'
SPECTRAL_M_EPS_M = 'M_eps_m'
SPECTRAL_M_AB = 'M_ab'

# Identification methods
METHOD_PLAIN = 'plain'
METHOD_IV = 'iv'

# Linear rate monitoring
RATE_MIN_ITERATIONS = 4
RATE_NOT_LINEAR = 'not linear'

# Why an alternating projections run ended
STOP_STEP = 'step'
STOP_MAX_ITER = 'max_iter'

# Experiments
EXPERIMENT_MODEL_VALIDATION = 'model_validation'
EXPERIMENT_IV_KARATE = 'iv_karate'
EXPERIMENT_AP_CONVERGENCE = 'ap_convergence'
EXPERIMENT_PARTIAL_OBS = 'partial_obs'
EXPERIMENT_IV_DENOISING = 'iv_denoising'
EXPERIMENT_COSPECTRAL_TREES = 'cospectral_trees'

SUPPORT_THRESHOLD = 1e-3

# Output file names
CONFIG_FILE = 'config.json'
METRICS_FILE = 'metrics.json'
MATRIX_FILE = 'matrix.json'
TRAJECTORY_FILE = 'trajectory.csv'
TRAJECTORY_SIDECAR = 'trajectory.json'
SUBSPACE_FILE = 'subspace.json'
CONTINUOUS_FILE = 'continuous.json'
AP_SERIES_FILE = 'ap_run.csv'
AP_SUMMARY_FILE = 'ap_run.json'
CSV_FORMAT = '%.17g'

# Process exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
