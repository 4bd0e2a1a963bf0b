DEFAULT_NAME = "Transgressive T-duality"
DOMAIN = "transduality"

CONFIG_ENV_VARIABLE = "TRANSDUALITY_CONFIG"
CONFIGURATION_FILE = f"{DOMAIN}.config.json"

SCENARIO_EXTENSION = ".scn"
RECIPE_EXTENSION = ".json"

CONF_LOG_LEVEL = "log_level"
CONF_MACHINE_OUTPUT = "machine_output"
CONF_RANDOM_SAMPLES = "random_samples"
CONF_RANDOM_SEED = "random_seed"
CONF_MAX_WORKERS = "max_workers"
CONF_SIDE = "side"
CONF_TWISTED = "twisted"

DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_RANDOM_SAMPLES = 100
DEFAULT_RANDOM_SEED = 0
DEFAULT_MAX_WORKERS = 4

LOG_FORMAT = (
    "%(asctime)s.%(msecs)03d %(levelname)-8s %(threadName)s "
    "%(name)s:%(filename)s:%(lineno)s %(message)s"
)
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

UNIT_LABEL = "1"
ZERO_LABEL = "0"
TENSOR_SYMBOL = "(x)"
WEDGE_SYMBOL = "^"
DERIVATIVE_PREFIX = "d"
IDENTITY_WORD = "1"

DEFAULT_E_PREFIX = "psi"
DEFAULT_EHAT_PREFIX = "phat"
DEFAULT_SPHERE_DUAL_LABEL = "phat"

BLOCK_SCENARIO = "scenario"
BLOCK_BASE = "base"
BLOCK_E = "E"
BLOCK_EHAT = "Ehat"
BLOCK_H = "H"
BLOCK_HHAT = "Hhat"
BLOCK_F = "F"
BLOCK_SECTIONS = "sections"

EXPRESSION_BLOCKS = [BLOCK_H, BLOCK_HHAT, BLOCK_F]

KEY_NAME = "name"
KEY_DESCRIPTION = "description"
KEY_ELEMENTS = "elements"
KEY_UNIT = "unit"
KEY_PRODUCTS = "products"
KEY_DIFFERENTIAL = "differential"
KEY_CONTRACTIONS = "contractions"
KEY_GENERATORS = "generators"

RECIPE_KEY_BASE = "base"
RECIPE_KEY_CHERN = "chern"
RECIPE_KEY_CHERN_HAT = "chern_hat"
RECIPE_KEY_EXTRA_CHERN = "extra_chern"
RECIPE_KEY_H = "H"
RECIPE_KEY_SMALL_H = "h"
RECIPE_KEY_H_LIST = "h_list"
RECIPE_KEY_LAMBDAS = "lambdas"
RECIPE_KEY_K = "k"
RECIPE_KEY_EULER = "euler"
RECIPE_KEY_EULER_HAT = "euler_hat"
RECIPE_KEY_DEGREE = "degree"
RECIPE_KEY_DUAL_DEGREE = "dual_degree"
RECIPE_KEY_NAME = "name"
RECIPE_KEY_RECIPE = "recipe"
RECIPE_KEY_DUAL_LABEL = "dual_label"

REPORT_KEY_SCENARIO = "scenario"
REPORT_KEY_COMMAND = "command"
REPORT_KEY_EXIT_CODE = "exit_code"
