# Count table kinds
TABLE_KINDS = ["NQB", "SHORT", "RNK", "CNKQ", "BUBSIZE"]

# Census subcommand names → table kinds
CENSUS_TABLES = {
    "nqb": "NQB",
    "short": "SHORT",
    "rnk": "RNK",
    "cnkq": "CNKQ",
    "bubsize": "BUBSIZE",
}

# Output formats
OUTPUT_FORMATS = ["csv", "json"]

# Subcommands accepted by RunConfig
SUBCOMMANDS = ["census", "crystal", "spectra", "asympt", "simulate", "figure", "selftest"]

CRYSTAL_TARGETS = ["rnk", "cnkq", "moments"]
ASYMPT_TARGETS = ["model", "bridges", "rnk", "kmoments", "cnkq"]
FIGURE_TARGETS = ["bridge-moments", "kmean", "rs"]

# Process exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAPACITY = 2
EXIT_VERIFICATION = 3
EXIT_TIMEOUT = 4

# Spectral certificates, in report order
SPECTRAL_CHECKS = ["A", "BBt", "L", "M", "M_inverse"]

# Sequences referenced for the census tables (vendored prefixes live in chordlab/data/sequences.json)
SEQUENCE_TABLES = {
    "A079267": "SHORT",
    "A278990": "SHORT[k=0]",
    "A367000": "BUBSIZE",
    "A375504": "RNK",
}
