# Copyright (c) 2026 Bivex
#
# Author: Bivex
# Available for contact via email: support@b-b.top
# For up-to-date contact information:
# https://github.com/bivex
#
# Created: 2026-10-12T09:14:02
# Last Updated: 2026-10-19T08:40:11
#
# Licensed under the MIT License.
# Commercial licensing available upon request.

"""Default configuration values for namecheck"""

# API Settings
API_HOST = "0.0.0.0"
API_PORT = 8765

# Logging
LOG_LEVEL = "INFO"
LOG_FORMAT = "console"  # "console" or "json"

# Corpus ingestion
PARSE_WORKERS = 4
SKIPPED_DIRS = (".git", ".gradle", ".idea", "build", "target", "node_modules", "out")

# Context building
L_MAX = 64  # tokens per context after padding
CONTEXT_KINDS = ("internal", "interaction", "sibling", "enclosing")

# GloVe
EMBEDDING_DIM = 32
GLOVE_WINDOW = 5
GLOVE_X_MAX = 100.0
GLOVE_ALPHA = 0.75
GLOVE_EPOCHS = 50
GLOVE_LEARNING_RATE = 0.05
MIN_COUNT = 1

# Encoder-decoder
HIDDEN_SIZE = 64
BEAM_WIDTH = 10
MAX_NAME_LENGTH = 8  # sub-tokens, EON excluded
GRAD_CLIP = 5.0
LEARNING_RATE = 0.05
MOMENTUM = 0.9
EPOCHS = 200
BATCH_SIZE = 32
NONCOPY_INIT = -8.0  # theta_NON, W_NON = -softplus(theta_NON) ~ -3.4e-4

# Consistency classifier
CNN_EPOCHS = 200
CNN_LEARNING_RATE = 0.01  # Adam
CNN_NEGATIVES = 4  # corrupted names per method, redrawn every epoch
CONSISTENCY_THRESHOLD = 0.5

# Evaluation
SIZE_BUCKETS = ((1, 5), (6, 10), (11, 25), (26, None))
ABLATION_GRID = ("contexts", "mechanisms", "weights")

SEED = 13
