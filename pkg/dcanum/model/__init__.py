# flake8: noqa: F401
from .config import ModelConfig, PlannedLayer, tiny_config
from .dca import (
    ForwardTrace, backward, batch_gradient, build_model, decode_from_hidden,
    encode, forward, loss, reconstruction_loss
)
from .filters import (
    export_first_layer_filters, read_filters_csv, write_filters_csv
)
from .params import GradDelta, ParamBundle, ShapeMap, param_count


#: Total number of trainable parameters quoted for the published model
PUBLISHED_PARAM_COUNT = 6_023_549
