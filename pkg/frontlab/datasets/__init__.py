from frontlab.datasets.base.dataset import NormalFormDataset, NormalFormItem
from frontlab.datasets.examples import (
    CoefficientGrid,
    RandomNormalForms,
    load_example_surface,
    parse_ranges,
)
from frontlab.datasets.labels import LABEL_COLUMNS, label_normal_form
