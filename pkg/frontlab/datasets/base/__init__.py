from frontlab.datasets.base.dataset import (
    ConcatNormalFormDatasetView,
    NormalFormDataset,
    NormalFormDatasetView,
    NormalFormItem,
)
