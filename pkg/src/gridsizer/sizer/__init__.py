from .losses import (DualWeights, dual_step, sizing_losses, total_loss)
from .model import SectionSizer, SizerConfig, SizingOutput
from .training import (check_surrogate_compatible, evaluate_sizer,
                       evaluation_skeletons, skeleton_sampler, train_sizer)

__all__ = ["DualWeights", "SectionSizer", "SizerConfig", "SizingOutput",
           "check_surrogate_compatible", "dual_step", "evaluate_sizer",
           "evaluation_skeletons", "sizing_losses", "skeleton_sampler",
           "total_loss", "train_sizer"]
