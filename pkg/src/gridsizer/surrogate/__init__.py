from .model import DriftSurrogate, SimPrediction, SurrogateConfig
from .training import Example, TrainHyper, evaluate, prepare_examples, train

__all__ = ["DriftSurrogate", "Example", "SimPrediction", "SurrogateConfig",
           "TrainHyper", "evaluate", "prepare_examples", "train"]
