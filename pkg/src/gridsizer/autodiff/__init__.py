from . import tensor as ops
from .optim import Adam
from .params import ModelParams
from .tensor import Tensor, no_grad

__all__ = ["Adam", "ModelParams", "Tensor", "no_grad", "ops"]
