from .config import ConfigError, RunConfig
from .records import (oracle_config_hash, read_dataset, split_indices,
                      write_dataset, write_split_manifest)

__all__ = ["ConfigError", "RunConfig", "oracle_config_hash", "read_dataset",
           "split_indices", "write_dataset", "write_split_manifest"]
