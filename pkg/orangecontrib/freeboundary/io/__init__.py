from .config import ConfigException, RunConfig
from .records import (
    CheckpointException, load_checkpoint, read_csv, read_json, read_run, save_checkpoint,
    write_csv, write_json, write_rows, write_run
)
