from .csv_export import (
    FLOAT_FORMAT,
    correlation_dataframe,
    export_iv,
    master_dataframe,
    state_label,
    write_dataframe,
)
