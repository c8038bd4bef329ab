# Alloy specs package
from utils.alloys.parser import (
    SPEC_VERSION,
    AlloySchema,
    AlloySpec,
    LoadSchema,
    load_alloy_spec,
    parse_alloy_spec,
    resolve_alloy,
)
from utils.alloys.presets import PRESETS, available_presets, preset_document

__all__ = [
    "AlloySchema",
    "AlloySpec",
    "LoadSchema",
    "PRESETS",
    "SPEC_VERSION",
    "available_presets",
    "load_alloy_spec",
    "parse_alloy_spec",
    "preset_document",
    "resolve_alloy",
]
