"""Alloy documents: presets, schema validation and orientation resolution."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from utils.alloys import available_presets, load_alloy_spec, parse_alloy_spec, resolve_alloy
from utils.errors import AlloySpecError, PreconditionError
from utils.linalg import axis_rotation
from utils.wells import orthorhombic_variant_table

EXAMPLE_SPECS = Path(__file__).resolve().parent.parent / "example_specs"
CUALNI_TABLE = orthorhombic_variant_table(1.0619, 0.9178, 1.0230)

IDENTITY_DOC = """\
version: 1
name: trivial
U1: [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
"""


# =============================================================================
# Presets
# =============================================================================


class TestPresets:
    """Named alloy documents."""

    def test_available(self) -> None:
        """Both shipped presets are listed."""
        assert available_presets() == ["cualni", "terephthalic"]

    def test_cualni_stretch_and_family(self) -> None:
        """CuAlNi resolves to the tabulated reference variant and six variants."""
        spec = resolve_alloy("cualni")
        assert np.allclose(spec.U1, CUALNI_TABLE[0], atol=1e-12)
        assert np.allclose(spec.product(), CUALNI_TABLE[1], atol=1e-12)
        assert len(spec.family()) == 6
        assert spec.lattice == (1.0619, 0.9178, 1.0230)

    def test_cualni_orientation(self) -> None:
        """The specimen is turned by Rx(5 deg) Rz(-20 deg)."""
        Q = resolve_alloy("cualni").orientation.matrix
        assert np.allclose(Q, axis_rotation("x", 5.0) @ axis_rotation("z", -20.0), atol=1e-12)

    def test_cualni_load_grid(self) -> None:
        """sigma1 runs over 16 points from 0.5 to 2."""
        grid = resolve_alloy("cualni").sigma1_grid()
        assert len(grid) == 16
        assert grid[0] == pytest.approx(0.5)
        assert grid[-1] == pytest.approx(2.0)

    def test_preset_names_ignore_case(self) -> None:
        """'CuAlNi' and 'cualni' are the same preset."""
        assert np.array_equal(resolve_alloy("CuAlNi").U1, resolve_alloy("cualni").U1)

    def test_terephthalic_has_no_load(self) -> None:
        """Asking for a load on a load-free preset is a document error."""
        spec = resolve_alloy("terephthalic")
        with pytest.raises(AlloySpecError) as excinfo:
            spec.require_load()
        assert excinfo.value.field_path == "load"

    def test_single_variant_has_no_product(self) -> None:
        """The identity group leaves nothing to transform into."""
        with pytest.raises(PreconditionError):
            resolve_alloy("terephthalic").product()

    def test_unknown_preset(self) -> None:
        """An unknown name reports the preset field."""
        with pytest.raises(AlloySpecError) as excinfo:
            resolve_alloy("brass")
        assert excinfo.value.field_path == "preset"


# =============================================================================
# Documents
# =============================================================================


class TestAlloyDocuments:
    """Schema validation of hand-written documents."""

    def test_minimal_identity_document(self) -> None:
        """U1 = 1 under the identity group is a single well."""
        spec = parse_alloy_spec(IDENTITY_DOC)
        assert spec.name == "trivial"
        assert len(spec.family()) == 1
        assert spec.orientation.label == "aligned"

    def test_stretch_and_lattice_conflict(self) -> None:
        """U1 and lattice together are refused."""
        text = IDENTITY_DOC + "lattice: {alpha: 1.0, beta: 1.0, gamma: 1.0}\n"
        with pytest.raises(AlloySpecError) as excinfo:
            parse_alloy_spec(text)
        assert excinfo.value.field_path == "U1"

    def test_neither_stretch_nor_lattice(self) -> None:
        """One of U1 or lattice is required."""
        with pytest.raises(AlloySpecError):
            parse_alloy_spec("version: 1\nname: empty\n")

    def test_unsupported_version(self) -> None:
        """Only version 1 documents are read."""
        with pytest.raises(AlloySpecError) as excinfo:
            parse_alloy_spec(IDENTITY_DOC.replace("version: 1", "version: 2"))
        assert excinfo.value.field_path == "version"

    def test_asymmetric_stretch(self) -> None:
        """A non-symmetric U1 is reported on its field."""
        text = "version: 1\nU1: [[1, 0.2, 0], [0, 1, 0], [0, 0, 1]]\n"
        with pytest.raises(AlloySpecError) as excinfo:
            parse_alloy_spec(text)
        assert excinfo.value.field_path == "U1"

    def test_wrong_field_type(self) -> None:
        """A non-numeric traction names the offending key."""
        with pytest.raises(AlloySpecError) as excinfo:
            parse_alloy_spec(IDENTITY_DOC + "load: {sigma1: heavy}\n")
        assert "sigma1" in (excinfo.value.field_path or "")

    def test_bad_sigma1_grid(self) -> None:
        """The grid is [lo, hi, count] with 0 < lo <= hi."""
        with pytest.raises(AlloySpecError) as excinfo:
            parse_alloy_spec(IDENTITY_DOC + "load: {sigma1_grid: [2.0, 1.0, 5]}\n")
        assert excinfo.value.field_path == "load.sigma1_grid"

    def test_unknown_orientation_kind(self) -> None:
        """Orientation kinds are aligned, euler or matrix."""
        with pytest.raises(AlloySpecError) as excinfo:
            parse_alloy_spec(IDENTITY_DOC + "orientation: {kind: spherical}\n")
        assert excinfo.value.field_path == "orientation.kind"

    def test_matrix_orientation(self) -> None:
        """An explicit rotation matrix is accepted as given."""
        spec = parse_alloy_spec(IDENTITY_DOC + "orientation: {kind: matrix, matrix: [[0, -1, 0], [1, 0, 0], [0, 0, 1]]}\n")
        assert np.allclose(spec.orientation.matrix, axis_rotation("z", 90.0), atol=1e-12)

    def test_preset_with_own_stretch(self) -> None:
        """A document's U1 replaces the preset lattice and keeps the rest."""
        text = "preset: cualni\nU1: [[1.1, 0, 0], [0, 1.0, 0], [0, 0, 0.9]]\n"
        spec = parse_alloy_spec(text)
        assert spec.lattice is None
        assert np.allclose(spec.U1, np.diag([1.1, 1.0, 0.9]))
        assert spec.group == "cubic"
        assert spec.load is not None

    def test_malformed_yaml(self) -> None:
        """Broken YAML is a document error, not a crash."""
        with pytest.raises(AlloySpecError):
            parse_alloy_spec("U1: [[1, 0, 0], [0, 1, 0]\n")


# =============================================================================
# Files
# =============================================================================


class TestSpecFiles:
    """Loading documents from disk."""

    def test_round_trip_through_a_file(self, tmp_path) -> None:
        """A document on disk parses like the string."""
        path = tmp_path / "trivial.yaml"
        path.write_text(IDENTITY_DOC, encoding="utf-8")
        assert load_alloy_spec(str(path)).name == "trivial"

    def test_missing_file(self, tmp_path) -> None:
        """A missing path is a document error."""
        with pytest.raises(AlloySpecError):
            load_alloy_spec(str(tmp_path / "absent.yaml"))

    def test_preset_flag_overrides_file(self, tmp_path) -> None:
        """--preset on top of a spec file swaps in the preset's data."""
        path = tmp_path / "named.yaml"
        path.write_text("version: 1\nname: mine\n", encoding="utf-8")
        spec = resolve_alloy("cualni", str(path))
        assert spec.name == "mine"
        assert len(spec.family()) == 6

    def test_nothing_to_resolve(self) -> None:
        """Neither preset nor file is an error."""
        with pytest.raises(AlloySpecError):
            resolve_alloy()


class TestExampleSpecs:
    """Documents shipped in example_specs/."""

    def test_short_grid(self) -> None:
        """The CuAlNi example keeps the preset lattice with its own grid."""
        spec = load_alloy_spec(str(EXAMPLE_SPECS / "cualni_short_grid.yaml"))
        assert spec.name == "CuAlNi (short grid)"
        assert len(spec.sigma1_grid()) == 6
        assert np.allclose(spec.U1, CUALNI_TABLE[0], atol=1e-12)

    def test_explicit_terephthalic_matches_preset(self) -> None:
        """The hand-written terephthalic document equals the preset."""
        spec = load_alloy_spec(str(EXAMPLE_SPECS / "terephthalic_explicit.yaml"))
        assert np.array_equal(spec.U1, resolve_alloy("terephthalic").U1)
