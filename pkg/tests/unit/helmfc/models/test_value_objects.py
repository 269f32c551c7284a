"""Unit tests for value objects and label enums."""
import pytest

from helmfc.models import ATLAS_PRESETS, AtlasSpec, BinaryLabel, GroupWidth, SubjectLabel


class TestAtlasSpec:
    """Test cases for AtlasSpec value object."""

    @pytest.mark.parametrize("name,roi_count", [("CC400", 392), ("CC200", 200), ("AAL", 116)])
    def test_presets(self, name, roi_count):
        """Test the built-in atlas presets."""
        atlas = AtlasSpec.parse(name)
        assert atlas.roi_count == roi_count
        assert ATLAS_PRESETS[name] == roi_count

    def test_preset_names_are_case_insensitive(self):
        assert AtlasSpec.parse("cc400") == AtlasSpec.parse("CC400")

    def test_custom_atlas(self):
        """Test parsing a custom:<M> selection."""
        atlas = AtlasSpec.parse("custom:50")
        assert atlas.roi_count == 50
        assert atlas.to_selection() == "custom:50"
        assert AtlasSpec.parse(atlas.to_selection()) == atlas

    def test_unknown_atlas_raises_error(self):
        with pytest.raises(ValueError, match="unknown atlas"):
            AtlasSpec.parse("HO48")

    def test_single_roi_raises_error(self):
        """Test that fewer than two ROIs are rejected."""
        with pytest.raises(ValueError, match="at least 2 ROIs"):
            AtlasSpec.custom(1)

    def test_equality_and_hash(self):
        assert AtlasSpec("CC200", 200) == AtlasSpec.parse("CC200")
        assert AtlasSpec("CC200", 200) != AtlasSpec.custom(200)
        assert len({AtlasSpec.parse("AAL"), AtlasSpec.parse("AAL")}) == 1
        assert AtlasSpec.parse("AAL") != "AAL"


class TestGroupWidth:
    """Test cases for GroupWidth value object."""

    def test_default_is_six_bits(self):
        width = GroupWidth()
        assert width.bits == 6
        assert width.max_code == 63

    @pytest.mark.parametrize("bits", [0, 17])
    def test_out_of_range_raises_error(self, bits):
        with pytest.raises(ValueError, match="between 1 and 16"):
            GroupWidth(bits)

    @pytest.mark.parametrize("bit_length,bits,expected", [(782, 6, 131), (782, 7, 112), (398, 6, 67), (230, 6, 39), (6, 6, 1)])
    def test_group_count(self, bit_length, bits, expected):
        """Test y = ceil(x / w)."""
        assert GroupWidth(bits).group_count(bit_length) == expected


class TestSubjectLabel:
    """Test cases for label parsing and collapse."""

    @pytest.mark.parametrize("token", ["NC", "ADHD-C", "ADHD-H", "ADHD-I"])
    def test_parse_known_tokens(self, token):
        assert SubjectLabel.parse(token).value == token

    def test_unknown_token_raises_error(self):
        with pytest.raises(ValueError, match="ADHD-X"):
            SubjectLabel.parse("ADHD-X")

    def test_binary_collapse(self):
        """Test that every subtype collapses to ADHD and NC stays NC."""
        assert SubjectLabel.NC.to_binary() is BinaryLabel.NC
        for label in (SubjectLabel.ADHD_C, SubjectLabel.ADHD_H, SubjectLabel.ADHD_I):
            assert label.to_binary() is BinaryLabel.ADHD

    def test_binary_label_class_indices(self):
        assert BinaryLabel.NC.value == 1
        assert BinaryLabel.from_index(2) is BinaryLabel.ADHD
