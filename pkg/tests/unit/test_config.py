import pytest

from app.config import Settings


class TestSettings:

    def test_defaults(self, monkeypatch):
        for name in ("SD_LOG_LEVEL", "SD_MAX_API_FACES", "SD_MAX_ENUM_CIRCLES", "SD_CHECK_EACH_STEP"):
            monkeypatch.delenv(name, raising=False)

        config = Settings()
        assert config.log_level == "INFO"
        assert config.max_api_faces == 10000
        assert config.max_enum_circles == 12
        assert config.check_each_step is True

    @pytest.mark.parametrize("raw,expected", [
        ("true", True), ("1", True), ("YES", True), (" on ", True),
        ("false", False), ("0", False), ("No", False), ("off", False),
        ("", True),
    ])
    def test_check_each_step_values(self, monkeypatch, raw, expected):
        monkeypatch.setenv("SD_CHECK_EACH_STEP", raw)
        assert Settings().check_each_step is expected

    @pytest.mark.parametrize("raw", ["treu", "2", "enabled"])
    def test_check_each_step_unknown_value(self, monkeypatch, raw):
        monkeypatch.setenv("SD_CHECK_EACH_STEP", raw)
        with pytest.raises(ValueError, match="SD_CHECK_EACH_STEP"):
            Settings()

    def test_unknown_log_level(self, monkeypatch):
        monkeypatch.setenv("SD_LOG_LEVEL", "verbose")
        with pytest.raises(ValueError, match="SD_LOG_LEVEL"):
            Settings()

    def test_odd_enum_bound(self, monkeypatch):
        monkeypatch.setenv("SD_MAX_ENUM_CIRCLES", "7")
        with pytest.raises(ValueError, match="SD_MAX_ENUM_CIRCLES"):
            Settings()

    def test_non_integer_face_limit(self, monkeypatch):
        monkeypatch.setenv("SD_MAX_API_FACES", "beaucoup")
        with pytest.raises(ValueError, match="SD_MAX_API_FACES"):
            Settings()
