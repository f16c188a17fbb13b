# Copyright 2022 The Oddindex Authors
#
# This file is part of Oddindex.
#
# Licensed under the GNU Affero General Public License 3.0 (the "License").
# A copy of the License may be obtained with this software package or at
#
#      https://www.gnu.org/licenses/agpl-3.0.en.html
#
# Use of this file is prohibited except in compliance with the License. Any
# modifications or derivative works of this file must retain this copyright
# notice, and modified files must contain a notice indicating that they have
# been altered from the originals.
#
# Oddindex is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or
# FITNESS FOR A PARTICULAR PURPOSE. See the License for more details.

"""Tests for the configuration manager."""

import tempfile

import pytest

from oddindex._shared_files.config import (
    _ConfigManager,
    get_config,
    reload_config,
    set_config,
    update_config,
)
from oddindex._shared_files.defaults import _DEFAULT_CONFIG


@pytest.mark.parametrize(
    "dir_env,conf_dir",
    [
        ("ODDINDEX_CONFIG_DIR", "oddindex/oddindex.conf"),
        ("XDG_CONFIG_DIR", "oddindex/oddindex.conf"),
        ("HOME", ".config/oddindex/oddindex.conf"),
    ],
)
def test_config_manager_init_directory_setting(monkeypatch, dir_env, conf_dir):
    """Test that the config file location follows the environment."""

    with tempfile.TemporaryDirectory() as tmp_dir:
        for name in ("ODDINDEX_CONFIG_DIR", "XDG_CONFIG_DIR"):
            monkeypatch.delenv(name, raising=False)
        monkeypatch.setenv(dir_env, tmp_dir)
        cm = _ConfigManager()
        assert cm.config_file == f"{tmp_dir}/{conf_dir}"


@pytest.mark.parametrize(
    "path_exists,write_config_called,update_config_called",
    [(False, True, False), (True, False, True)],
)
def test_config_manager_init_write_update_config(
    mocker, monkeypatch, path_exists, write_config_called, update_config_called
):
    """Test that a missing file is written and an existing one is merged."""

    with tempfile.TemporaryDirectory() as tmp_dir:
        monkeypatch.setenv("ODDINDEX_CONFIG_DIR", tmp_dir)
        update_config_mock = mocker.patch(
            "oddindex._shared_files.config._ConfigManager.update_config"
        )
        write_config_mock = mocker.patch(
            "oddindex._shared_files.config._ConfigManager.write_config"
        )
        mocker.patch("os.path.exists", return_value=path_exists)

        cm = _ConfigManager()
        assert hasattr(cm, "config_data")
        assert write_config_mock.called is write_config_called
        assert update_config_mock.called is update_config_called


def test_set_config_str_key(mocker):
    """Test the set_config method when the input is a string."""

    cm_set_mock = mocker.patch("oddindex._shared_files.config._config_manager.set")
    cm_write_config = mocker.patch("oddindex._shared_files.config._config_manager.write_config")
    set_config("mock_section.mock_variable", "mock_value")
    cm_set_mock.assert_called_once_with("mock_section.mock_variable", "mock_value")
    cm_write_config.assert_called_once_with()


def test_set_config_dict_key(mocker):
    """Test the set_config method when the input is a dictionary."""

    cm_set_mock = mocker.patch("oddindex._shared_files.config._config_manager.set")
    cm_write_config = mocker.patch("oddindex._shared_files.config._config_manager.write_config")
    set_config({"mock_section.mock_variable": "mock_value"})
    cm_set_mock.assert_called_once_with("mock_section.mock_variable", "mock_value")
    cm_write_config.assert_called_once_with()


def test_generate_default_config():
    """Test that the defaults are deep-copied into memory."""

    cm = _ConfigManager()
    cm.generate_default_config()
    assert cm.config_data == _DEFAULT_CONFIG
    assert cm.config_data is not _DEFAULT_CONFIG
    assert cm.config_data["jlo"] is not _DEFAULT_CONFIG["jlo"]


def test_read_config(mocker):
    """Test the read_config method for the config manager."""

    cm = _ConfigManager()
    test_data = {"test": "test"}
    toml_load_mock = mocker.patch(
        "oddindex._shared_files.config.toml.load", return_value=test_data
    )
    cm.read_config()
    toml_load_mock.assert_called_with(cm.config_file)
    assert cm.config_data == test_data


def test_get_and_set_nested_keys():
    """Test period-delimited access, including new sections."""

    cm = _ConfigManager()
    assert cm.get("jlo.cutoff") == cm.config_data["jlo"]["cutoff"]
    cm.set("jlo.cutoff", 6)
    assert cm.get("jlo.cutoff") == 6
    cm.set("new_section.value", 1)
    assert cm.config_data["new_section"] == {"value": 1}


def test_update_config_without_override(monkeypatch):
    """Test that entries only fill gaps when override_existing is False."""

    with tempfile.TemporaryDirectory() as tmp_dir:
        monkeypatch.setenv("ODDINDEX_CONFIG_DIR", tmp_dir)
        cm = _ConfigManager()
        cm.update_config({"jlo": {"cutoff": 99, "extra": 1}}, override_existing=False)
        assert cm.get("jlo.cutoff") == _DEFAULT_CONFIG["jlo"]["cutoff"]
        assert cm.get("jlo.extra") == 1

        cm.update_config({"jlo": {"cutoff": 99}})
        assert cm.get("jlo.cutoff") == 99
        assert _ConfigManager().get("jlo.cutoff") == 99


def test_reload_and_update_delegate(mocker):
    """Test the module-level wrappers."""

    cm_read_config = mocker.patch("oddindex._shared_files.config._config_manager.read_config")
    cm_update_config = mocker.patch(
        "oddindex._shared_files.config._config_manager.update_config"
    )
    reload_config()
    update_config({"a": 1}, override_existing=False)
    cm_read_config.assert_called_once_with()
    cm_update_config.assert_called_once_with({"a": 1}, False)


def test_purge_config(mocker):
    """Test the purge_config method for config manager."""

    cm = _ConfigManager()
    os_dir_mock = mocker.patch(
        "oddindex._shared_files.config.os.path.dirname", return_value="mock_dir"
    )
    rmtree_mock = mocker.patch("oddindex._shared_files.config.shutil.rmtree")
    cm.purge_config()
    os_dir_mock.assert_called_once_with(cm.config_file)
    rmtree_mock.assert_called_once_with("mock_dir", ignore_errors=True)


def test_get_config():
    """Test config retrieval function."""

    from oddindex._shared_files.config import _config_manager

    assert get_config(entries=[]) == _config_manager.config_data
    assert get_config(entries=["jlo.tolerance"]) == _config_manager.config_data["jlo"]["tolerance"]
    assert get_config(entries="jlo.tolerance") == _config_manager.config_data["jlo"]["tolerance"]
    assert get_config(entries=["series.cap", "jlo.cutoff"]) == {
        "series.cap": _config_manager.config_data["series"]["cap"],
        "jlo.cutoff": _config_manager.config_data["jlo"]["cutoff"],
    }
