import pytest

from scripts.build_golden import SNAPSHOTS, build_snapshots


@pytest.mark.parametrize("name", sorted(SNAPSHOTS))
def test_snapshot_matches(cli, golden_dir, name):
    status, out = cli(*SNAPSHOTS[name])
    assert status == 0
    assert out == (golden_dir / name).read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(SNAPSHOTS))
def test_byte_identical_reruns(cli, name):
    assert cli(*SNAPSHOTS[name]) == cli(*SNAPSHOTS[name])


def test_build_snapshots_reproduces_files(tmp_path, golden_dir):
    build_snapshots(str(tmp_path))
    for name in SNAPSHOTS:
        assert (tmp_path / name).read_bytes() == (golden_dir / name).read_bytes()
