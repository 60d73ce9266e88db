"""
Log Helper test — JSON-lines run logs with size-based rotation.

Run:
    python tests/log_helper/test_log_helper.py
"""

import asyncio
import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "src"))
from inoprodvec.log_helper import InoLogHelper, LogType, increment_batch_name
from inoprodvec.util_helper import ino_err, ino_ok


def _lines(path: Path) -> list:
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]


def test_increment_batch_name():
    assert increment_batch_name("prodvec_00001") == "prodvec_00002"
    assert increment_batch_name("run_0099") == "run_0100"
    assert increment_batch_name("plain") == "plain"


def test_entries_follow_success_flag():
    async def scenario(folder: str):
        log = await InoLogHelper.create(folder, "prodvec")
        await log.add(msg="counted", log_data=ino_ok("ok", count=10), source="test")
        await log.add(msg="failed", log_data=ino_err("bad", error_kind="regime"))
        await log.add(LogType.DEBUG, "note")
        await log.error("explicit")
        return log.get_log_file_path()

    with tempfile.TemporaryDirectory() as tmp:
        path = asyncio.run(scenario(tmp))
        assert path.name == "prodvec_00001.inolog"
        entries = _lines(path)
        assert [e["type"] for e in entries] == ["INFO", "ERROR", "DEBUG", "ERROR"]
        assert entries[0]["data"]["count"] == 10
        assert entries[0]["source"] == "test"
        assert entries[1]["source"] == "unknown"
        assert entries[2]["data"] is None


def test_rotation():
    async def scenario(folder: str):
        log = await InoLogHelper.create(folder, "prodvec")
        log.max_file_size_bytes = 200
        for i in range(6):
            await log.info(f"entry {i}", {"i": i, "pad": "x" * 80})
        return log.get_log_file_path()

    with tempfile.TemporaryDirectory() as tmp:
        last = asyncio.run(scenario(tmp))
        files = sorted(p.name for p in Path(tmp).glob("*.inolog"))
        assert len(files) > 1
        assert files[0] == "prodvec_00001.inolog"
        assert last.name == files[-1]
        total = sum(len(_lines(Path(tmp) / f)) for f in files)
        assert total == 6


def test_reopen_appends_to_current_file():
    async def scenario(folder: str):
        first = await InoLogHelper.create(folder, "prodvec")
        await first.info("one")
        second = await InoLogHelper.create(folder, "prodvec")
        await second.info("two")
        return second.get_log_file_path()

    with tempfile.TemporaryDirectory() as tmp:
        path = asyncio.run(scenario(tmp))
        assert [e["msg"] for e in _lines(path)] == ["one", "two"]


if __name__ == "__main__":
    test_increment_batch_name()
    test_entries_follow_success_flag()
    test_rotation()
    test_reopen_appends_to_current_file()
    print("All tests passed!")
