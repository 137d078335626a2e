from __future__ import annotations

import logging

from logging_config import ContextualFormatter, resolve_level


def _record(**extra) -> logging.LogRecord:
    record = logging.LogRecord("services.ht_tester", logging.INFO, __file__, 1, "Hanani-Tutte verdict", None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_context_keys_are_appended() -> None:
    formatter = ContextualFormatter(fmt="%(message)s")

    text = formatter.format(_record(instance="k4", outcome="c_planar", rank=None))

    assert text == "Hanani-Tutte verdict | instance=k4 outcome=c_planar"


def test_plain_message_without_context() -> None:
    formatter = ContextualFormatter(fmt="%(levelname)s %(message)s")

    assert formatter.format(_record()) == "INFO Hanani-Tutte verdict"


def test_custom_extra_keys() -> None:
    formatter = ContextualFormatter(fmt="%(message)s", extra_keys=["face"])

    assert formatter.format(_record(face=2, instance="ignored")) == "Hanani-Tutte verdict | face=2"


def test_sequence_values_are_joined() -> None:
    formatter = ContextualFormatter(fmt="%(message)s", extra_keys=["reason"])

    assert formatter.format(_record(reason=["e0@v3", "e1@A"])) == "Hanani-Tutte verdict | reason=e0@v3,e1@A"


def test_level_names_are_resolved() -> None:
    assert resolve_level("debug") == "DEBUG"
    assert resolve_level(" warning ") == "WARNING"
    assert resolve_level("verbose") == "INFO"
    assert resolve_level(10) == 10
