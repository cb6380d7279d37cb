from dataclasses import FrozenInstanceError

import pytest

from hypgamma.config import Config


def test_defaults():
    c = Config()
    assert (c.precision_bits, c.algnum_degree_ceiling, c.output_format, c.jobs) == (192, 4, "json", 1)


def test_env_and_overrides():
    c = Config.from_env({"HYPGAMMA_PREC": "256", "HYPGAMMA_JOBS": "2"}, output_format="text", jobs=None)
    assert c.precision_bits == 256 and c.jobs == 2 and c.output_format == "text"
    assert Config.from_env({"HYPGAMMA_PREC": "256"}, precision_bits=100).precision_bits == 100


@pytest.mark.parametrize("kw", [{"precision_bits": 32}, {"jobs": 0}, {"output_format": "xml"},
                                {"algnum_degree_ceiling": 0}])
def test_validation(kw):
    with pytest.raises(ValueError):
        Config(**kw)


def test_frozen():
    with pytest.raises(FrozenInstanceError):
        Config().jobs = 3  # type: ignore[misc]
